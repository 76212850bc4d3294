#include "psimine/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace psimine {

double mean_ratio(const IntervalSet& target, const IntervalSet& influence) {
    double len = influence.length();
    if (len <= 0.0) {
        throw std::invalid_argument("mean undefined for zero-length influence set");
    }
    return set_intersect(target, influence).length() / len;
}

double entropy_term(double x) {
    if (x <= 0.0) return 0.0;
    return -x * std::log2(x);
}

NodeMetrics node_metrics(const std::vector<IntervalSet>& influence_per_trace,
                         const std::vector<PseudoTargetBank>& banks,
                         int pseudo_index) {
    NodeMetrics m;
    double hit_pos = 0, hit_neg = 0, hit_ov = 0;
    std::size_t idx = static_cast<std::size_t>(pseudo_index);
    for (std::size_t t = 0; t < influence_per_trace.size(); ++t) {
        const IntervalSet& inf = influence_per_trace[t];
        if (inf.empty()) continue;
        m.influence_len += inf.length();
        hit_pos += set_intersect(banks[t].pos[idx], inf).length();
        hit_neg += set_intersect(banks[t].neg[idx], inf).length();
        hit_ov += set_intersect(banks[t].ov[idx], inf).length();
    }
    if (m.influence_len <= 0.0) {
        throw std::invalid_argument("mean undefined for zero-length influence set");
    }
    m.mu_pos = hit_pos / m.influence_len;
    m.mu_neg = hit_neg / m.influence_len;
    m.mu_overlap = hit_ov / m.influence_len;
    m.error = entropy_term(m.mu_pos) + entropy_term(m.mu_neg);
    m.unified_error = m.error - entropy_term(m.mu_overlap);
    return m;
}

double sibling_alpha(double pos_len, double neg_len) {
    double total = pos_len + neg_len;
    if (total <= 0.0) {
        throw std::invalid_argument("alpha undefined: both sibling influence sets empty");
    }
    return pos_len / total;
}

double unified_gain(double parent_unified_error, double alpha,
                    double pos_unified_error, double neg_unified_error) {
    return parent_unified_error - alpha * pos_unified_error -
           (1.0 - alpha) * neg_unified_error;
}

}  // namespace psimine
