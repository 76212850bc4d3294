#include "psimine/property.hpp"

#include <stdexcept>

namespace psimine {

DelayInterval separation(const std::vector<const IntervalSet*>& sources,
                         const std::vector<const IntervalSet*>& targets,
                         double bound) {
    Interval clip = closed_iv(0.0, bound);
    std::vector<Interval> pieces;
    for (std::size_t t = 0; t < sources.size(); ++t) {
        const IntervalSet& src = *sources[t];
        if (src.empty()) continue;
        IntervalSet image = set_intersect(minkowski_sum(src, {0.0, bound}),
                                          *targets[t]);
        for (const Interval& hit : image.parts()) {
            for (const Interval& from : src.parts()) {
                if (time_lt(hit.hi, from.lo)) break;  // sorted: no later pair fits
                IntervalSet d = set_intersect(IntervalSet::single(pair_diff(hit, from)),
                                              IntervalSet::single(clip));
                if (!d.empty()) pieces.push_back(d.parts().front());
            }
        }
    }
    if (pieces.empty()) return {0.0, bound};  // nothing evidenced: keep template
    Interval w = widen(IntervalSet(std::move(pieces)));
    double lo = w.lo < 0.0 ? 0.0 : w.lo;
    double hi = w.hi > bound ? bound : w.hi;
    return {lo, hi};
}

PsiProperty emit_property(const TightenInput& in, Literal consequent) {
    if (in.buckets.empty()) {
        throw std::invalid_argument("cannot emit a property without antecedent buckets");
    }
    PsiProperty prop;
    prop.consequent = consequent;
    prop.antecedent.terms = in.terms;
    prop.antecedent.bucket_index = in.buckets;

    const std::size_t levels = in.buckets.size();
    for (std::size_t j = 0; j + 1 < levels; ++j) {
        double bound = static_cast<double>(in.buckets[j] - in.buckets[j + 1]) * in.k;
        std::vector<const IntervalSet*> src, dst;
        for (const auto& per_trace : in.participating) {
            src.push_back(&per_trace[j]);
            dst.push_back(&per_trace[j + 1]);
        }
        prop.antecedent.delays.push_back(separation(src, dst, bound));
    }

    // A consequent delay exists exactly when bucket 0 carries no constraint:
    // either the smallest constrained bucket sits above 0, or the antecedent
    // is the degenerate always-true term.
    int smallest = in.buckets.back();
    if (smallest > 0 || in.terms.back().empty()) {
        double bound = static_cast<double>(smallest) * in.k;
        std::vector<const IntervalSet*> src, dst;
        for (std::size_t t = 0; t < in.participating.size(); ++t) {
            src.push_back(&in.participating[t].back());
            dst.push_back(&in.consequent_truth[t]);
        }
        prop.consequent_delay = separation(src, dst, bound);
    }
    return prop;
}

double support_pct(const std::vector<IntervalSet>& influence_per_trace,
                   const std::vector<double>& durations) {
    double num = 0, den = 0;
    for (std::size_t t = 0; t < influence_per_trace.size(); ++t) {
        num += influence_per_trace[t].length();
        den += durations[t];
    }
    return den > 0 ? 100.0 * num / den : 0.0;
}

double correlation_pct(const std::vector<IntervalSet>& influence_per_trace,
                       DelayInterval stretch,
                       const std::vector<const IntervalSet*>& pseudo_targets) {
    double num = 0, den = 0;
    for (std::size_t t = 0; t < influence_per_trace.size(); ++t) {
        const IntervalSet& tgt = *pseudo_targets[t];
        den += tgt.length();
        num += set_intersect(minkowski_sum(influence_per_trace[t], stretch), tgt)
                   .length();
    }
    return den > 0 ? 100.0 * num / den : 0.0;
}

double coverage_pct(const std::vector<IntervalSet>& covered_per_trace,
                    const std::vector<double>& durations) {
    double num = 0, den = 0;
    for (std::size_t t = 0; t < covered_per_trace.size(); ++t) {
        num += covered_per_trace[t].length();
        den += durations[t];
    }
    return den > 0 ? 100.0 * num / den : 0.0;
}

}  // namespace psimine
