#include "psimine/pseudo.hpp"

#include <stdexcept>

namespace psimine {

PseudoTargetBank build_pseudo_targets(const IntervalSet& target_pos,
                                      const IntervalSet& target_neg,
                                      Interval span, int n, double k) {
    if (n < 0 || k <= 0) {
        throw std::invalid_argument("pseudo-targets need n >= 0 and k > 0");
    }
    PseudoTargetBank bank;
    bank.pos.reserve(static_cast<std::size_t>(n) + 1);
    bank.neg.reserve(static_cast<std::size_t>(n) + 1);
    bank.ov.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        DelayInterval stretch{0.0, static_cast<double>(i) * k};
        IntervalSet p = clamp(minkowski_diff(target_pos, stretch), span);
        IntervalSet m = clamp(minkowski_diff(target_neg, stretch), span);
        bank.ov.push_back(set_intersect(p, m));
        bank.pos.push_back(std::move(p));
        bank.neg.push_back(std::move(m));
    }
    return bank;
}

}  // namespace psimine
