#pragma once

#include <vector>

#include "psimine/interval.hpp"

namespace psimine {

// Pseudo-targets for one trace: index i holds the target truth stretched
// back in time by [0 : i*k] (Minkowski difference), clamped to the span.
// pos[0]/neg[0] are the unstretched target truth sets. ov[i] is the overlap
// pos[i] ∩ neg[i] (empty at i = 0, generally non-empty beyond).
struct PseudoTargetBank {
    std::vector<IntervalSet> pos;
    std::vector<IntervalSet> neg;
    std::vector<IntervalSet> ov;

    int max_index() const { return static_cast<int>(pos.size()) - 1; }
};

PseudoTargetBank build_pseudo_targets(const IntervalSet& target_pos,
                                      const IntervalSet& target_neg,
                                      Interval span, int n, double k);

}  // namespace psimine
