#pragma once

#include <vector>

#include "psimine/interval.hpp"
#include "psimine/psil.hpp"

namespace psimine {

// Inputs for delay tightening of one pure node, already resolved against
// every trace. `buckets` lists the node's non-empty positions in descending
// order; participating[t][j] is the participating interval set of buckets[j]
// on trace t, and consequent_truth[t] the raw truth of the consequent
// literal on trace t.
struct TightenInput {
    std::vector<int> buckets;
    std::vector<Term> terms;  // aligned with buckets
    double k = 1.0;
    std::vector<std::vector<IntervalSet>> participating;
    std::vector<IntervalSet> consequent_truth;
};

// Narrowed delay between a source set and the targets it reaches within
// [0 : bound]: per-pair Minkowski differences of forward-hit images, pooled
// across traces, widened once, clipped to the template. Falls back to
// [0 : bound] when no pair survives.
DelayInterval separation(const std::vector<const IntervalSet*>& sources,
                         const std::vector<const IntervalSet*>& targets,
                         double bound);

// Assembles the property for a pure node: tightened delays between adjacent
// non-empty positions, and a tightened consequent delay when the smallest
// position is above 0.
PsiProperty emit_property(const TightenInput& in, Literal consequent);

// Ranking percentages (pooled across traces).
double support_pct(const std::vector<IntervalSet>& influence_per_trace,
                   const std::vector<double>& durations);
double correlation_pct(const std::vector<IntervalSet>& influence_per_trace,
                       DelayInterval stretch,
                       const std::vector<const IntervalSet*>& pseudo_targets);
double coverage_pct(const std::vector<IntervalSet>& covered_per_trace,
                    const std::vector<double>& durations);

}  // namespace psimine
