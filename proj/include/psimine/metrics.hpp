#pragma once

#include <vector>

#include "psimine/interval.hpp"
#include "psimine/pseudo.hpp"

namespace psimine {

// Fraction of the influence set covered by the target set.
// Undefined (throws) when the influence set has zero length.
double mean_ratio(const IntervalSet& target, const IntervalSet& influence);

// -x*log2(x), with 0*log2(0) := 0.
double entropy_term(double x);

struct NodeMetrics {
    double influence_len = 0;  // pooled |I(S_C)| over traces
    double mu_pos = 0;         // mean against the pseudo-target
    double mu_neg = 0;         // mean against the negated pseudo-target
    double mu_overlap = 0;     // mean against their overlap
    double error = 0;          // Shannon error from mu_pos/mu_neg
    double unified_error = 0;  // error + mu_overlap*log2(mu_overlap)
};

// Pooled over traces: sums of intersection lengths divided by the summed
// influence length (single-trace is the one-element case).
NodeMetrics node_metrics(const std::vector<IntervalSet>& influence_per_trace,
                         const std::vector<PseudoTargetBank>& banks,
                         int pseudo_index);

// Sibling weight alpha = |pos child| / (|pos child| + |neg child|), pooled.
// Throws when both lengths are zero (degenerate split).
double sibling_alpha(double pos_len, double neg_len);

double unified_gain(double parent_unified_error, double alpha,
                    double pos_unified_error, double neg_unified_error);

}  // namespace psimine
