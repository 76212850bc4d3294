#pragma once

#include <memory>
#include <string>
#include <vector>

#include "psimine/metrics.hpp"
#include "psimine/pseudo.hpp"
#include "psimine/psil.hpp"
#include "psimine/trace.hpp"

namespace psimine {

// One tree decision: predicate `pred` (index into the truth-set alphabet),
// chosen polarity, placed at sequence position `bucket`.
struct Constraint {
    int pred = -1;
    bool positive = true;
    int bucket = 0;
};

// Path-ordered set of constraints; a predicate may appear at several buckets
// but only once (either polarity) per bucket.
class ConstraintSet {
public:
    const std::vector<Constraint>& items() const { return items_; }
    bool empty() const { return items_.empty(); }

    bool blocks(int pred, int bucket) const;  // either polarity present?
    int smallest_bucket() const;              // 0 when empty (root convention)
    ConstraintSet extended(Constraint c) const;

private:
    std::vector<Constraint> items_;
};

struct MinerConfig {
    std::string target;
    int n = 5;
    double k = 1.0;
    int max_depth = 20;             // alpha_d
    double min_support_pct = 0.0;   // alpha_s
    double min_correlation_pct = 0.0;  // alpha_c
};

enum class StopReason { none, pure, depth, support, correlation, no_gain, empty };

const char* to_string(StopReason r);

struct DecisionNode {
    ConstraintSet constraints;
    int depth = 0;
    int pseudo_index = 0;
    bool has_metrics = false;
    NodeMetrics metrics;
    StopReason stop = StopReason::none;
    bool verdict_positive = false;  // meaningful when stop == pure

    int split_pred = -1;
    int split_bucket = -1;
    double split_gain = 0.0;
    std::unique_ptr<DecisionNode> pos_child;
    std::unique_ptr<DecisionNode> neg_child;
};

struct MinedProperty {
    PsiProperty prop;
    std::string text;
    bool verdict_positive = true;
    std::vector<Constraint> path;
    int pseudo_index = 0;          // smallest nonempty bucket
    double support_pct = 0.0;
    double correlation_pct = 0.0;
};

struct MineStats {
    int nodes = 0;
    int deepest = 0;
    int stop_pure = 0;
    int stop_depth = 0;
    int stop_support = 0;
    int stop_correlation = 0;
    int stop_no_gain = 0;
    int stop_empty = 0;
};

struct MineResult {
    std::unique_ptr<DecisionNode> root;
    std::vector<MinedProperty> properties;  // sorted: correlation desc,
                                            // support desc, text asc
    MineStats stats;
    double coverage_pct = 0.0;
};

// Truth-derived bucket interval sets for a constraint set against one trace,
// highest position first, with template delays [0 : gap*k] merged across
// elided empty positions. An empty constraint set stages the full span.
StagedSequence stage_constraints(const ConstraintSet& c, const TraceTruth& truth,
                                 double k);

// Grows the decision tree over the pooled traces and emits one property per
// pure leaf. All traces must share the alphabet; the target must be in it.
MineResult mine(const std::vector<TraceTruth>& traces, const MinerConfig& cfg);

}  // namespace psimine
