#include "psimine/miner.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "psimine/property.hpp"

namespace psimine {

bool ConstraintSet::blocks(int pred, int bucket) const {
    for (const auto& c : items_) {
        if (c.pred == pred && c.bucket == bucket) return true;
    }
    return false;
}

int ConstraintSet::smallest_bucket() const {
    int best = 0;
    bool first = true;
    for (const auto& c : items_) {
        if (first || c.bucket < best) best = c.bucket;
        first = false;
    }
    return best;
}

ConstraintSet ConstraintSet::extended(Constraint c) const {
    ConstraintSet out = *this;
    out.items_.push_back(c);
    return out;
}

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::none: return "none";
        case StopReason::pure: return "pure";
        case StopReason::depth: return "depth";
        case StopReason::support: return "support";
        case StopReason::correlation: return "correlation";
        case StopReason::no_gain: return "no-gain";
        case StopReason::empty: return "empty";
    }
    return "?";
}

namespace {

// Non-empty positions of a constraint set, descending, with the term truth
// of each position. Literal order inside a term follows path order.
struct BucketList {
    std::vector<int> buckets;           // descending
    std::vector<IntervalSet> truths;    // aligned
};

BucketList bucket_list(const ConstraintSet& c, const TraceTruth& truth) {
    std::map<int, IntervalSet> acc;
    for (const auto& con : c.items()) {
        const IntervalSet& s =
            con.positive ? truth.pos[static_cast<std::size_t>(con.pred)]
                         : truth.neg[static_cast<std::size_t>(con.pred)];
        auto it = acc.find(con.bucket);
        if (it == acc.end()) {
            acc.emplace(con.bucket, s);
        } else {
            it->second = set_intersect(it->second, s);
        }
    }
    BucketList out;
    for (auto it = acc.rbegin(); it != acc.rend(); ++it) {
        out.buckets.push_back(it->first);
        out.truths.push_back(it->second);
    }
    return out;
}

StagedSequence staged_from(const BucketList& list, const TraceTruth& truth,
                           double k) {
    StagedSequence st;
    if (list.buckets.empty()) {
        st.buckets.push_back(IntervalSet::single(truth.span));
        return st;
    }
    for (std::size_t j = 0; j < list.buckets.size(); ++j) {
        st.buckets.push_back(list.truths[j]);
        if (j + 1 < list.buckets.size()) {
            double gap = static_cast<double>(list.buckets[j] - list.buckets[j + 1]);
            st.delays.push_back({0.0, gap * k});
        }
    }
    return st;
}

// Staged sequence for the base list with one extra literal set merged into
// position `bucket`.
StagedSequence staged_with(const BucketList& base, int bucket,
                           const IntervalSet& extra, const TraceTruth& truth,
                           double k) {
    BucketList list;
    bool inserted = false;
    for (std::size_t j = 0; j < base.buckets.size(); ++j) {
        if (!inserted && base.buckets[j] == bucket) {
            list.buckets.push_back(bucket);
            list.truths.push_back(set_intersect(base.truths[j], extra));
            inserted = true;
        } else {
            if (!inserted && base.buckets[j] < bucket) {
                list.buckets.push_back(bucket);
                list.truths.push_back(extra);
                inserted = true;
            }
            list.buckets.push_back(base.buckets[j]);
            list.truths.push_back(base.truths[j]);
        }
    }
    if (!inserted) {
        list.buckets.push_back(bucket);
        list.truths.push_back(extra);
    }
    return staged_from(list, truth, k);
}

struct MineContext {
    const std::vector<TraceTruth>& traces;
    const MinerConfig& cfg;
    int target = -1;
    std::vector<PseudoTargetBank> banks;
    std::vector<double> durations;
    MineStats stats;
    std::vector<MinedProperty> properties;
    std::vector<IntervalSet> covered;  // per trace, across all properties
};

double pooled_length(const std::vector<IntervalSet>& sets) {
    double len = 0;
    for (const auto& s : sets) len += s.length();
    return len;
}

double node_support_pct(const MineContext& ctx,
                        const std::vector<IntervalSet>& influence) {
    double den = 0;
    for (double d : ctx.durations) den += d;
    return den > 0 ? 100.0 * pooled_length(influence) / den : 0.0;
}

double node_correlation_pct(const MineContext& ctx,
                            const std::vector<IntervalSet>& influence, int b) {
    double num = 0, den = 0;
    DelayInterval stretch{0.0, static_cast<double>(b) * ctx.cfg.k};
    for (std::size_t t = 0; t < influence.size(); ++t) {
        const IntervalSet& tgt = ctx.banks[t].pos[static_cast<std::size_t>(b)];
        den += tgt.length();
        num += set_intersect(minkowski_sum(influence[t], stretch), tgt).length();
    }
    return den > 0 ? 100.0 * num / den : 0.0;
}

void emit_pure(MineContext& ctx, DecisionNode& node) {
    const ConstraintSet& c = node.constraints;

    TightenInput in;
    in.k = ctx.cfg.k;
    if (c.empty()) {
        // pure root: the target is explained by the always-true antecedent
        in.buckets.push_back(0);
        in.terms.push_back(Term{});
    } else {
        // group literals by bucket, descending, path order within a bucket
        std::map<int, Term> terms;
        for (const auto& con : c.items()) {
            terms[con.bucket].lits.push_back(
                {ctx.traces.front().names[static_cast<std::size_t>(con.pred)],
                 con.positive});
        }
        for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
            in.buckets.push_back(it->first);
            in.terms.push_back(it->second);
        }
    }
    for (const auto& tt : ctx.traces) {
        StagedSequence staged = stage_constraints(c, tt, ctx.cfg.k);
        in.participating.push_back(participating_sets(staged));
        std::size_t tgt = static_cast<std::size_t>(ctx.target);
        in.consequent_truth.push_back(node.verdict_positive ? tt.pos[tgt]
                                                            : tt.neg[tgt]);
    }

    MinedProperty mp;
    mp.verdict_positive = node.verdict_positive;
    mp.path = c.items();
    mp.pseudo_index = c.smallest_bucket();
    mp.prop = emit_property(
        in, {ctx.traces.front().names[static_cast<std::size_t>(ctx.target)],
             node.verdict_positive});
    mp.text = print_psil(mp.prop);

    // rank with the tightened antecedent
    std::vector<IntervalSet> influence;
    influence.reserve(ctx.traces.size());
    for (const auto& tt : ctx.traces) {
        influence.push_back(influence_set(stage_sequence(mp.prop.antecedent, tt)));
    }
    mp.support_pct = support_pct(influence, ctx.durations);

    std::size_t b = static_cast<std::size_t>(mp.pseudo_index);
    DelayInterval stretch{0.0, static_cast<double>(mp.pseudo_index) * ctx.cfg.k};
    std::vector<const IntervalSet*> pseudo;
    for (const auto& bank : ctx.banks) {
        pseudo.push_back(node.verdict_positive ? &bank.pos[b] : &bank.neg[b]);
    }
    mp.correlation_pct = correlation_pct(influence, stretch, pseudo);

    for (std::size_t t = 0; t < ctx.traces.size(); ++t) {
        IntervalSet reached =
            set_intersect(minkowski_sum(influence[t], stretch), *pseudo[t]);
        ctx.covered[t] = set_union(ctx.covered[t], reached);
    }
    ctx.properties.push_back(std::move(mp));
}

void grow(MineContext& ctx, DecisionNode& node,
          const std::vector<IntervalSet>& influence) {
    ++ctx.stats.nodes;
    ctx.stats.deepest = std::max(ctx.stats.deepest, node.depth);

    if (pooled_length(influence) <= 0.0) {
        node.stop = StopReason::empty;
        ++ctx.stats.stop_empty;
        return;
    }

    int b = node.constraints.smallest_bucket();
    node.pseudo_index = b;
    node.metrics = node_metrics(influence, ctx.banks, b);
    node.has_metrics = true;

    // A node is pure only when the zero unified error comes with a one-sided
    // mean; a zero-error node whose mean is fractional (one class fully
    // covered, the other partially) yields no sound verdict and no positive
    // gain either, so it falls through and stops as no-gain without emitting.
    bool one_sided = node.metrics.mu_pos >= 1.0 - 1e-9 ||
                     node.metrics.mu_pos <= 1e-9;
    if (node.metrics.unified_error <= 1e-9 && one_sided) {
        node.stop = StopReason::pure;
        ++ctx.stats.stop_pure;
        node.verdict_positive = node.metrics.mu_pos >= 0.5;
        emit_pure(ctx, node);
        return;
    }
    if (node.depth >= ctx.cfg.max_depth) {
        node.stop = StopReason::depth;
        ++ctx.stats.stop_depth;
        return;
    }
    if (node_support_pct(ctx, influence) < ctx.cfg.min_support_pct) {
        node.stop = StopReason::support;
        ++ctx.stats.stop_support;
        return;
    }
    if (ctx.cfg.min_correlation_pct > 0.0 &&
        node_correlation_pct(ctx, influence, b) < ctx.cfg.min_correlation_pct) {
        node.stop = StopReason::correlation;
        ++ctx.stats.stop_correlation;
        return;
    }

    // cached per-trace bucket truths of the current constraint set
    std::vector<BucketList> base;
    base.reserve(ctx.traces.size());
    for (const auto& tt : ctx.traces) {
        base.push_back(bucket_list(node.constraints, tt));
    }

    double g_best = 0.0;
    int best_pred = -1, best_bucket = -1;
    std::vector<IntervalSet> best_pos, best_neg;

    const std::size_t npred = ctx.traces.front().names.size();
    for (int i = 0; i <= ctx.cfg.n; ++i) {
        for (std::size_t p = 0; p < npred; ++p) {
            if (static_cast<int>(p) == ctx.target) continue;
            if (node.constraints.blocks(static_cast<int>(p), i)) continue;

            std::vector<IntervalSet> pos_inf, neg_inf;
            pos_inf.reserve(ctx.traces.size());
            neg_inf.reserve(ctx.traces.size());
            for (std::size_t t = 0; t < ctx.traces.size(); ++t) {
                const TraceTruth& tt = ctx.traces[t];
                pos_inf.push_back(influence_set(
                    staged_with(base[t], i, tt.pos[p], tt, ctx.cfg.k)));
                neg_inf.push_back(influence_set(
                    staged_with(base[t], i, tt.neg[p], tt, ctx.cfg.k)));
            }
            double pos_len = pooled_length(pos_inf);
            double neg_len = pooled_length(neg_inf);
            if (pos_len + neg_len <= 0.0) continue;  // degenerate split

            int child_b = node.constraints.empty() ? i : std::min(b, i);
            double alpha = sibling_alpha(pos_len, neg_len);
            double ue_pos =
                pos_len > 0
                    ? node_metrics(pos_inf, ctx.banks, child_b).unified_error
                    : 0.0;
            double ue_neg =
                neg_len > 0
                    ? node_metrics(neg_inf, ctx.banks, child_b).unified_error
                    : 0.0;
            double g = unified_gain(node.metrics.unified_error, alpha, ue_pos,
                                    ue_neg);
            if (g > g_best) {
                g_best = g;
                best_pred = static_cast<int>(p);
                best_bucket = i;
                best_pos = pos_inf;
                best_neg = neg_inf;
            }
        }
    }

    if (best_pred < 0) {
        node.stop = StopReason::no_gain;
        ++ctx.stats.stop_no_gain;
        return;
    }

    node.split_pred = best_pred;
    node.split_bucket = best_bucket;
    node.split_gain = g_best;

    node.pos_child = std::make_unique<DecisionNode>();
    node.pos_child->constraints =
        node.constraints.extended({best_pred, true, best_bucket});
    node.pos_child->depth = node.depth + 1;
    grow(ctx, *node.pos_child, best_pos);

    node.neg_child = std::make_unique<DecisionNode>();
    node.neg_child->constraints =
        node.constraints.extended({best_pred, false, best_bucket});
    node.neg_child->depth = node.depth + 1;
    grow(ctx, *node.neg_child, best_neg);
}

}  // namespace

StagedSequence stage_constraints(const ConstraintSet& c, const TraceTruth& truth,
                                 double k) {
    return staged_from(bucket_list(c, truth), truth, k);
}

MineResult mine(const std::vector<TraceTruth>& traces, const MinerConfig& cfg) {
    if (traces.empty()) {
        throw std::invalid_argument("mine: no traces");
    }
    for (const auto& tt : traces) {
        if (tt.names != traces.front().names) {
            throw std::invalid_argument("mine: traces disagree on the predicate alphabet");
        }
    }
    int target = traces.front().index_of(cfg.target);
    if (target < 0) {
        throw std::invalid_argument("mine: target '" + cfg.target +
                                    "' is not a declared predicate");
    }
    if (cfg.n < 0 || cfg.k <= 0) {
        throw std::invalid_argument("mine: need n >= 0 and k > 0");
    }

    MineContext ctx{traces, cfg};
    ctx.target = target;
    for (const auto& tt : traces) {
        ctx.banks.push_back(build_pseudo_targets(
            tt.pos[static_cast<std::size_t>(target)],
            tt.neg[static_cast<std::size_t>(target)], tt.span, cfg.n, cfg.k));
        ctx.durations.push_back(tt.duration);
        ctx.covered.emplace_back();
    }

    MineResult result;
    result.root = std::make_unique<DecisionNode>();
    std::vector<IntervalSet> root_influence;
    root_influence.reserve(traces.size());
    for (const auto& tt : traces) {
        root_influence.push_back(IntervalSet::single(tt.span));
    }
    grow(ctx, *result.root, root_influence);

    std::sort(ctx.properties.begin(), ctx.properties.end(),
              [](const MinedProperty& a, const MinedProperty& b) {
                  if (a.correlation_pct != b.correlation_pct) {
                      return a.correlation_pct > b.correlation_pct;
                  }
                  if (a.support_pct != b.support_pct) {
                      return a.support_pct > b.support_pct;
                  }
                  return a.text < b.text;
              });
    result.properties = std::move(ctx.properties);
    result.stats = ctx.stats;
    result.coverage_pct = coverage_pct(ctx.covered, ctx.durations);
    return result;
}

}  // namespace psimine
