#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psimine/interval.hpp"
#include "psimine/trace.hpp"

namespace psimine {

struct PsilError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Literal {
    std::string pred;
    bool positive = true;
};

// Conjunction of literals occupying one sequence position; empty means true.
struct Term {
    std::vector<Literal> lits;
    bool empty() const { return lits.empty(); }
};

// s_m ##[a_m:b_m] s_{m-1} ... ##[a_1:b_1] s_0, stored leftmost (farthest from
// the consequent) first. delays[i] sits between terms[i] and terms[i+1].
// bucket_index records mining provenance (position of each term in the
// n-bucket template); empty for parsed properties.
struct SequenceExpr {
    std::vector<Term> terms;
    std::vector<DelayInterval> delays;
    std::vector<int> bucket_index;
};

struct PsiProperty {
    SequenceExpr antecedent;
    std::optional<DelayInterval> consequent_delay;
    Literal consequent;
};

// Text form:  term ("##[" a ":" b "]" term)* "|->" ("##[" a ":" b "]")? literal
// where term := literal ("&&" literal)* and literal := ("!")? name.
PsiProperty parse_psil(const std::string& line);
std::string print_psil(const PsiProperty& prop);
std::string print_sequence(const SequenceExpr& seq);
std::string print_literal(const Literal& lit);

// One property per line; '#' starts a comment, blank lines skipped.
std::vector<PsiProperty> parse_psil_file(const std::string& text,
                                         const std::string& source);

// Canonical time formatting shared by the printer and reports (shortest form
// that survives the 1e-9 relative tolerance).
std::string format_time(double t);

// --- influence computation --------------------------------------------------
//
// A sequence instantiated against one trace: truth interval set per term
// (highest position first) and the delay between consecutive terms.
// Delays spanning elided empty positions are already merged.

struct StagedSequence {
    std::vector<IntervalSet> buckets;      // highest position first
    std::vector<DelayInterval> delays;     // size = buckets.size() - 1
};

// Truth of one term: intersection of its literals' truth sets; the empty
// term is true on the whole span.
IntervalSet bucket_truth(const Term& term, const TraceTruth& truth);

// Instantiate a parsed/mined sequence against a trace.
StagedSequence stage_sequence(const SequenceExpr& seq, const TraceTruth& truth);

// Per-workset forward influence (sum-then-intersect recursion): workset[j]
// is the chosen truth interval of bucket j counted from the highest position.
// Returns the end-match interval, or nullopt when the chain dies.
std::optional<Interval> forward_influence(const std::vector<Interval>& workset,
                                          const std::vector<DelayInterval>& delays);

// Per-workset backward influence at `level` (0 = highest position): the
// sub-interval of workset[level] that participates in some match.
std::optional<Interval> backward_influence(const std::vector<Interval>& workset,
                                           const std::vector<DelayInterval>& delays,
                                           std::size_t level);

// End-match intervals of every non-dead workset, enumerated lazily with
// pruning (dead prefixes are never extended).
std::vector<Interval> end_matches_per_workset(const StagedSequence& seq);

// Union of forward influence over all worksets. Computed set-wise:
// fold S := (S ⊕ delay) ∩ bucket, top position downward.
IntervalSet influence_set(const StagedSequence& seq);

// Suffix end-match sets: partial[i] = union over worksets of the forward
// influence of positions 0..i (so partial.back() == influence_set).
std::vector<IntervalSet> forward_partials(const StagedSequence& seq);

// Participating sub-intervals per position (union of backward influence over
// all worksets). participating.back() (lowest position) equals the end-match
// set; entry 0 is the highest position.
std::vector<IntervalSet> participating_sets(const StagedSequence& seq);

// Times at which the full property matches: antecedent end-matches, shifted
// by the consequent delay when present, restricted to the consequent truth.
IntervalSet match_ends(const PsiProperty& prop, const TraceTruth& truth);

// Antecedent end-match times from which no consequent occurrence is
// reachable within the consequent delay.
IntervalSet counterexample_set(const PsiProperty& prop, const TraceTruth& truth);

}  // namespace psimine
