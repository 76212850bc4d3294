#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "psimine/interval.hpp"

namespace psimine {

struct TraceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A sampled real-valued trace: strictly increasing timestamps, one value
// column per variable. At least two rows.
struct Trace {
    std::string source;
    std::vector<double> times;
    std::vector<std::string> variables;
    std::vector<std::vector<double>> values;  // values[v][row]

    int variable_index(const std::string& name) const;  // -1 if absent
    double span_lo() const { return times.front(); }
    double span_hi() const { return times.back(); }
    double duration() const { return span_hi() - span_lo(); }
};

// CSV with a header row; `time_column` names the timestamp column, every
// other column is a variable.
Trace load_trace_csv(const std::string& path, const std::string& time_column);
Trace parse_trace_csv(const std::string& text, const std::string& time_column,
                      const std::string& source);

// Boolean expression over atoms  <variable> <cmp> <constant>,
// combined with !, &&, || and parentheses.
enum class CmpOp { lt, le, gt, ge, eq, ne };

struct PredExpr {
    enum class Kind { atom, neg, conj, disj } kind = Kind::atom;
    // atom
    std::string var;
    CmpOp op = CmpOp::lt;
    double value = 0.0;
    // neg / conj / disj
    std::vector<PredExpr> kids;
};

PredExpr parse_pred_expr(const std::string& text);  // TraceError on bad syntax

struct Predicate {
    std::string name;
    PredExpr expr;
};

// Booleanized view of one trace: positive and negative truth interval sets
// per predicate, in declaration order. Sample-and-hold semantics: a sample's
// value covers [t_i : t_{i+1}); the final sample holds nothing, so the trace
// span is [t_1 : t_d).
struct TraceTruth {
    std::string source;
    Interval span;       // [t_1 : t_d)
    double duration = 0; // t_d - t_1
    std::vector<std::string> names;
    std::vector<IntervalSet> pos;
    std::vector<IntervalSet> neg;

    int index_of(const std::string& name) const;  // -1 if absent
};

TraceTruth booleanize(const Trace& trace, const std::vector<Predicate>& preds);

// Directly assembled truth (for fixtures given as interval sets).
TraceTruth make_truth(Interval span, std::vector<std::string> names,
                      std::vector<IntervalSet> pos);

}  // namespace psimine
