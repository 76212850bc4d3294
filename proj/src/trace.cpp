#include "psimine/trace.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace psimine {

int Trace::variable_index(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i] == name) return static_cast<int>(i);
    }
    return -1;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_cell(const std::string& cell, const std::string& source,
                  std::size_t row, const std::string& column) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || cell.empty()) {
        throw TraceError(source + ": non-numeric value '" + cell + "' at row " +
                         std::to_string(row) + ", column '" + column + "'");
    }
    return v;
}

}  // namespace

Trace parse_trace_csv(const std::string& text, const std::string& time_column,
                      const std::string& source) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw TraceError(source + ": empty file");
    }
    std::vector<std::string> header = split_csv_line(line);
    int time_idx = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == time_column) time_idx = static_cast<int>(i);
    }
    if (time_idx < 0) {
        throw TraceError(source + ": missing column '" + time_column + "'");
    }

    Trace tr;
    tr.source = source;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (static_cast<int>(i) == time_idx) continue;
        if (header[i].empty()) {
            throw TraceError(source + ": empty column name in header");
        }
        tr.variables.push_back(header[i]);
    }
    tr.values.resize(tr.variables.size());

    std::size_t row = 1;  // header is row 0
    while (std::getline(in, line)) {
        if (trim(line).empty()) {
            ++row;
            continue;
        }
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw TraceError(source + ": expected " +
                             std::to_string(header.size()) + " cells at row " +
                             std::to_string(row) + ", got " +
                             std::to_string(cells.size()));
        }
        double t = parse_cell(cells[time_idx], source, row, time_column);
        if (!tr.times.empty()) {
            if (t == tr.times.back()) {
                throw TraceError(source + ": duplicate timestamp at row " +
                                 std::to_string(row));
            }
            if (t < tr.times.back()) {
                throw TraceError(source + ": timestamp order violation at row " +
                                 std::to_string(row));
            }
        }
        tr.times.push_back(t);
        std::size_t v = 0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (static_cast<int>(i) == time_idx) continue;
            tr.values[v].push_back(parse_cell(cells[i], source, row, header[i]));
            ++v;
        }
        ++row;
    }
    if (tr.times.size() < 2) {
        throw TraceError(source + ": need at least 2 rows, got " +
                         std::to_string(tr.times.size()));
    }
    return tr;
}

Trace load_trace_csv(const std::string& path, const std::string& time_column) {
    std::ifstream f(path);
    if (!f) {
        throw TraceError(path + ": cannot open file");
    }
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_trace_csv(buf.str(), time_column, path);
}

// --- predicate expression parser ------------------------------------------
//
//   expr  := conj ("||" conj)*
//   conj  := unary ("&&" unary)*
//   unary := "!" unary | "(" expr ")" | atom
//   atom  := name cmp number
//   cmp   := "<=" | ">=" | "==" | "=" | "!=" | "<" | ">"

namespace {

struct PredParser {
    const std::string& text;
    std::size_t pos = 0;

    explicit PredParser(const std::string& t) : text(t) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw TraceError("predicate '" + text + "': " + msg + " at column " +
                         std::to_string(pos + 1));
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(const char* tok) {
        skip_ws();
        std::size_t n = std::char_traits<char>::length(tok);
        if (text.compare(pos, n, tok) == 0) {
            pos += n;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    PredExpr parse_expr() {
        PredExpr lhs = parse_conj();
        std::vector<PredExpr> kids;
        kids.push_back(std::move(lhs));
        while (eat("||")) kids.push_back(parse_conj());
        if (kids.size() == 1) return std::move(kids.front());
        PredExpr e;
        e.kind = PredExpr::Kind::disj;
        e.kids = std::move(kids);
        return e;
    }

    PredExpr parse_conj() {
        std::vector<PredExpr> kids;
        kids.push_back(parse_unary());
        while (true) {
            skip_ws();
            // don't confuse "&&" with nothing else; single '&' is an error
            if (text.compare(pos, 2, "&&") == 0) {
                pos += 2;
                kids.push_back(parse_unary());
            } else {
                break;
            }
        }
        if (kids.size() == 1) return std::move(kids.front());
        PredExpr e;
        e.kind = PredExpr::Kind::conj;
        e.kids = std::move(kids);
        return e;
    }

    PredExpr parse_unary() {
        skip_ws();
        if (pos < text.size() && text[pos] == '!' &&
            (pos + 1 >= text.size() || text[pos + 1] != '=')) {
            ++pos;
            PredExpr e;
            e.kind = PredExpr::Kind::neg;
            e.kids.push_back(parse_unary());
            return e;
        }
        if (eat("(")) {
            PredExpr e = parse_expr();
            if (!eat(")")) fail("expected ')'");
            return e;
        }
        return parse_atom();
    }

    PredExpr parse_atom() {
        skip_ws();
        std::size_t b = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                text[pos] == '_' || text[pos] == '.')) {
            ++pos;
        }
        if (b == pos) fail("expected variable name");
        PredExpr e;
        e.kind = PredExpr::Kind::atom;
        e.var = text.substr(b, pos - b);

        skip_ws();
        if (eat("<=")) e.op = CmpOp::le;
        else if (eat(">=")) e.op = CmpOp::ge;
        else if (eat("==")) e.op = CmpOp::eq;
        else if (eat("!=")) e.op = CmpOp::ne;
        else if (eat("=")) e.op = CmpOp::eq;
        else if (eat("<")) e.op = CmpOp::lt;
        else if (eat(">")) e.op = CmpOp::gt;
        else fail("expected comparison operator");

        skip_ws();
        std::size_t nb = pos;
        const char* begin = text.c_str() + nb;
        char* end = nullptr;
        e.value = std::strtod(begin, &end);
        if (end == begin) fail("expected numeric constant");
        pos = nb + static_cast<std::size_t>(end - begin);
        return e;
    }
};

bool eval_expr(const PredExpr& e, const Trace& tr,
               const std::vector<int>& var_cols, std::size_t row,
               std::size_t& atom_idx) {
    switch (e.kind) {
        case PredExpr::Kind::atom: {
            double v = tr.values[static_cast<std::size_t>(var_cols[atom_idx++])][row];
            switch (e.op) {
                case CmpOp::lt: return v < e.value;
                case CmpOp::le: return v <= e.value;
                case CmpOp::gt: return v > e.value;
                case CmpOp::ge: return v >= e.value;
                case CmpOp::eq: return v == e.value;
                case CmpOp::ne: return v != e.value;
            }
            return false;
        }
        case PredExpr::Kind::neg:
            return !eval_expr(e.kids[0], tr, var_cols, row, atom_idx);
        case PredExpr::Kind::conj: {
            bool all = true;
            for (const auto& k : e.kids) all = eval_expr(k, tr, var_cols, row, atom_idx) && all;
            return all;
        }
        case PredExpr::Kind::disj: {
            bool any = false;
            for (const auto& k : e.kids) any = eval_expr(k, tr, var_cols, row, atom_idx) || any;
            return any;
        }
    }
    return false;
}

void collect_vars(const PredExpr& e, const Trace& tr, const std::string& pname,
                  std::vector<int>& var_cols) {
    if (e.kind == PredExpr::Kind::atom) {
        int idx = tr.variable_index(e.var);
        if (idx < 0) {
            throw TraceError(tr.source + ": predicate '" + pname +
                             "' references unknown variable '" + e.var + "'");
        }
        var_cols.push_back(idx);
        return;
    }
    for (const auto& k : e.kids) collect_vars(k, tr, pname, var_cols);
}

}  // namespace

PredExpr parse_pred_expr(const std::string& text) {
    PredParser p(text);
    PredExpr e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("unexpected trailing input");
    return e;
}

int TraceTruth::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

TraceTruth booleanize(const Trace& trace, const std::vector<Predicate>& preds) {
    if (trace.times.size() < 2) {
        throw TraceError(trace.source + ": need at least 2 rows");
    }
    TraceTruth tt;
    tt.source = trace.source;
    tt.span = half_open(trace.span_lo(), trace.span_hi());
    tt.duration = trace.duration();

    const std::size_t d = trace.times.size();
    for (const auto& pred : preds) {
        std::vector<int> var_cols;
        collect_vars(pred.expr, trace, pred.name, var_cols);

        std::vector<Interval> runs;
        std::size_t run_start = 0;
        bool in_run = false;
        // the final sample holds no time, so only rows 0..d-2 contribute
        for (std::size_t row = 0; row + 1 < d; ++row) {
            std::size_t atom_idx = 0;
            bool truth = eval_expr(pred.expr, trace, var_cols, row, atom_idx);
            if (truth && !in_run) {
                run_start = row;
                in_run = true;
            } else if (!truth && in_run) {
                runs.push_back(half_open(trace.times[run_start], trace.times[row]));
                in_run = false;
            }
        }
        if (in_run) {
            runs.push_back(half_open(trace.times[run_start], trace.times[d - 1]));
        }
        IntervalSet positive(std::move(runs));
        tt.names.push_back(pred.name);
        tt.neg.push_back(complement(positive, tt.span));
        tt.pos.push_back(std::move(positive));
    }
    return tt;
}

TraceTruth make_truth(Interval span, std::vector<std::string> names,
                      std::vector<IntervalSet> pos) {
    TraceTruth tt;
    tt.source = "fixture";
    tt.span = span;
    tt.duration = span.hi - span.lo;
    tt.names = std::move(names);
    tt.pos = std::move(pos);
    tt.neg.reserve(tt.pos.size());
    for (const auto& p : tt.pos) tt.neg.push_back(complement(p, span));
    return tt;
}

}  // namespace psimine
