#include "psimine/psil.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace psimine {

// --- parsing -----------------------------------------------------------------

namespace {

struct PsilParser {
    const std::string& text;
    const std::string source;
    std::size_t pos = 0;

    PsilParser(const std::string& t, std::string src)
        : text(t), source(std::move(src)) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw PsilError(source + ": " + msg + " at column " +
                        std::to_string(pos + 1) + " in '" + text + "'");
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

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    double parse_number() {
        skip_ws();
        const char* begin = text.c_str() + pos;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("expected number");
        pos += static_cast<std::size_t>(end - begin);
        return v;
    }

    DelayInterval parse_delay() {
        if (!eat("##[")) fail("expected '##['");
        double a = parse_number();
        if (!eat(":")) fail("expected ':'");
        double b = parse_number();
        if (!eat("]")) fail("expected ']'");
        if (a < 0 || b < 0) fail("delay bounds must be non-negative");
        if (a > b && !time_eq(a, b)) fail("delay lower bound exceeds upper bound");
        return {a, b};
    }

    Literal parse_literal() {
        skip_ws();
        Literal lit;
        if (pos < text.size() && text[pos] == '!') {
            lit.positive = false;
            ++pos;
            skip_ws();
        }
        std::size_t b = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                text[pos] == '_' || text[pos] == '-')) {
            ++pos;
        }
        if (b == pos) fail("expected predicate name");
        lit.pred = text.substr(b, pos - b);
        return lit;
    }

    Term parse_term() {
        Term t;
        // "true" is reserved for the empty (always-true) term
        auto push = [&t](Literal lit) {
            if (lit.positive && lit.pred == "true") return;
            t.lits.push_back(std::move(lit));
        };
        push(parse_literal());
        while (eat("&&")) push(parse_literal());
        return t;
    }

    bool delay_next() {
        skip_ws();
        return text.compare(pos, 3, "##[") == 0;
    }

    PsiProperty parse_property() {
        PsiProperty prop;
        prop.antecedent.terms.push_back(parse_term());
        while (delay_next()) {
            DelayInterval d = parse_delay();
            if (eat("|->")) {
                // trailing delay belongs to the consequent
                prop.consequent_delay = d;
                prop.consequent = parse_literal();
                if (!at_end()) fail("unexpected trailing input");
                return prop;
            }
            prop.antecedent.delays.push_back(d);
            prop.antecedent.terms.push_back(parse_term());
        }
        if (!eat("|->")) fail("expected '|->'");
        if (delay_next()) {
            prop.consequent_delay = parse_delay();
        }
        prop.consequent = parse_literal();
        if (!at_end()) fail("unexpected trailing input");
        return prop;
    }
};

}  // namespace

PsiProperty parse_psil(const std::string& line) {
    PsilParser p(line, "psil");
    return p.parse_property();
}

std::vector<PsiProperty> parse_psil_file(const std::string& text,
                                         const std::string& source) {
    std::vector<PsiProperty> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comments; the only '#' that isn't one opens a '##[' delay
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] != '#') continue;
            if (i + 2 < line.size() && line[i + 1] == '#' && line[i + 2] == '[') {
                i += 2;
                continue;
            }
            line = line.substr(0, i);
            break;
        }
        bool blank = true;
        for (char c : line) {
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        }
        if (blank) continue;
        PsilParser p(line, source + ":" + std::to_string(lineno));
        out.push_back(p.parse_property());
    }
    return out;
}

// --- printing ----------------------------------------------------------------

std::string format_time(double t) {
    if (t == 0.0) return "0";  // avoid "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", t);
    return buf;
}

std::string print_literal(const Literal& lit) {
    return lit.positive ? lit.pred : "!" + lit.pred;
}

namespace {

std::string print_term(const Term& t) {
    if (t.empty()) return "true";
    std::string out;
    for (std::size_t i = 0; i < t.lits.size(); ++i) {
        if (i) out += " && ";
        out += print_literal(t.lits[i]);
    }
    return out;
}

std::string print_delay(DelayInterval d) {
    return "##[" + format_time(d.lo) + ":" + format_time(d.hi) + "]";
}

}  // namespace

std::string print_sequence(const SequenceExpr& seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.terms.size(); ++i) {
        if (i) out += " " + print_delay(seq.delays[i - 1]) + " ";
        out += print_term(seq.terms[i]);
    }
    return out;
}

std::string print_psil(const PsiProperty& prop) {
    std::string out = print_sequence(prop.antecedent);
    out += " |-> ";
    if (prop.consequent_delay) {
        out += print_delay(*prop.consequent_delay) + " ";
    }
    out += print_literal(prop.consequent);
    return out;
}

// --- influence ----------------------------------------------------------------

IntervalSet bucket_truth(const Term& term, const TraceTruth& truth) {
    if (term.empty()) return IntervalSet::single(truth.span);
    IntervalSet acc;
    bool first = true;
    for (const auto& lit : term.lits) {
        int idx = truth.index_of(lit.pred);
        if (idx < 0) {
            throw PsilError("unknown predicate '" + lit.pred + "' in property");
        }
        const IntervalSet& s =
            lit.positive ? truth.pos[static_cast<std::size_t>(idx)]
                         : truth.neg[static_cast<std::size_t>(idx)];
        acc = first ? s : set_intersect(acc, s);
        first = false;
    }
    return acc;
}

StagedSequence stage_sequence(const SequenceExpr& seq, const TraceTruth& truth) {
    StagedSequence st;
    st.buckets.reserve(seq.terms.size());
    for (const auto& t : seq.terms) st.buckets.push_back(bucket_truth(t, truth));
    st.delays = seq.delays;
    return st;
}

std::optional<Interval> forward_influence(const std::vector<Interval>& workset,
                                          const std::vector<DelayInterval>& delays) {
    if (workset.empty()) return std::nullopt;
    Interval f = workset.front();
    for (std::size_t i = 1; i < workset.size(); ++i) {
        DelayInterval d = delays[i - 1];
        Interval shifted{f.lo + d.lo, f.hi + d.hi, f.lo_closed, f.hi_closed};
        IntervalSet inter = set_intersect(IntervalSet::single(shifted),
                                          IntervalSet::single(workset[i]));
        if (inter.empty()) return std::nullopt;
        f = inter.parts().front();
    }
    return f;
}

std::optional<Interval> backward_influence(const std::vector<Interval>& workset,
                                           const std::vector<DelayInterval>& delays,
                                           std::size_t level) {
    // forward partials down the whole chain
    std::vector<Interval> fwd;
    Interval f = workset.front();
    fwd.push_back(f);
    for (std::size_t i = 1; i < workset.size(); ++i) {
        DelayInterval d = delays[i - 1];
        Interval shifted{f.lo + d.lo, f.hi + d.hi, f.lo_closed, f.hi_closed};
        IntervalSet inter = set_intersect(IntervalSet::single(shifted),
                                          IntervalSet::single(workset[i]));
        if (inter.empty()) return std::nullopt;
        f = inter.parts().front();
        fwd.push_back(f);
    }
    // walk back up from the end-match
    Interval b = fwd.back();
    for (std::size_t i = workset.size() - 1; i > level; --i) {
        DelayInterval d = delays[i - 1];
        Interval lifted{b.lo - d.hi, b.hi - d.lo, b.lo_closed, b.hi_closed};
        IntervalSet inter = set_intersect(IntervalSet::single(lifted),
                                          IntervalSet::single(fwd[i - 1]));
        if (inter.empty()) return std::nullopt;
        b = inter.parts().front();
    }
    return b;
}

std::vector<Interval> end_matches_per_workset(const StagedSequence& seq) {
    std::vector<Interval> out;
    if (seq.buckets.empty() || seq.buckets.front().empty()) return out;

    // depth-first over bucket choices, carrying the running end-match;
    // dead branches are cut without enumerating their extensions
    struct Frame {
        std::size_t level;
        Interval running;
    };
    std::vector<Frame> stack;
    for (auto it = seq.buckets.front().parts().rbegin();
         it != seq.buckets.front().parts().rend(); ++it) {
        stack.push_back({0, *it});
    }
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        if (fr.level + 1 == seq.buckets.size()) {
            out.push_back(fr.running);
            continue;
        }
        DelayInterval d = seq.delays[fr.level];
        Interval shifted{fr.running.lo + d.lo, fr.running.hi + d.hi,
                         fr.running.lo_closed, fr.running.hi_closed};
        const auto& next = seq.buckets[fr.level + 1];
        for (auto it = next.parts().rbegin(); it != next.parts().rend(); ++it) {
            IntervalSet inter = set_intersect(IntervalSet::single(shifted),
                                              IntervalSet::single(*it));
            if (!inter.empty()) {
                stack.push_back({fr.level + 1, inter.parts().front()});
            }
        }
    }
    return out;
}

IntervalSet influence_set(const StagedSequence& seq) {
    if (seq.buckets.empty()) return IntervalSet();
    IntervalSet s = seq.buckets.front();
    for (std::size_t i = 1; i < seq.buckets.size(); ++i) {
        if (s.empty()) return s;
        s = set_intersect(minkowski_sum(s, seq.delays[i - 1]), seq.buckets[i]);
    }
    return s;
}

std::vector<IntervalSet> forward_partials(const StagedSequence& seq) {
    std::vector<IntervalSet> out;
    if (seq.buckets.empty()) return out;
    IntervalSet s = seq.buckets.front();
    out.push_back(s);
    for (std::size_t i = 1; i < seq.buckets.size(); ++i) {
        s = set_intersect(minkowski_sum(s, seq.delays[i - 1]), seq.buckets[i]);
        out.push_back(s);
    }
    return out;
}

std::vector<IntervalSet> participating_sets(const StagedSequence& seq) {
    std::vector<IntervalSet> fwd = forward_partials(seq);
    std::vector<IntervalSet> back(fwd.size());
    if (fwd.empty()) return back;
    back.back() = fwd.back();
    for (std::size_t i = fwd.size() - 1; i > 0; --i) {
        DelayInterval d = seq.delays[i - 1];
        back[i - 1] = set_intersect(minkowski_diff(back[i], d), fwd[i - 1]);
    }
    return back;
}

IntervalSet match_ends(const PsiProperty& prop, const TraceTruth& truth) {
    IntervalSet ends = influence_set(stage_sequence(prop.antecedent, truth));
    if (prop.consequent_delay) {
        ends = minkowski_sum(ends, *prop.consequent_delay);
    }
    int idx = truth.index_of(prop.consequent.pred);
    if (idx < 0) {
        throw PsilError("unknown predicate '" + prop.consequent.pred + "' in property");
    }
    const IntervalSet& target =
        prop.consequent.positive ? truth.pos[static_cast<std::size_t>(idx)]
                                 : truth.neg[static_cast<std::size_t>(idx)];
    return set_intersect(ends, target);
}

IntervalSet counterexample_set(const PsiProperty& prop, const TraceTruth& truth) {
    IntervalSet ends = influence_set(stage_sequence(prop.antecedent, truth));
    int idx = truth.index_of(prop.consequent.pred);
    if (idx < 0) {
        throw PsilError("unknown predicate '" + prop.consequent.pred + "' in property");
    }
    const IntervalSet& target =
        prop.consequent.positive ? truth.pos[static_cast<std::size_t>(idx)]
                                 : truth.neg[static_cast<std::size_t>(idx)];
    // reachable = times from which the consequent occurs within the delay
    IntervalSet reachable =
        prop.consequent_delay ? minkowski_diff(target, *prop.consequent_delay) : target;
    return set_intersect(ends, complement(reachable, truth.span));
}

}  // namespace psimine
