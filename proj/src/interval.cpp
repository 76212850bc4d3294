#include "psimine/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace psimine {

bool time_eq(double a, double b) {
    double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= 1e-9 * scale;
}

bool time_lt(double a, double b) { return a < b && !time_eq(a, b); }

bool time_le(double a, double b) { return a < b || time_eq(a, b); }

bool Interval::empty() const {
    if (time_lt(hi, lo)) return true;
    if (time_eq(lo, hi)) return !(lo_closed && hi_closed);
    return false;
}

bool Interval::is_point() const {
    return time_eq(lo, hi) && lo_closed && hi_closed;
}

bool Interval::contains(double t) const {
    if (empty()) return false;
    bool above = lo_closed ? time_le(lo, t) : time_lt(lo, t);
    bool below = hi_closed ? time_le(t, hi) : time_lt(t, hi);
    return above && below;
}

Interval closed_iv(double lo, double hi) { return {lo, hi, true, true}; }

Interval half_open(double lo, double hi) { return {lo, hi, true, false}; }

DelayInterval delay_sum(DelayInterval a, DelayInterval b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

namespace {

// Can `b` be merged into `a` given a.lo <= b.lo?
// True when they overlap, or abut with the shared point covered.
bool mergeable(const Interval& a, const Interval& b) {
    if (time_lt(b.lo, a.hi)) return true;
    if (time_eq(b.lo, a.hi)) return a.hi_closed || b.lo_closed;
    return false;
}

void merge_into(Interval& a, const Interval& b) {
    if (time_eq(a.lo, b.lo)) {
        a.lo_closed = a.lo_closed || b.lo_closed;
    }
    if (time_eq(a.hi, b.hi)) {
        a.hi_closed = a.hi_closed || b.hi_closed;
    } else if (time_lt(a.hi, b.hi)) {
        a.hi = b.hi;
        a.hi_closed = b.hi_closed;
    }
}

std::vector<Interval> normalize(std::vector<Interval> parts) {
    std::vector<Interval> kept;
    kept.reserve(parts.size());
    for (const auto& p : parts) {
        if (!p.empty()) kept.push_back(p);
    }
    std::sort(kept.begin(), kept.end(), [](const Interval& x, const Interval& y) {
        if (x.lo != y.lo) return x.lo < y.lo;
        if (x.lo_closed != y.lo_closed) return x.lo_closed;
        return x.hi < y.hi;
    });
    std::vector<Interval> out;
    for (const auto& p : kept) {
        if (!out.empty() && mergeable(out.back(), p)) {
            merge_into(out.back(), p);
        } else {
            out.push_back(p);
        }
    }
    return out;
}

Interval intersect_iv(const Interval& a, const Interval& b) {
    Interval r;
    if (time_eq(a.lo, b.lo)) {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed && b.lo_closed;
    } else if (a.lo < b.lo) {
        r.lo = b.lo;
        r.lo_closed = b.lo_closed;
    } else {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed;
    }
    if (time_eq(a.hi, b.hi)) {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed && b.hi_closed;
    } else if (a.hi < b.hi) {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed;
    } else {
        r.hi = b.hi;
        r.hi_closed = b.hi_closed;
    }
    return r;
}

}  // namespace

IntervalSet::IntervalSet(std::vector<Interval> parts)
    : parts_(normalize(std::move(parts))) {}

IntervalSet IntervalSet::single(Interval iv) {
    return IntervalSet(std::vector<Interval>{iv});
}

double IntervalSet::length() const {
    double total = 0.0;
    for (const auto& p : parts_) total += p.hi - p.lo;
    return total;
}

bool IntervalSet::contains(double t) const {
    auto it = std::upper_bound(
        parts_.begin(), parts_.end(), t,
        [](double v, const Interval& p) { return v < p.lo; });
    // Candidates: the part before `it`, plus tolerance slop on `it` itself.
    if (it != parts_.end() && it->contains(t)) return true;
    if (it != parts_.begin() && std::prev(it)->contains(t)) return true;
    return false;
}

bool IntervalSet::operator==(const IntervalSet& o) const {
    if (parts_.size() != o.parts_.size()) return false;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        const auto& a = parts_[i];
        const auto& b = o.parts_[i];
        if (!time_eq(a.lo, b.lo) || !time_eq(a.hi, b.hi)) return false;
        if (a.lo_closed != b.lo_closed || a.hi_closed != b.hi_closed) return false;
    }
    return true;
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> all = a.parts();
    all.insert(all.end(), b.parts().begin(), b.parts().end());
    return IntervalSet(std::move(all));
}

IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const Interval& x = a.parts()[i];
        const Interval& y = b.parts()[j];
        Interval r = intersect_iv(x, y);
        if (!r.empty()) out.push_back(r);
        // advance the one that ends first
        if (x.hi < y.hi || (x.hi == y.hi && !x.hi_closed)) {
            ++i;
        } else {
            ++j;
        }
    }
    return IntervalSet(std::move(out));
}

IntervalSet complement(const IntervalSet& a, Interval span) {
    std::vector<Interval> out;
    double cur = span.lo;
    bool cur_closed = span.lo_closed;
    IntervalSet clamped = clamp(a, span);
    for (const auto& p : clamped.parts()) {
        Interval gap{cur, p.lo, cur_closed, !p.lo_closed};
        if (!gap.empty()) out.push_back(gap);
        cur = p.hi;
        cur_closed = !p.hi_closed;
    }
    Interval tail{cur, span.hi, cur_closed, span.hi_closed};
    if (!tail.empty()) out.push_back(tail);
    return IntervalSet(std::move(out));
}

IntervalSet minkowski_sum(const IntervalSet& a, DelayInterval d) {
    std::vector<Interval> out;
    out.reserve(a.size());
    for (Interval p : a.parts()) {
        p.lo += d.lo;
        p.hi += d.hi;
        out.push_back(p);
    }
    return IntervalSet(std::move(out));
}

IntervalSet minkowski_diff(const IntervalSet& a, DelayInterval d) {
    std::vector<Interval> out;
    out.reserve(a.size());
    for (Interval p : a.parts()) {
        p.lo -= d.hi;
        p.hi -= d.lo;
        out.push_back(p);
    }
    return IntervalSet(std::move(out));
}

Interval widen(const IntervalSet& a) {
    if (a.empty()) {
        throw std::invalid_argument("widen: empty interval set");
    }
    return closed_iv(a.parts().front().lo, a.parts().back().hi);
}

IntervalSet clamp(const IntervalSet& a, Interval span) {
    return set_intersect(a, IntervalSet::single(span));
}

Interval pair_diff(Interval onto, Interval from) {
    Interval r;
    r.lo = onto.lo - from.hi;
    r.lo_closed = onto.lo_closed && from.hi_closed;
    r.hi = onto.hi - from.lo;
    r.hi_closed = onto.hi_closed && from.lo_closed;
    return r;
}

std::string to_string(Interval iv) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%c%.9g:%.9g%c", iv.lo_closed ? '[' : '(',
                  iv.lo, iv.hi, iv.hi_closed ? ']' : ')');
    return buf;
}

std::string to_string(const IntervalSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        out += to_string(s.parts()[i]);
    }
    out += "}";
    return out;
}

}  // namespace psimine
