#pragma once

#include <string>
#include <vector>

namespace psimine {

// Relative tolerance used for all time comparisons:
// |a - b| <= 1e-9 * max(1, |a|, |b|).
bool time_eq(double a, double b);
bool time_lt(double a, double b);   // a < b beyond tolerance
bool time_le(double a, double b);   // a < b or a ~= b

// A single time interval with independent endpoint openness.
// Truth intervals from booleanized traces are half-open [lo:hi);
// point intervals [t:t] require both endpoints closed.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = false;

    bool empty() const;
    bool is_point() const;
    double length() const { return hi - lo; }
    bool contains(double t) const;
};

Interval closed_iv(double lo, double hi);
Interval half_open(double lo, double hi);

// Closed delay interval [lo:hi], 0 <= lo <= hi.
struct DelayInterval {
    double lo = 0.0;
    double hi = 0.0;
};

// Merges two delay intervals around an elided (empty) bucket:
// [a:b] followed by [c:d] collapses to [a+c : b+d].
DelayInterval delay_sum(DelayInterval a, DelayInterval b);

// Sorted set of non-overlapping, non-abutting-mergeable intervals.
// Invariants kept by every operation:
//   - parts sorted by lo, no empty members,
//   - [a:b) followed by [b:c) is merged; [a:b) followed by (b:c) is not
//     (the shared endpoint must be covered by at least one side),
//   - point intervals are retained.
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<Interval> parts);   // normalizes

    static IntervalSet single(Interval iv);

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }

    // Total measure: sum of (hi - lo) over normalized parts.
    double length() const;

    bool contains(double t) const;

    bool operator==(const IntervalSet& o) const;

private:
    std::vector<Interval> parts_;
};

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b);

// Complement of a within the span; result is clipped to the span.
IntervalSet complement(const IntervalSet& a, Interval span);

// a ⊕ [d.lo:d.hi]: every [lo:hi] becomes [lo+d.lo : hi+d.hi],
// endpoint flags preserved, result re-normalized.
IntervalSet minkowski_sum(const IntervalSet& a, DelayInterval d);

// a ⊖ [d.lo:d.hi]: every [lo:hi] becomes [lo-d.hi : hi-d.lo].
IntervalSet minkowski_diff(const IntervalSet& a, DelayInterval d);

// Smallest closed interval covering the whole set.
// Throws std::invalid_argument on an empty set (callers fall back to the
// template delay).
Interval widen(const IntervalSet& a);

IntervalSet clamp(const IntervalSet& a, Interval span);

// Pairwise difference used by delay tightening: the set of offsets d such
// that some x in `from` and some y in `onto` satisfy y - x = d.
// For single intervals: [a:b] ⊖p [c:d] = [c - b : d - a].
Interval pair_diff(Interval onto, Interval from);

std::string to_string(Interval iv);
std::string to_string(const IntervalSet& s);

}  // namespace psimine
