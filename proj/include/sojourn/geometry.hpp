#ifndef SOJOURN_GEOMETRY_HPP
#define SOJOURN_GEOMETRY_HPP

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sojourn {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One real interval with extended endpoints and per-endpoint openness.
/// An infinite endpoint is always open.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_open = true;
    bool hi_open = true;

    static Interval open(double lo, double hi) { return {lo, hi, true, true}; }
    static Interval closed(double lo, double hi) { return {lo, hi, false, false}; }
    static Interval left_open(double lo, double hi) { return {lo, hi, true, false}; }
    static Interval right_open(double lo, double hi) { return {lo, hi, false, true}; }
    static Interval point(double x) { return {x, x, false, false}; }
    static Interval whole() { return {-kInf, kInf, true, true}; }

    bool empty() const {
        if (lo > hi) return true;
        if (lo == hi) return lo_open || hi_open;
        return false;
    }
    bool bounded() const { return lo > -kInf && hi < kInf; }
    double length() const { return empty() ? 0.0 : hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }

    bool contains(double t) const {
        if (t < lo || t > hi) return false;
        if (t == lo && lo_open) return false;
        if (t == hi && hi_open) return false;
        return true;
    }

    Interval translated(double t) const {
        Interval r = *this;
        if (r.lo > -kInf) r.lo += t;
        if (r.hi < kInf) r.hi += t;
        return r;
    }

    bool operator==(const Interval&) const = default;
};

Interval intersect(const Interval& a, const Interval& b);

/// Normalized finite union of pairwise disjoint intervals, sorted by lo.
/// Adjacent parts that would fuse into a single interval are merged on
/// construction, so equal sets have equal representations.
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<Interval> parts);
    IntervalSet(std::initializer_list<Interval> parts);

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    bool bounded() const;
    std::size_t size() const { return parts_.size(); }

    /// Lebesgue measure; +inf if any part is unbounded. Openness of
    /// endpoints never affects the value.
    double measure() const;

    bool contains(double t) const;
    /// Set containment: other is a subset of *this (openness respected).
    bool contains_set(const IntervalSet& other) const;

    IntervalSet translated(double t) const;
    /// Removes the union of closed balls [c - radius, c + radius].
    IntervalSet subtract_translates(std::span<const double> centers, double radius) const;
    IntervalSet complement() const;

    std::string to_string() const;
    static IntervalSet parse(std::string_view text);

    bool operator==(const IntervalSet&) const = default;

    friend IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
    friend IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
    friend IntervalSet difference(const IntervalSet& a, const IntervalSet& b);

private:
    void normalize();
    std::vector<Interval> parts_;
};

/// Axis-aligned box in R^d with per-face openness flags; the computational
/// form of the neighbourhoods V and W_m. Interior must be nonempty.
struct BoxNeighborhood {
    std::vector<double> lo, hi;
    std::vector<bool> lo_open, hi_open;

    static BoxNeighborhood closed_box(std::vector<double> lo, std::vector<double> hi);
    static BoxNeighborhood open_box(std::vector<double> lo, std::vector<double> hi);

    std::size_t dim() const { return lo.size(); }
    Interval face(std::size_t i) const { return {lo[i], hi[i], lo_open[i] != 0, hi_open[i] != 0}; }
    bool contains(std::span<const double> p) const;
    /// b is contained in *this face-wise (closure semantics per flags).
    bool contains_box(const BoxNeighborhood& b) const;
    /// Concentric shrink about `center` by factor f in (0, 1].
    BoxNeighborhood shrunk(std::span<const double> center, double f) const;
    BoxNeighborhood closure() const;
};

}  // namespace sojourn

#endif
