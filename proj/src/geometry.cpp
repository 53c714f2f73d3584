#include "sojourn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace sojourn {

namespace {

// Order on left endpoints: position first, closed before open.
bool lo_before(const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return !a.lo_open && b.lo_open;
}

// True when a part ending at (hi, hi_open) touches or overlaps a part
// starting at (lo, lo_open): union is one interval.
bool fuses(const Interval& left, const Interval& right) {
    if (right.lo < left.hi) return true;
    if (right.lo == left.hi) return !left.hi_open || !right.lo_open;
    return false;
}

std::string format_endpoint(double x) {
    if (x == kInf) return "inf";
    if (x == -kInf) return "-inf";
    return fmt::format("{}", x);
}

double parse_endpoint(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    return std::stod(std::string(s));
}

}  // namespace

Interval intersect(const Interval& a, const Interval& b) {
    Interval r;
    if (a.lo > b.lo) {
        r.lo = a.lo;
        r.lo_open = a.lo_open;
    } else if (b.lo > a.lo) {
        r.lo = b.lo;
        r.lo_open = b.lo_open;
    } else {
        r.lo = a.lo;
        r.lo_open = a.lo_open || b.lo_open;
    }
    if (a.hi < b.hi) {
        r.hi = a.hi;
        r.hi_open = a.hi_open;
    } else if (b.hi < a.hi) {
        r.hi = b.hi;
        r.hi_open = b.hi_open;
    } else {
        r.hi = a.hi;
        r.hi_open = a.hi_open || b.hi_open;
    }
    return r;
}

IntervalSet::IntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) { normalize(); }

IntervalSet::IntervalSet(std::initializer_list<Interval> parts) : parts_(parts) { normalize(); }

void IntervalSet::normalize() {
    std::erase_if(parts_, [](const Interval& p) { return p.empty(); });
    std::sort(parts_.begin(), parts_.end(), lo_before);
    std::vector<Interval> merged;
    for (const Interval& p : parts_) {
        if (!merged.empty() && fuses(merged.back(), p)) {
            Interval& last = merged.back();
            if (p.hi > last.hi) {
                last.hi = p.hi;
                last.hi_open = p.hi_open;
            } else if (p.hi == last.hi && !p.hi_open) {
                last.hi_open = false;
            }
        } else {
            merged.push_back(p);
        }
    }
    parts_ = std::move(merged);
}

bool IntervalSet::bounded() const {
    return parts_.empty() || (parts_.front().lo > -kInf && parts_.back().hi < kInf);
}

double IntervalSet::measure() const {
    double total = 0.0;
    for (const Interval& p : parts_) {
        if (!p.bounded()) return kInf;
        total += p.length();
    }
    return total;
}

bool IntervalSet::contains(double t) const {
    for (const Interval& p : parts_) {
        if (p.contains(t)) return true;
        if (p.lo > t) break;
    }
    return false;
}

bool IntervalSet::contains_set(const IntervalSet& other) const {
    return difference(other, *this).empty();
}

IntervalSet IntervalSet::translated(double t) const {
    std::vector<Interval> parts;
    parts.reserve(parts_.size());
    for (const Interval& p : parts_) parts.push_back(p.translated(t));
    return IntervalSet(std::move(parts));
}

IntervalSet IntervalSet::complement() const {
    std::vector<Interval> out;
    double cursor = -kInf;
    bool cursor_open = true;  // left end of the pending gap is open at -inf
    for (const Interval& p : parts_) {
        Interval gap{cursor, p.lo, cursor_open, !p.lo_open};
        if (!gap.empty()) out.push_back(gap);
        cursor = p.hi;
        cursor_open = !p.hi_open;
        if (cursor == kInf) return IntervalSet(std::move(out));
    }
    Interval tail{cursor, kInf, cursor_open, true};
    if (!tail.empty()) out.push_back(tail);
    return IntervalSet(std::move(out));
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> parts = a.parts_;
    parts.insert(parts.end(), b.parts_.begin(), b.parts_.end());
    return IntervalSet(std::move(parts));
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> out;
    for (const Interval& pa : a.parts_) {
        for (const Interval& pb : b.parts_) {
            if (pb.lo > pa.hi) break;
            Interval r = intersect(pa, pb);
            if (!r.empty()) out.push_back(r);
        }
    }
    return IntervalSet(std::move(out));
}

IntervalSet difference(const IntervalSet& a, const IntervalSet& b) {
    return intersect(a, b.complement());
}

IntervalSet IntervalSet::subtract_translates(std::span<const double> centers,
                                             double radius) const {
    if (centers.empty()) return *this;
    if (radius < 0.0) throw std::invalid_argument("subtract_translates: negative radius");
    std::vector<Interval> balls;
    balls.reserve(centers.size());
    for (double c : centers) balls.push_back(Interval::closed(c - radius, c + radius));
    return difference(*this, IntervalSet(std::move(balls)));
}

std::string IntervalSet::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        const Interval& p = parts_[i];
        if (i) out += ", ";
        out += p.lo_open ? '(' : '[';
        out += format_endpoint(p.lo);
        out += ',';
        out += format_endpoint(p.hi);
        out += p.hi_open ? ')' : ']';
    }
    return out;
}

IntervalSet IntervalSet::parse(std::string_view text) {
    std::vector<Interval> parts;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        char open_ch = text[i];
        if (open_ch != '(' && open_ch != '[')
            throw std::invalid_argument("IntervalSet::parse: expected '(' or '['");
        std::size_t comma = text.find(',', i + 1);
        if (comma == std::string_view::npos)
            throw std::invalid_argument("IntervalSet::parse: missing ','");
        std::size_t close = text.find_first_of(")]", comma + 1);
        if (close == std::string_view::npos)
            throw std::invalid_argument("IntervalSet::parse: missing ')' or ']'");
        Interval p;
        p.lo = parse_endpoint(text.substr(i + 1, comma - i - 1));
        p.hi = parse_endpoint(text.substr(comma + 1, close - comma - 1));
        p.lo_open = open_ch == '(';
        p.hi_open = text[close] == ')';
        parts.push_back(p);
        i = close + 1;
        skip_ws();
    }
    return IntervalSet(std::move(parts));
}

BoxNeighborhood BoxNeighborhood::closed_box(std::vector<double> lo, std::vector<double> hi) {
    BoxNeighborhood b;
    b.lo_open.assign(lo.size(), false);
    b.hi_open.assign(lo.size(), false);
    b.lo = std::move(lo);
    b.hi = std::move(hi);
    for (std::size_t i = 0; i < b.lo.size(); ++i)
        if (!(b.lo[i] < b.hi[i])) throw std::invalid_argument("box with empty interior");
    return b;
}

BoxNeighborhood BoxNeighborhood::open_box(std::vector<double> lo, std::vector<double> hi) {
    BoxNeighborhood b = closed_box(std::move(lo), std::move(hi));
    b.lo_open.assign(b.lo.size(), true);
    b.hi_open.assign(b.lo.size(), true);
    return b;
}

bool BoxNeighborhood::contains(std::span<const double> p) const {
    if (p.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i)
        if (!face(i).contains(p[i])) return false;
    return true;
}

bool BoxNeighborhood::contains_box(const BoxNeighborhood& b) const {
    if (b.dim() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
        Interval outer = face(i), inner = b.face(i);
        if (inner.lo < outer.lo || (inner.lo == outer.lo && outer.lo_open && !inner.lo_open))
            return false;
        if (inner.hi > outer.hi || (inner.hi == outer.hi && outer.hi_open && !inner.hi_open))
            return false;
    }
    return true;
}

BoxNeighborhood BoxNeighborhood::shrunk(std::span<const double> center, double f) const {
    BoxNeighborhood b = *this;
    for (std::size_t i = 0; i < dim(); ++i) {
        b.lo[i] = center[i] + f * (lo[i] - center[i]);
        b.hi[i] = center[i] + f * (hi[i] - center[i]);
    }
    return b;
}

BoxNeighborhood BoxNeighborhood::closure() const {
    BoxNeighborhood b = *this;
    b.lo_open.assign(dim(), false);
    b.hi_open.assign(dim(), false);
    return b;
}

}  // namespace sojourn
