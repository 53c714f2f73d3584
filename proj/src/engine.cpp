#include "sojourn/engine.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sojourn {

namespace {

constexpr double kPi = std::numbers::pi;

// Solutions of a + b*t in face, restricted to dom.
IntervalSet solve_affine(const Component& c, const Interval& face, const Interval& dom) {
    if (c.b == 0.0) {
        if (face.contains(c.a)) return IntervalSet{dom};
        return {};
    }
    Interval sol;
    if (c.b > 0.0) {
        sol = {(face.lo - c.a) / c.b, (face.hi - c.a) / c.b, face.lo_open, face.hi_open};
    } else {
        sol = {(face.hi - c.a) / c.b, (face.lo - c.a) / c.b, face.hi_open, face.lo_open};
    }
    if (sol.lo == -kInf) sol.lo_open = true;
    if (sol.hi == kInf) sol.hi_open = true;
    Interval clipped = intersect(sol, dom);
    if (clipped.empty()) return {};
    return IntervalSet{clipped};
}

struct SinTarget {
    double lo, hi;
    bool lo_open, hi_open;
};

// theta on the monotone branch k (theta in [k*pi - pi/2, k*pi + pi/2])
// with sin(theta) = x; x is clamped to [-1, 1].
double branch_theta(int k, double x) {
    double asx = std::asin(std::clamp(x, -1.0, 1.0));
    return k % 2 == 0 ? k * kPi + asx : k * kPi - asx;
}

// Solutions of offset + amplitude*sin(rate*t + phase) in face over the
// bounded interval dom, by enumerating monotone branches.
IntervalSet solve_sinusoid(Component c, const Interval& face, const Interval& dom) {
    if (c.angular_rate < 0.0) {  // A sin(wt+p) = (-A) sin(-wt - p)
        c.amplitude = -c.amplitude;
        c.angular_rate = -c.angular_rate;
        c.phase = -c.phase;
    }
    SinTarget tgt;
    if (c.amplitude > 0.0) {
        tgt = {(face.lo - c.offset) / c.amplitude, (face.hi - c.offset) / c.amplitude,
               face.lo_open, face.hi_open};
    } else if (c.amplitude < 0.0) {
        tgt = {(face.hi - c.offset) / c.amplitude, (face.lo - c.offset) / c.amplitude,
               face.hi_open, face.lo_open};
    } else {
        // degenerate constant
        return face.contains(c.offset) ? IntervalSet{dom} : IntervalSet{};
    }
    if (tgt.lo > 1.0 || tgt.hi < -1.0) return {};
    if (tgt.lo == 1.0 && tgt.lo_open) return {};
    if (tgt.hi == -1.0 && tgt.hi_open) return {};

    double theta_a = c.angular_rate * dom.lo + c.phase;
    double theta_b = c.angular_rate * dom.hi + c.phase;
    int k_lo = int(std::floor((theta_a + kPi / 2.0) / kPi)) - 1;
    int k_hi = int(std::ceil((theta_b + kPi / 2.0) / kPi)) + 1;

    std::vector<Interval> parts;
    for (int k = k_lo; k <= k_hi; ++k) {
        double th1, th2;
        bool open1, open2;
        bool even = (k % 2 == 0);
        if (even) {  // sin increasing on the branch
            th1 = branch_theta(k, tgt.lo);
            th2 = branch_theta(k, tgt.hi);
            open1 = tgt.lo_open && tgt.lo > -1.0;
            open2 = tgt.hi_open && tgt.hi < 1.0;
        } else {  // decreasing
            th1 = branch_theta(k, tgt.hi);
            th2 = branch_theta(k, tgt.lo);
            open1 = tgt.hi_open && tgt.hi < 1.0;
            open2 = tgt.lo_open && tgt.lo > -1.0;
        }
        if (th1 > th2) continue;
        Interval sol{(th1 - c.phase) / c.angular_rate, (th2 - c.phase) / c.angular_rate,
                     open1, open2};
        Interval clipped = intersect(sol, dom);
        if (!clipped.empty()) parts.push_back(clipped);
    }
    return IntervalSet(std::move(parts));
}

IntervalSet segment_solution(const Segment& seg, const BoxNeighborhood& box,
                             const Interval& dom) {
    IntervalSet sol{dom};
    for (std::size_t i = 0; i < box.dim() && !sol.empty(); ++i) {
        const Component& c = seg.components[i];
        IntervalSet coord;
        if (c.kind == Component::Kind::Affine) {
            coord = solve_affine(c, box.face(i), dom);
        } else {
            if (!dom.bounded()) throw UnboundedSojourn(false);
            coord = solve_sinusoid(c, box.face(i), dom);
        }
        sol = intersect(sol, coord);
    }
    return sol;
}

// Solutions of a + b*t in face + k for all integers k, restricted to the
// bounded interval dom.
IntervalSet solve_affine_mod1(const Component& c, const Interval& face, const Interval& dom) {
    if (c.b == 0.0) {
        double k = std::round(c.a - face.midpoint());
        for (double kk : {k - 1.0, k, k + 1.0})
            if (face.translated(kk).contains(c.a)) return IntervalSet{dom};
        return {};
    }
    double v1 = c.a + c.b * dom.lo;
    double v2 = c.a + c.b * dom.hi;
    double vmin = std::min(v1, v2), vmax = std::max(v1, v2);
    long k_lo = long(std::floor(vmin - face.hi)) - 1;
    long k_hi = long(std::ceil(vmax - face.lo)) + 1;
    std::vector<Interval> parts;
    for (long k = k_lo; k <= k_hi; ++k) {
        IntervalSet sol = solve_affine(c, face.translated(double(k)), dom);
        for (const Interval& p : sol.parts()) parts.push_back(p);
    }
    return IntervalSet(std::move(parts));
}

IntervalSet segment_solution_mod1(const Segment& seg, const BoxNeighborhood& box,
                                  const Interval& dom) {
    IntervalSet sol{dom};
    for (std::size_t i = 0; i < box.dim() && !sol.empty(); ++i) {
        const Component& c = seg.components[i];
        if (c.kind != Component::Kind::Affine)
            throw std::logic_error("wrap mode supports affine coordinates only");
        sol = intersect(sol, solve_affine_mod1(c, box.face(i), dom));
    }
    return sol;
}

}  // namespace

IntervalSet sojourn_set(const Trajectory& traj, const BoxNeighborhood& box,
                        std::optional<Interval> window, bool wrap) {
    if (box.dim() != traj.dim) throw std::invalid_argument("box dimension != trajectory dimension");
    if (wrap && (!window || !window->bounded())) throw UnboundedSojourn(false);
    IntervalSet result;
    for (const Segment& seg : traj.segments) {
        Interval dom = window ? intersect(seg.domain, *window) : seg.domain;
        if (dom.empty()) continue;
        IntervalSet sol =
            wrap ? segment_solution_mod1(seg, box, dom) : segment_solution(seg, box, dom);
        result = set_union(result, sol);
    }
    if (!window && !result.bounded()) throw UnboundedSojourn(true);
    return result;
}

double sojourn_measure(const Trajectory& traj, const BoxNeighborhood& box,
                       std::optional<Interval> window, bool wrap) {
    try {
        return sojourn_set(traj, box, window, wrap).measure();
    } catch (const UnboundedSojourn& e) {
        if (e.certain) return kInf;
        throw;
    }
}

double quadrature_oracle(const Trajectory& traj, const BoxNeighborhood& box, Interval window,
                         double step, bool wrap) {
    if (!window.bounded()) throw std::invalid_argument("quadrature_oracle needs a bounded window");
    if (!(step > 0.0)) throw std::invalid_argument("quadrature_oracle needs a positive step");
    long n = long(std::floor((window.hi - window.lo) / step));
    long count = 0;
    std::vector<double> p;
    for (long i = 0; i <= n; ++i) {
        double t = window.lo + i * step;
        p = traj.point_at(t);
        bool inside = true;
        for (std::size_t d = 0; d < box.dim() && inside; ++d) {
            double v = p[d];
            if (wrap) v -= std::round(v - box.face(d).midpoint());
            inside = box.face(d).contains(v);
        }
        count += inside;
    }
    return step * double(count);
}

std::vector<CompactnessRow> relative_compactness_probe(
    const Trajectory& traj, const std::function<BoxNeighborhood(int)>& box_at, int m_max,
    const std::vector<double>& horizons, bool wrap) {
    std::vector<CompactnessRow> rows;
    for (int m = 1; m <= m_max; ++m) {
        CompactnessRow row;
        row.m = m;
        BoxNeighborhood box = box_at(m);
        for (double T : horizons)
            row.measures.push_back(
                sojourn_measure(traj, box, Interval::closed(-T, T), wrap));
        row.final_measure = row.measures.back();
        if (row.measures.size() >= 2) {
            double d_mu = row.measures.back() - row.measures[row.measures.size() - 2];
            double d_len =
                2.0 * (horizons.back() - horizons[horizons.size() - 2]);
            row.bounded = std::abs(d_mu) <= 1e-9;
            row.growth_slope = d_len > 0.0 ? d_mu / d_len : 0.0;
        } else {
            row.bounded = true;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace sojourn
