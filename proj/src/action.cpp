#include "sojourn/action.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/core.h>

namespace sojourn {

namespace {
constexpr double kPi = std::numbers::pi;
}

Component Component::sinusoid(double amplitude, double angular_rate, double phase,
                              double offset) {
    if (angular_rate == 0.0)
        throw std::invalid_argument("sinusoidal component with zero angular rate");
    Component c;
    c.kind = Kind::Sinusoidal;
    c.amplitude = amplitude;
    c.angular_rate = angular_rate;
    c.phase = phase;
    c.offset = offset;
    return c;
}

double Component::eval(double t) const {
    if (kind == Kind::Affine) return a + b * t;
    return offset + amplitude * std::sin(angular_rate * t + phase);
}

const Segment& Trajectory::segment_for(double t) const {
    for (const Segment& seg : segments)
        if (seg.domain.contains(t)) return seg;
    throw std::logic_error(fmt::format("trajectory '{}' has no segment at t={}", label, t));
}

std::vector<double> Trajectory::point_at(double t) const {
    const Segment& seg = segment_for(t);
    std::vector<double> p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = seg.components[i].eval(t);
    return p;
}

TrajectoryCheck validate_trajectory(const Trajectory& traj, double tol) {
    auto fail = [&](std::string msg) { return TrajectoryCheck{false, std::move(msg)}; };
    if (traj.segments.empty()) return fail("no segments");
    for (const Segment& seg : traj.segments) {
        if (seg.domain.empty()) return fail("empty segment domain");
        if (seg.components.size() != traj.dim) return fail("component count != dim");
        for (const Component& c : seg.components)
            if (c.kind == Component::Kind::Sinusoidal && c.angular_rate == 0.0)
                return fail("sinusoidal component with zero angular rate");
    }
    if (traj.segments.front().domain.lo != -kInf) return fail("first domain bounded below");
    if (traj.segments.back().domain.hi != kInf) return fail("last domain bounded above");
    for (std::size_t i = 0; i + 1 < traj.segments.size(); ++i) {
        const Segment& a = traj.segments[i];
        const Segment& b = traj.segments[i + 1];
        double t = a.domain.hi;
        if (t != b.domain.lo)
            return fail(fmt::format("gap between segments {} and {}", i, i + 1));
        if (a.domain.hi_open == b.domain.lo_open)
            return fail(fmt::format("junction at t={} covered {} times", t,
                                    a.domain.hi_open ? 0 : 2));
        for (std::size_t d = 0; d < traj.dim; ++d) {
            double va = a.components[d].eval(t);
            double vb = b.components[d].eval(t);
            if (std::abs(va - vb) > tol)
                return fail(fmt::format("discontinuity at t={}, coordinate {}: {} vs {}", t,
                                        d, va, vb));
        }
    }
    return {};
}

std::vector<InjectivityViolation> injectivity_probe(const Trajectory& traj, double grid_step,
                                                    double horizon) {
    struct Sample {
        std::vector<double> p;
        double t;
    };
    std::vector<Sample> samples;
    long count = std::lround(2.0 * horizon / grid_step);
    samples.reserve(count + 1);
    for (long i = 0; i <= count; ++i) {
        double t = -horizon + i * grid_step;
        samples.push_back({traj.point_at(t), t});
    }
    std::sort(samples.begin(), samples.end(),
              [](const Sample& a, const Sample& b) { return a.p < b.p; });

    std::vector<InjectivityViolation> report;
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        // compare forward while the leading coordinate stays within range
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
            if (samples[j].p[0] - samples[i].p[0] > 1e-9) break;
            double dist = 0.0;
            for (std::size_t d = 0; d < traj.dim; ++d)
                dist = std::max(dist, std::abs(samples[j].p[d] - samples[i].p[d]));
            if (dist <= 1e-9 && std::abs(samples[j].t - samples[i].t) > 1e-6)
                report.push_back({samples[i].t, samples[j].t, dist});
        }
    }
    return report;
}

namespace {

Segment line_segment(Interval domain, double x, double y_shift, double z = 0.0) {
    // vertical line x fixed, y = t + y_shift
    return {domain, {Component::constant(x), Component::affine(y_shift, 1.0),
                     Component::constant(z)}};
}

// Arc of radius n in the (y,z) plane traversed by s = t - t0 in [0,1],
// x moving affinely from x0 to x1: ((1-s)x0 + s*x1, n cos(pi s), n sin(pi s)).
Segment arc_segment(Interval domain, double t0, double x0, double x1, double radius) {
    double slope = x1 - x0;
    return {domain,
            {Component::affine(x0 - slope * t0, slope),
             Component::sinusoid(radius, kPi, kPi / 2.0 - kPi * t0),
             Component::sinusoid(radius, kPi, -kPi * t0)}};
}

Trajectory translation_line(std::string label, double x) {
    Trajectory z;
    z.label = std::move(label);
    z.dim = 3;
    z.segments = {line_segment(Interval::whole(), x, 0.0)};
    return z;
}

double dyadic_gap(int n) { return std::exp2(-2.0 * n); }

std::vector<double> fold_positions(double b_n, int L) {
    // b_n^j = b_n * 2^{-j/(L+1)}; strictly decreasing, stays above b_n / 2.
    std::vector<double> b(L + 1);
    for (int j = 0; j <= L; ++j) b[j] = b_n * std::exp2(-double(j) / (L + 1));
    return b;
}

Trajectory folded_orbit(int n, int L, double b_n) {
    Trajectory traj;
    traj.label = fmt::format("orbit-{}", n);
    traj.dim = 3;
    if (L == 0) {
        traj.segments = {line_segment(Interval::whole(), b_n, 0.0)};
        return traj;
    }
    std::vector<double> b = fold_positions(b_n, L);
    double period = 2.0 * n + 1.0;
    traj.segments.push_back(line_segment({-kInf, double(n), true, false}, b[0], 0.0));
    for (int j = 0; j < L; ++j) {
        double t0 = n + j * period;
        traj.segments.push_back(
            arc_segment(Interval::left_open(t0, t0 + 1.0), t0, b[j], b[j + 1], n));
        double shift = (j + 1) * period;
        Interval dom = j + 1 < L ? Interval::left_open(shift - n, shift + n)
                                 : Interval{shift - n, kInf, true, true};
        traj.segments.push_back(line_segment(dom, b[j + 1], -shift));
    }
    return traj;
}

BoxNeighborhood canonical_box(double x_lo, double x_hi, int m) {
    double w = std::exp2(-m);
    double h = std::exp2(-m - 1);
    return BoxNeighborhood::closed_box({x_lo, -h, -h}, {x_hi, h, h});
}

}  // namespace

Scenario make_rieffel(std::function<int(int)> repetition, std::function<double(int)> gap) {
    constexpr int kCheckHorizon = 64;
    double prev = kInf;
    for (int n = 1; n <= kCheckHorizon; ++n) {
        double b_n = gap(n);
        int L = repetition(n);
        if (L < 0) throw std::invalid_argument("repetition rule must be nonnegative");
        if (!(b_n > 0.0) || !(b_n < prev))
            throw std::invalid_argument("gap rule must be strictly decreasing and positive");
        if (L >= 1) {
            double b_last = fold_positions(b_n, L).back();
            if (!(b_last > gap(n + 1)))
                throw std::invalid_argument("fold positions must stay above the next gap");
        }
        prev = b_n;
    }
    Scenario sc;
    sc.name = "rieffel";
    sc.z = translation_line("z-line", 0.0);
    sc.orbit_at = [repetition, gap](int n) {
        return folded_orbit(n, repetition(n), gap(n));
    };
    sc.box_at = [](int m) {
        return canonical_box(0.0, std::exp2(-m), m);
    };
    sc.metadata = "folding example; gap and fold positions chosen dyadically";
    return sc;
}

Scenario make_rieffel(std::function<int(int)> repetition) {
    return make_rieffel(std::move(repetition), dyadic_gap);
}

namespace {

Trajectory splice_orbit(int n) {
    double b_n = std::exp2(-2.0 * n);
    double b1 = std::exp2(-(2.0 * n + 1.0));
    double a_n = 1.0 - std::exp2(-3.0 * n);
    double a1 = 1.0 - std::exp2(-(3.0 * n + 1.0));
    double a2 = 1.0 - std::exp2(-(3.0 * n + 2.0));

    Trajectory traj;
    traj.label = fmt::format("splice-orbit-{}", n);
    traj.dim = 3;
    auto ro = [](double lo, double hi) { return Interval::right_open(lo, hi); };

    traj.segments.push_back(
        line_segment({-kInf, -4.0 * n - 2.5, true, true}, a2, 5.0 * n + 2.5));
    traj.segments.push_back(
        arc_segment(ro(-4.0 * n - 2.5, -4.0 * n - 1.5), -4.0 * n - 2.5, a2, a1, n));
    traj.segments.push_back(
        line_segment(ro(-4.0 * n - 1.5, -2.0 * n - 1.5), a1, 3.0 * n + 1.5));
    traj.segments.push_back(
        arc_segment(ro(-2.0 * n - 1.5, -2.0 * n - 0.5), -2.0 * n - 1.5, a1, a_n, n));
    traj.segments.push_back(line_segment(ro(-2.0 * n - 0.5, -0.5), a_n, n + 0.5));
    // middle crossing: ( a_n + (u + 1/2)(b_n - a_n), -n sin(pi u), n cos(pi u) )
    traj.segments.push_back(
        {ro(-0.5, 0.5),
         {Component::affine(a_n + 0.5 * (b_n - a_n), b_n - a_n),
          Component::sinusoid(-double(n), kPi, 0.0),
          Component::sinusoid(n, kPi, kPi / 2.0)}});
    traj.segments.push_back(line_segment(ro(0.5, 2.0 * n + 0.5), b_n, -n - 0.5));
    traj.segments.push_back(
        arc_segment(ro(2.0 * n + 0.5, 2.0 * n + 1.5), 2.0 * n + 0.5, b_n, b1, n));
    traj.segments.push_back(
        line_segment({2.0 * n + 1.5, kInf, false, true}, b1, -3.0 * n - 1.5));
    return traj;
}

}  // namespace

std::pair<Scenario, Scenario> make_splice() {
    auto orbit = [](int n) { return splice_orbit(n); };

    Scenario x0;
    x0.name = "splice-x0";
    x0.z = translation_line("x0-line", 0.0);
    x0.orbit_at = orbit;
    x0.box_at = [](int m) { return canonical_box(0.0, std::exp2(-m), m); };
    x0.metadata = "two-limit example viewed from the x0-line";

    Scenario z0;
    z0.name = "splice-z0";
    z0.z = translation_line("z0-line", 1.0);
    z0.orbit_at = orbit;
    z0.box_at = [](int m) { return canonical_box(1.0 - std::exp2(-m), 1.0, m); };
    z0.metadata = "two-limit example viewed from the z0-line";

    return {std::move(x0), std::move(z0)};
}

Scenario make_kronecker(double slope) {
    for (int q = 1; q <= 100; ++q) {
        double p = std::round(slope * q);
        if (std::abs(slope - p / q) < 1e-12)
            throw std::invalid_argument(
                fmt::format("slope too close to the rational {}/{}", p, q));
    }
    Scenario sc;
    sc.name = "kronecker";
    sc.z.label = "torus-flow";
    sc.z.dim = 2;
    sc.z.segments = {{Interval::whole(),
                      {Component::affine(0.0, 1.0), Component::affine(0.0, slope)}}};
    sc.orbit_at = [z = sc.z](int) { return z; };
    sc.box_at = [](int m) {
        double h = std::exp2(-m - 1);
        return BoxNeighborhood::closed_box({-h, -h}, {h, h});
    };
    sc.windowed = true;
    sc.torus = true;
    sc.metadata = fmt::format("dense linear flow, slope {}", slope);
    return sc;
}

}  // namespace sojourn
