#include <doctest.h>

#include <cmath>

#include "sojourn/engine.hpp"

using namespace sojourn;

namespace {

constexpr double kTau = 2.0 * M_PI;

Trajectory one_dim(Component c) {
    Trajectory t;
    t.label = "probe";
    t.dim = 1;
    t.segments = {{Interval::whole(), {c}}};
    return t;
}

BoxNeighborhood box1(double lo, double hi) {
    return BoxNeighborhood::closed_box({lo}, {hi});
}

Scenario green() {
    return make_rieffel([](int) { return 1; });
}

}  // namespace

TEST_CASE("affine sojourn is a single exact interval") {
    Scenario g = green();
    for (int m = 1; m <= 8; ++m) {
        double h = std::exp2(-m - 1);
        IntervalSet s = sojourn_set(g.z, g.box_at(m));
        REQUIRE(s.size() == 1);
        CHECK(s.parts()[0] == Interval::closed(-h, h));
        CHECK(s.measure() == std::exp2(-m));  // exact in dyadic arithmetic
    }
}

TEST_CASE("folded orbit sojourn has one window per strand") {
    Scenario g = green();
    const int n = 4, m = 3;
    double h = std::exp2(-m - 1);
    double shift = 2.0 * n + 1.0;
    IntervalSet s = sojourn_set(g.orbit_at(n), g.box_at(m));
    REQUIRE(s.size() == 2);
    CHECK(s.parts()[0] == Interval::closed(-h, h));
    CHECK(s.parts()[1] == Interval::closed(shift - h, shift + h));
    CHECK(s.measure() == 2.0 * std::exp2(-m));

    // the joining arc stays at distance n from the flow axis, so it never
    // enters the shrinking boxes: shrinking m further never adds parts
    CHECK(sojourn_set(g.orbit_at(n), g.box_at(8)).size() == 2);

    // orbits whose strand abscissa exceeds the box width contribute nothing
    // beyond the first strand window
    CHECK(sojourn_set(g.orbit_at(1), g.box_at(8)).empty());
}

TEST_CASE("constant trajectory inside the box is flagged unbounded") {
    Trajectory c = one_dim(Component::constant(0.0));
    BoxNeighborhood box = box1(-1.0, 1.0);
    CHECK_THROWS_AS((void)sojourn_set(c, box), UnboundedSojourn);
    try {
        (void)sojourn_set(c, box);
    } catch (const UnboundedSojourn& e) {
        CHECK(e.certain);
    }
    CHECK(sojourn_measure(c, box) == kInf);
    CHECK(sojourn_measure(c, box, Interval::closed(0.0, 5.0)) == 5.0);
    // constant outside the box: empty, no window needed
    CHECK(sojourn_measure(c, box1(2.0, 3.0)) == 0.0);
}

TEST_CASE("sinusoidal branch solving") {
    Interval period = Interval::closed(0.0, kTau);

    Trajectory sine = one_dim(Component::sinusoid(1.0, 1.0, 0.0));
    // sin t in [1/2, 1] on one period: t in [pi/6, 5pi/6]
    double expect = 2.0 * M_PI / 3.0;
    CHECK(sojourn_measure(sine, box1(0.5, 1.0), period) == doctest::Approx(expect));
    // enclosing box captures the whole window
    CHECK(sojourn_measure(sine, box1(-2.0, 2.0), period) == doctest::Approx(kTau));
    // box touching only the peak has measure zero
    CHECK(sojourn_measure(sine, box1(1.0, 2.0), period) == 0.0);
    // disjoint box
    CHECK(sojourn_measure(sine, box1(1.5, 2.0), period) == 0.0);

    // sign/rate/offset normalizations all reduce to the same geometry
    CHECK(sojourn_measure(one_dim(Component::sinusoid(-1.0, 1.0, 0.0)), box1(0.5, 1.0),
                          period) == doctest::Approx(expect));
    CHECK(sojourn_measure(one_dim(Component::sinusoid(1.0, -1.0, 0.0)), box1(0.5, 1.0),
                          period) == doctest::Approx(expect));
    CHECK(sojourn_measure(one_dim(Component::sinusoid(1.0, 1.0, 0.0, 2.0)), box1(2.5, 3.0),
                          period) == doctest::Approx(expect));
    // doubled rate halves each visit but doubles the count
    CHECK(sojourn_measure(one_dim(Component::sinusoid(1.0, 2.0, 0.0)), box1(0.5, 1.0),
                          period) == doctest::Approx(expect));
}

TEST_CASE("exact measure matches the quadrature oracle") {
    Interval window = Interval::closed(-30.0, 30.0);
    const double step = 1e-4;
    Scenario g = green();
    auto [x0, z0] = make_splice();
    struct Probe {
        Trajectory traj;
        BoxNeighborhood box;
    };
    std::vector<Probe> probes = {
        {g.z, g.box_at(2)},
        {g.orbit_at(3), g.box_at(2)},
        {g.orbit_at(5), g.box_at(4)},
        {x0.orbit_at(2), x0.box_at(3)},
        {z0.orbit_at(2), z0.box_at(3)},
        {one_dim(Component::sinusoid(1.3, 0.7, 0.4)), box1(0.2, 0.9)},
    };
    for (const Probe& p : probes) {
        double exact = sojourn_measure(p.traj, p.box, window);
        double approx = quadrature_oracle(p.traj, p.box, window, step);
        CHECK(std::abs(exact - approx) <= 1e-3);
    }
}

TEST_CASE("torus wrap requires a window and matches the oracle") {
    Scenario sc = make_kronecker(std::sqrt(2.0) - 1.0);
    CHECK_THROWS_AS((void)sojourn_set(sc.z, sc.box_at(1), std::nullopt, true),
                    UnboundedSojourn);
    try {
        (void)sojourn_set(sc.z, sc.box_at(1), std::nullopt, true);
    } catch (const UnboundedSojourn& e) {
        CHECK(!e.certain);  // dense orbit: unbounded but not a constant segment
    }

    Interval window = Interval::closed(0.0, 100.0);
    for (int m : {1, 2, 3}) {
        IntervalSet exact_set = sojourn_set(sc.z, sc.box_at(m), window, true);
        double exact = exact_set.measure();
        double approx = quadrature_oracle(sc.z, sc.box_at(m), window, 1e-3, true);
        // each part boundary costs at most one grid step of quadrature error
        double tol = 1e-3 * (2.0 + 2.0 * exact_set.size());
        CHECK(std::abs(exact - approx) <= tol);
    }

    // equidistribution: time fraction approaches the box area
    Interval longwin = Interval::closed(0.0, 4000.0);
    double frac = sojourn_measure(sc.z, sc.box_at(1), longwin, true) / longwin.length();
    CHECK(frac == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("relative compactness probe separates the two regimes") {
    std::vector<double> horizons = {10.0, 50.0, 100.0, 200.0};
    Scenario g = green();
    auto rows = relative_compactness_probe(g.z, g.box_at, 3, horizons);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.bounded);
        CHECK(row.final_measure == std::exp2(-row.m));
        CHECK(row.growth_slope == doctest::Approx(0.0));
    }

    Scenario kron = make_kronecker(std::sqrt(2.0) - 1.0);
    std::vector<double> long_h = {100.0, 200.0, 400.0, 800.0};
    auto krows = relative_compactness_probe(kron.z, kron.box_at, 2, long_h, true);
    REQUIRE(krows.size() == 2);
    CHECK(!krows[0].bounded);
    CHECK(krows[0].growth_slope == doctest::Approx(0.25).epsilon(0.1));
    CHECK(!krows[1].bounded);
}

TEST_CASE("window clipping respects endpoints") {
    Scenario g = green();
    IntervalSet s = sojourn_set(g.z, g.box_at(3), Interval::closed(0.0, 10.0));
    REQUIRE(s.size() == 1);
    CHECK(s.parts()[0] == Interval::closed(0.0, std::exp2(-4)));
    CHECK(sojourn_set(g.z, g.box_at(3), Interval::closed(5.0, 10.0)).empty());
}
