#include <doctest.h>

#include <cmath>

#include "sojourn/analysis.hpp"

using namespace sojourn;

namespace {

Scenario green() {
    return make_rieffel([](int) { return 1; });
}

AnalysisParams params(int n_max = 40, int m_max = 8) {
    AnalysisParams p;
    p.n_max = n_max;
    p.m_max = m_max;
    return p;
}

}  // namespace

TEST_CASE("ratio table for the single-fold scenario is exactly 2 in the tail") {
    RatioTable table = ratio_table(green(), params());
    CHECK(table.n_max == 40);
    CHECK(table.m_max == 8);
    for (int m = 1; m <= 8; ++m) {
        CHECK(table.at(1, m).nu_z == std::exp2(-m));
        // once b_n fits inside the box the two strand windows both count;
        // the dyadic choices make the ratio exactly 2, no rounding
        for (int n = 4; n <= 40; ++n) CHECK(table.at(n, m).ratio == 2.0);
    }
    // early rows miss the box entirely
    CHECK(table.at(1, 8).ratio == 0.0);
    std::vector<double> col = table.ratio_column(5);
    REQUIRE(col.size() == 40);
    CHECK(col[39] == 2.0);
}

TEST_CASE("tail estimation on synthetic sequences") {
    std::vector<double> alternating;
    for (int n = 1; n <= 30; ++n) alternating.push_back(n % 2 == 1 ? 1.0 : 2.0);
    TailEstimate t = tail_estimate(alternating, 10);
    CHECK(t.liminf_est == 1.0);
    CHECK(t.limsup_est == 2.0);
    CHECK(t.stabilized);
    CHECK(!t.growing);

    std::vector<double> rising;
    for (int n = 1; n <= 30; ++n) rising.push_back(double(n));
    TailEstimate r = tail_estimate(rising, 10);
    CHECK(r.growing);
    CHECK(r.limsup_est == 30.0);

    std::vector<double> settled(30, 3.0);
    settled[0] = 99.0;  // transient before the tail
    TailEstimate s = tail_estimate(settled, 5);
    CHECK(s.liminf_est == 3.0);
    CHECK(s.limsup_est == 3.0);
    CHECK(s.stabilized);
}

TEST_CASE("multiplicity extraction across the gallery") {
    SUBCASE("single fold: strength exactly 2") {
        MultiplicityReport rep = multiplicity_report(green(), params());
        CHECK(rep.M_L == Multiplicity{false, 2});
        CHECK(rep.M_U == Multiplicity{false, 2});
        CHECK(rep.r_star_lower == 2.0);
        CHECK(rep.quantization_residual == 0.0);
        CHECK(rep.stabilized);
        CHECK(!rep.extrapolated);
    }
    SUBCASE("no folds: plain convergence, strength 1") {
        MultiplicityReport rep =
            multiplicity_report(make_rieffel([](int) { return 0; }), params());
        CHECK(rep.M_L == Multiplicity{false, 1});
        CHECK(rep.M_U == Multiplicity{false, 1});
    }
    SUBCASE("alternating folds split liminf from limsup") {
        Scenario alt = make_rieffel([](int n) { return n % 2 == 1 ? 1 : 2; });
        MultiplicityReport rep = multiplicity_report(alt, params());
        CHECK(rep.M_L == Multiplicity{false, 2});
        CHECK(rep.M_U == Multiplicity{false, 3});
        CHECK(lower_multiplicity(alt, params()).M_L.value == 2);
        CHECK(upper_multiplicity(alt, params()).M_U.value == 3);
    }
    SUBCASE("growing folds extrapolate to infinite strength") {
        Scenario grow = make_rieffel([](int n) { return n; });
        MultiplicityReport rep = multiplicity_report(grow, params(30, 6));
        CHECK(rep.M_L.infinite);
        CHECK(rep.M_U.infinite);
        CHECK(rep.extrapolated);
    }
    SUBCASE("two-limit example: 2 at one line, 3 at the other") {
        auto [x0, z0] = make_splice();
        MultiplicityReport rx = multiplicity_report(x0, params());
        CHECK(rx.M_L == Multiplicity{false, 2});
        CHECK(rx.M_U == Multiplicity{false, 2});
        MultiplicityReport rz = multiplicity_report(z0, params());
        CHECK(rz.M_L == Multiplicity{false, 3});
        CHECK(rz.M_U == Multiplicity{false, 3});
    }
    SUBCASE("constant fold sweep: strength is the strand count") {
        for (int c = 0; c <= 5; ++c) {
            MultiplicityReport rep =
                multiplicity_report(make_rieffel([c](int) { return c; }), params());
            CHECK(rep.M_L == Multiplicity{false, c + 1});
            CHECK(rep.M_U == Multiplicity{false, c + 1});
        }
    }
}

TEST_CASE("quantization residual vanishes on the locally closed gallery") {
    for (Scenario sc : {green(), make_rieffel([](int) { return 0; }),
                        make_splice().first, make_splice().second}) {
        MultiplicityReport rep = multiplicity_report(sc, params());
        CHECK(quantization_check(rep) < 1e-6);
    }
}

TEST_CASE("dense limit orbit raises the locally-closed violation") {
    Scenario kron = make_kronecker(std::sqrt(2.0) - 1.0);
    AnalysisParams p = params(5, 3);
    CHECK_THROWS_AS((void)ratio_table(kron, p), LocallyClosedViolation);
    // a window does not mask the violation: the true sojourn set is tested
    p.window = Interval::closed(-100.0, 100.0);
    CHECK_THROWS_AS((void)multiplicity_report(kron, p), LocallyClosedViolation);
    try {
        (void)ratio_table(kron, p);
    } catch (const LocallyClosedViolation& e) {
        CHECK(e.m >= 1);
    }
}

TEST_CASE("ratio table agrees with a windowed quadrature cross-check") {
    Scenario g = green();
    RatioTable table = ratio_table(g, params(8, 3));
    Interval window = Interval::closed(-60.0, 60.0);
    for (int n : {4, 6, 8}) {
        for (int m : {1, 2, 3}) {
            double nu_n = quadrature_oracle(g.orbit_at(n), g.box_at(m), window, 1e-4);
            double nu_z = quadrature_oracle(g.z, g.box_at(m), window, 1e-4);
            CHECK(std::abs(table.at(n, m).ratio - nu_n / nu_z) < 1e-2);
        }
    }
}

TEST_CASE("neighborhood refinement shrinks without losing sojourn mass") {
    Scenario g = green();
    for (int m : {1, 3}) {
        BoxNeighborhood box = g.box_at(m);
        double gamma = 0.01 * std::exp2(-m);
        BoxNeighborhood inner = refine_neighborhood(g.z, box, gamma);
        CHECK(box.contains_box(inner.closure()));
        double outer_mass = sojourn_measure(g.z, box);
        double inner_mass = sojourn_measure(g.z, inner.closure());
        CHECK(outer_mass - inner_mass < gamma);
        CHECK(outer_mass - inner_mass >= 0.0);
    }
}

TEST_CASE("ratio cap converts runaway ratios to infinity") {
    // shrink the cap below the true ratio and the report flags infinity
    Scenario g = green();
    AnalysisParams p = params();
    p.ratio_cap = 1.5;
    MultiplicityReport rep = multiplicity_report(g, p);
    CHECK(rep.M_L.infinite);
}
