#include "sojourn/verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/core.h>

namespace sojourn {

std::vector<BoxNeighborhood> random_probe_boxes(const Trajectory& traj, int count,
                                                std::uint64_t seed, bool wrap) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> t_dist(-50.0, 50.0);
    std::uniform_real_distribution<double> jitter(-0.2, 0.2);
    std::uniform_real_distribution<double> half_width(0.05, wrap ? 0.4 : 0.5);
    std::bernoulli_distribution coin(0.5);

    std::vector<BoxNeighborhood> boxes;
    boxes.reserve(count);
    for (int i = 0; i < count; ++i) {
        std::vector<double> center = traj.point_at(t_dist(rng));
        std::vector<double> lo(traj.dim), hi(traj.dim);
        for (std::size_t d = 0; d < traj.dim; ++d) {
            double c = center[d] + jitter(rng);
            double h = half_width(rng);
            lo[d] = c - h;
            hi[d] = c + h;
        }
        BoxNeighborhood box = BoxNeighborhood::closed_box(std::move(lo), std::move(hi));
        for (std::size_t d = 0; d < traj.dim; ++d) {
            box.lo_open[d] = coin(rng);
            box.hi_open[d] = coin(rng);
        }
        boxes.push_back(std::move(box));
    }
    return boxes;
}

SuiteItem oracle_agreement_item(const Trajectory& traj, int count, std::uint64_t seed,
                                Interval window, double step, bool wrap, double tol_floor) {
    SuiteItem item{fmt::format("oracle-agreement[{}]", traj.label), true, ""};
    double worst = 0.0;
    for (const BoxNeighborhood& box : random_probe_boxes(traj, count, seed, wrap)) {
        IntervalSet exact = sojourn_set(traj, box, window, wrap);
        double mu = exact.measure();
        double est = quadrature_oracle(traj, box, window, step, wrap);
        double tol = std::max(tol_floor, step * (2.0 + double(exact.size())));
        double err = std::abs(mu - est);
        worst = std::max(worst, err);
        if (err > tol) {
            item.pass = false;
            item.detail = fmt::format("exact {} vs oracle {} (tol {})", mu, est, tol);
            return item;
        }
    }
    item.detail = fmt::format("worst deviation {}", worst);
    return item;
}

namespace {

SuiteItem trajectory_invariants(const Scenario& sc, int n_max) {
    SuiteItem item{"trajectory-invariants", true, ""};
    auto check = [&](const Trajectory& traj) {
        TrajectoryCheck c = validate_trajectory(traj);
        if (!c.ok) {
            item.pass = false;
            item.detail = fmt::format("{}: {}", traj.label, c.message);
        }
    };
    check(sc.z);
    for (int n : {1, 2, 3, std::max(4, n_max)})
        if (item.pass) check(sc.orbit_at(n));

    if (item.pass) {
        std::vector<double> base = sc.z.base_point();
        for (int m = 1; m <= 6 && item.pass; ++m) {
            BoxNeighborhood outer = sc.box_at(m), inner = sc.box_at(m + 1);
            if (!outer.contains_box(inner)) {
                item.pass = false;
                item.detail = fmt::format("box family not nested at m={}", m);
            } else if (!sc.torus && !outer.contains(base)) {
                item.pass = false;
                item.detail = fmt::format("box m={} misses the base point", m);
            }
        }
    }
    return item;
}

SuiteItem quantization_item(const MultiplicityReport& rep) {
    SuiteItem item{"quantization", true, ""};
    if (rep.M_L.infinite) {
        item.detail = "skipped (infinite multiplicity)";
        return item;
    }
    item.pass = rep.quantization_residual < 1e-6;
    item.detail = fmt::format("residual {}", rep.quantization_residual);
    return item;
}

SuiteItem witness_roundtrip(const Scenario& sc, const MultiplicityReport& rep, int n_max,
                            int m_max) {
    SuiteItem item{"witness-roundtrip", true, ""};
    if (rep.M_L.infinite) {
        item.detail = "skipped (infinite multiplicity)";
        return item;
    }
    for (long k = 1; k <= rep.M_L.value && item.pass; ++k) {
        try {
            Witness w = construct_witness(sc, int(k), n_max, m_max);
            WitnessVerdict v = verify_witness(sc, w);
            if (!v.pass) {
                item.pass = false;
                item.detail = fmt::format("k={}: {}", k, v.message);
            }
        } catch (const WitnessExhausted& e) {
            item.pass = false;
            item.detail = fmt::format("k={}: exhausted at n={}", k, e.n);
        }
    }
    if (item.pass) item.detail = fmt::format("k=1..{}", rep.M_L.value);
    return item;
}

SuiteItem excision_item(const Scenario& sc, int n_max) {
    SuiteItem item{"excision-samples", true, ""};
    for (int m : {1, 2}) {
        int n = std::min(n_max, std::max(10, 2 * m + 6));
        ExcisionVerdict v = excision_check(sc, n, m, 0.1, 50);
        if (!v.pass) {
            item.pass = false;
            item.detail =
                fmt::format("n={}, m={}: {} failing samples", n, m, v.failures.size());
            return item;
        }
    }
    return item;
}

SuiteItem cross_implications(const MultiplicityReport& rep) {
    SuiteItem item{"liminf-limsup-consistency", true, ""};
    auto leq = [](const Multiplicity& a, const Multiplicity& b) {
        if (b.infinite) return true;
        if (a.infinite) return false;
        return a.value <= b.value;
    };
    if (!leq(rep.M_L, rep.M_U)) {
        item.pass = false;
        item.detail = "M_L exceeds M_U";
        return item;
    }
    // The strict form of the basic-family condition: a lower multiplicity
    // of k forces every per-box tail liminf strictly above k-1.
    if (!rep.M_L.infinite && rep.M_L.value >= 1) {
        for (std::size_t i = 0; i < rep.per_m.size(); ++i) {
            if (!(rep.per_m[i].liminf_est > double(rep.M_L.value - 1) + 1e-9)) {
                item.pass = false;
                item.detail = fmt::format("tail liminf at m={} not strictly above {}", i + 1,
                                          rep.M_L.value - 1);
                return item;
            }
        }
    }
    return item;
}

std::vector<SuiteItem> windowed_suite(const Scenario& sc, std::uint64_t seed) {
    std::vector<SuiteItem> items;
    items.push_back(trajectory_invariants(sc, 1));

    SuiteItem locality{"locally-closed-violation", true, ""};
    try {
        ratio_table(sc, AnalysisParams{.n_max = 1, .m_max = 1});
        locality.pass = false;
        locality.detail = "ratio table unexpectedly succeeded on a dense orbit";
    } catch (const LocallyClosedViolation&) {
    }
    items.push_back(locality);

    SuiteItem growth{"windowed-growth", true, ""};
    double T = 1000.0;
    double mu1 = sojourn_measure(sc.z, sc.box_at(1), Interval::closed(-T, T), sc.torus);
    double mu2 =
        sojourn_measure(sc.z, sc.box_at(1), Interval::closed(-2 * T, 2 * T), sc.torus);
    double ratio = mu1 > 0.0 ? mu2 / mu1 : 0.0;
    growth.pass = std::abs(ratio - 2.0) <= 0.2;
    growth.detail = fmt::format("measure doubling ratio {}", ratio);
    items.push_back(growth);

    SuiteItem self_w{"self-convergence-witness", true, ""};
    try {
        Witness w = self_convergence_witness(sc, 3, {1e2, 1e3, 1e4, 1e5});
        WitnessVerdict v = verify_witness(sc, w);
        self_w.pass = v.pass;
        self_w.detail = v.message;
    } catch (const HorizonTooSmall& e) {
        self_w.pass = false;
        self_w.detail = fmt::format("horizon too small at m={}", e.m);
    }
    items.push_back(self_w);

    items.push_back(oracle_agreement_item(sc.z, 10, seed, Interval::closed(-200.0, 200.0),
                                          1e-3, sc.torus, 1e-2));
    return items;
}

}  // namespace

std::vector<SuiteItem> run_verify_suite(const Scenario& sc, const AnalysisParams& params,
                                        std::uint64_t seed) {
    if (sc.windowed) return windowed_suite(sc, seed);

    std::vector<SuiteItem> items;
    items.push_back(trajectory_invariants(sc, params.n_max));

    MultiplicityReport rep = multiplicity_report(sc, params);
    items.push_back(quantization_item(rep));
    items.push_back(cross_implications(rep));
    items.push_back(witness_roundtrip(sc, rep, params.n_max, params.m_max));
    items.push_back(excision_item(sc, params.n_max));

    Interval window = Interval::closed(-200.0, 200.0);
    items.push_back(oracle_agreement_item(sc.z, 10, seed, window, 1e-3, false));
    items.push_back(oracle_agreement_item(sc.orbit_at(2), 10, seed + 1, window, 1e-3, false));
    return items;
}

}  // namespace sojourn
