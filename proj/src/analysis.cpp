#include "sojourn/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace sojourn {

namespace {
constexpr double kFloorTol = 1e-6;
constexpr double kStabilityTol = 1e-9;
constexpr int kStabilityShift = 2;
}  // namespace

const RatioRow& RatioTable::at(int n, int m) const {
    std::size_t idx = std::size_t(n - 1) * m_max + (m - 1);
    return rows.at(idx);
}

std::vector<double> RatioTable::ratio_column(int m) const {
    std::vector<double> col;
    col.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) col.push_back(at(n, m).ratio);
    return col;
}

RatioTable ratio_table(const Scenario& sc, const AnalysisParams& params) {
    RatioTable table;
    table.n_max = params.n_max;
    table.m_max = params.m_max;

    std::vector<double> nu_z(params.m_max + 1, 0.0);
    for (int m = 1; m <= params.m_max; ++m) {
        // The locally-closed test is about the true sojourn set, so no
        // window here: a dense limit orbit must fail even when the caller
        // supplies one.
        try {
            nu_z[m] = sojourn_measure(sc.z, sc.box_at(m), std::nullopt, sc.torus);
        } catch (const UnboundedSojourn&) {
            throw LocallyClosedViolation(m);
        }
        if (!(nu_z[m] < kInf) || !(nu_z[m] > 0.0)) throw LocallyClosedViolation(m);
    }

    for (int n = 1; n <= params.n_max; ++n) {
        Trajectory orbit = sc.orbit_at(n);
        for (int m = 1; m <= params.m_max; ++m) {
            RatioRow row;
            row.n = n;
            row.m = m;
            row.nu_z = nu_z[m];
            row.nu_n = sojourn_measure(orbit, sc.box_at(m), params.window, sc.torus);
            row.ratio = row.nu_n == kInf ? kInf : row.nu_n / row.nu_z;
            table.rows.push_back(row);
        }
    }
    return table;
}

TailEstimate tail_estimate(const std::vector<double>& ratios, int tail_start) {
    TailEstimate est;
    est.tail_start = tail_start;
    int n_max = int(ratios.size());
    auto window_min_max = [&](int start) {
        double lo = kInf, hi = -kInf;
        for (int n = start; n <= n_max; ++n) {
            lo = std::min(lo, ratios[n - 1]);
            hi = std::max(hi, ratios[n - 1]);
        }
        return std::pair{lo, hi};
    };
    auto [lo, hi] = window_min_max(std::min(tail_start, n_max));
    est.liminf_est = lo;
    est.limsup_est = hi;
    if (tail_start + kStabilityShift <= n_max) {
        auto [lo2, hi2] = window_min_max(tail_start + kStabilityShift);
        est.stabilized =
            std::abs(lo - lo2) <= kStabilityTol && std::abs(hi - hi2) <= kStabilityTol;
    }
    est.growing = true;
    for (int n = std::min(tail_start, n_max); n < n_max && est.growing; ++n)
        est.growing = ratios[n] > ratios[n - 1] + kStabilityTol;
    if (tail_start >= n_max) est.growing = false;
    return est;
}

MultiplicityReport multiplicity_report(const Scenario& sc, const AnalysisParams& params) {
    AnalysisParams p = params;
    if (p.tail_start <= 0) p.tail_start = p.m_max;

    MultiplicityReport rep;
    rep.table = ratio_table(sc, p);
    rep.tail_start = p.tail_start;

    rep.r_star_lower = kInf;
    rep.r_star_upper = kInf;
    rep.stabilized = true;
    bool all_growing = true;
    for (int m = 1; m <= p.m_max; ++m) {
        TailEstimate est = tail_estimate(rep.table.ratio_column(m), p.tail_start);
        rep.r_star_lower = std::min(rep.r_star_lower, est.liminf_est);
        rep.r_star_upper = std::min(rep.r_star_upper, est.limsup_est);
        rep.stabilized = rep.stabilized && est.stabilized;
        all_growing = all_growing && est.growing;
        rep.per_m.push_back(est);
    }

    auto extract = [&](double r_star) {
        Multiplicity mult;
        if (r_star == kInf || r_star > p.ratio_cap) {
            mult.infinite = true;
        } else {
            mult.value = long(std::floor(r_star + kFloorTol));
        }
        return mult;
    };
    rep.M_L = extract(rep.r_star_lower);
    rep.M_U = extract(rep.r_star_upper);
    // Ratios still climbing through the end of every column: the finite
    // floor undersells the limit, so report infinite and flag it.
    if (all_growing && !rep.M_U.infinite) {
        rep.M_U.infinite = true;
        rep.extrapolated = true;
    }
    if (all_growing && !rep.M_L.infinite) {
        bool mins_growing = true;
        for (const TailEstimate& est : rep.per_m)
            mins_growing = mins_growing && est.growing;
        if (mins_growing) {
            rep.M_L.infinite = true;
            rep.extrapolated = true;
        }
    }
    if (!rep.M_L.infinite && std::isfinite(rep.r_star_lower))
        rep.quantization_residual =
            std::abs(rep.r_star_lower - std::round(rep.r_star_lower));
    return rep;
}

MultiplicityReport lower_multiplicity(const Scenario& sc, const AnalysisParams& params) {
    return multiplicity_report(sc, params);
}

MultiplicityReport upper_multiplicity(const Scenario& sc, const AnalysisParams& params) {
    return multiplicity_report(sc, params);
}

double quantization_check(const MultiplicityReport& report) {
    return report.quantization_residual;
}

BoxNeighborhood refine_neighborhood(const Trajectory& traj_z, const BoxNeighborhood& box,
                                    double gamma) {
    double nu = sojourn_measure(traj_z, box);
    if (!(nu > 0.0) || !(nu < kInf))
        throw std::invalid_argument("refine_neighborhood: z-sojourn must be bounded positive");
    if (!(gamma > 0.0) || gamma >= nu)
        throw std::invalid_argument("refine_neighborhood: need 0 < gamma < z-sojourn measure");

    std::vector<double> center = traj_z.base_point();
    double f = 0.5;
    for (int iter = 0; iter < 64; ++iter) {
        BoxNeighborhood candidate = box.shrunk(center, f);
        BoxNeighborhood cl = candidate.closure();
        if (box.contains_box(cl) && nu - sojourn_measure(traj_z, cl) < gamma)
            return candidate;
        f = 0.5 * (f + 1.0);
        if (f >= 1.0) break;
    }
    throw NoRefinement();
}

}  // namespace sojourn
