#ifndef SOJOURN_ANALYSIS_HPP
#define SOJOURN_ANALYSIS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sojourn/action.hpp"
#include "sojourn/engine.hpp"

namespace sojourn {

/// Some box in the family has an unbounded z-sojourn set: the limit orbit
/// is not locally closed and ratio analysis is meaningless. Use the
/// windowed diagnostics instead.
struct LocallyClosedViolation : std::runtime_error {
    explicit LocallyClosedViolation(int m_arg)
        : std::runtime_error("z-sojourn set unbounded; limit orbit not locally closed"),
          m(m_arg) {}
    int m;
};

struct NoRefinement : std::runtime_error {
    NoRefinement() : std::runtime_error("neighborhood refinement bisection exhausted") {}
};

struct RatioRow {
    int n = 0;
    int m = 0;
    double nu_n = 0.0;   // may be +inf
    double nu_z = 0.0;   // > 0
    double ratio = 0.0;  // nu_n / nu_z, +inf propagates
};

struct RatioTable {
    std::vector<RatioRow> rows;  // sorted by (n, m)
    int n_max = 0, m_max = 0;

    const RatioRow& at(int n, int m) const;
    /// Ratio column for fixed m, indexed by n = 1..n_max.
    std::vector<double> ratio_column(int m) const;
};

struct TailEstimate {
    double liminf_est = 0.0;
    double limsup_est = 0.0;
    int tail_start = 0;
    bool stabilized = false;  // estimates unchanged when the tail start is advanced
    bool growing = false;     // values still strictly increasing through the tail
};

/// Integer multiplicity, possibly infinite.
struct Multiplicity {
    bool infinite = false;
    long value = 0;
    bool operator==(const Multiplicity&) const = default;
};

struct MultiplicityReport {
    double r_star_lower = 0.0;  // min over m of tail liminf of the ratio column
    double r_star_upper = 0.0;  // min over m of tail limsup
    Multiplicity M_L, M_U;
    bool extrapolated = false;  // infinite value inferred from monotone growth
    double quantization_residual = 0.0;
    bool stabilized = false;
    int tail_start = 0;
    std::vector<TailEstimate> per_m;  // index m-1
    RatioTable table;
};

struct AnalysisParams {
    int n_max = 40;
    int m_max = 8;
    int tail_start = 0;  // 0: default to m_max
    std::optional<Interval> window;
    double ratio_cap = 1e6;  // ratios beyond this count as infinite
};

/// Sojourn-measure ratio of every orbit n <= n_max against the limit orbit
/// for every box m <= m_max. Throws LocallyClosedViolation if any box has
/// an unbounded z-sojourn set.
RatioTable ratio_table(const Scenario& sc, const AnalysisParams& params);

/// Tail min/max of a ratio column over [tail_start, n_max], with a
/// two-window stabilization flag.
TailEstimate tail_estimate(const std::vector<double>& ratios, int tail_start);

/// Full report: tail estimates per m, r_star values, floor-extracted
/// integer multiplicities and the quantization residual.
MultiplicityReport multiplicity_report(const Scenario& sc, const AnalysisParams& params);

/// The liminf side of the report (same computation, named per the
/// characterization it implements).
MultiplicityReport lower_multiplicity(const Scenario& sc, const AnalysisParams& params);
/// The limsup side.
MultiplicityReport upper_multiplicity(const Scenario& sc, const AnalysisParams& params);

/// |r_star_lower - round(r_star_lower)|; the ratio limits quantize to
/// integers, so this vanishes as the box family shrinks.
double quantization_check(const MultiplicityReport& report);

/// Strictly smaller concentric box V1 with closure inside box and
/// measure(z-sojourn of box) - measure(z-sojourn of closure(V1)) < gamma.
BoxNeighborhood refine_neighborhood(const Trajectory& traj_z, const BoxNeighborhood& box,
                                    double gamma);

}  // namespace sojourn

#endif
