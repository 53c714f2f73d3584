#ifndef SOJOURN_ENGINE_HPP
#define SOJOURN_ENGINE_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "sojourn/action.hpp"
#include "sojourn/geometry.hpp"

namespace sojourn {

/// The sojourn set is unbounded and no window was supplied. `certain`
/// distinguishes a provably infinite set (a half-infinite segment lying
/// constantly inside the box) from one the engine merely cannot enumerate.
struct UnboundedSojourn : std::runtime_error {
    explicit UnboundedSojourn(bool certain_infinite)
        : std::runtime_error(certain_infinite ? "sojourn set is unbounded"
                                              : "sojourn set cannot be bounded without a window"),
          certain(certain_infinite) {}
    bool certain;
};

/// Exact set {t : t.x in box}. Affine coordinates invert to linear
/// inequality intervals; sinusoidal coordinates are solved by monotone
/// branch enumeration with one guarded arcsine per branch endpoint. When a
/// window is given the result is clipped to it; `wrap` treats every
/// coordinate modulo 1 (requires a bounded window and affine coordinates).
IntervalSet sojourn_set(const Trajectory& traj, const BoxNeighborhood& box,
                        std::optional<Interval> window = std::nullopt, bool wrap = false);

/// measure(sojourn_set(...)); +inf instead of throwing when the set is
/// provably infinite.
double sojourn_measure(const Trajectory& traj, const BoxNeighborhood& box,
                       std::optional<Interval> window = std::nullopt, bool wrap = false);

/// Riemann-sum estimate: step times the number of grid points of the window
/// whose trajectory position lies in the box. Independent of the exact path.
double quadrature_oracle(const Trajectory& traj, const BoxNeighborhood& box, Interval window,
                         double step, bool wrap = false);

struct CompactnessRow {
    int m = 0;
    bool bounded = false;
    double final_measure = 0.0;
    double growth_slope = 0.0;  // d measure / d (window length) between the last horizons
    std::vector<double> measures;
};

/// For each box index, measures the windowed sojourn set of traj over
/// [-T, T] for each horizon T and reports whether it has stopped growing.
std::vector<CompactnessRow> relative_compactness_probe(
    const Trajectory& traj, const std::function<BoxNeighborhood(int)>& box_at, int m_max,
    const std::vector<double>& horizons, bool wrap = false);

}  // namespace sojourn

#endif
