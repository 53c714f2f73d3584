#ifndef SOJOURN_VERIFY_SUITE_HPP
#define SOJOURN_VERIFY_SUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sojourn/analysis.hpp"
#include "sojourn/witness.hpp"

namespace sojourn {

struct SuiteItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Seeded random compact boxes near a trajectory's range, for comparing
/// the exact sojourn measure against the quadrature oracle.
std::vector<BoxNeighborhood> random_probe_boxes(const Trajectory& traj, int count,
                                                std::uint64_t seed, bool wrap);

/// Exact-vs-oracle agreement on `count` random boxes; tolerance is
/// step * (2 + number of parts) per box, floored at `tol_floor`.
SuiteItem oracle_agreement_item(const Trajectory& traj, int count, std::uint64_t seed,
                                Interval window, double step, bool wrap,
                                double tol_floor = 0.0);

/// The full cross-check suite for one scenario: trajectory invariants,
/// oracle agreement, quantization, witness round-trip, excision samples,
/// and the liminf/limsup cross-implications. Windowed scenarios get the
/// growth and self-convergence items instead of the ratio-based ones.
std::vector<SuiteItem> run_verify_suite(const Scenario& sc, const AnalysisParams& params,
                                        std::uint64_t seed);

}  // namespace sojourn

#endif
