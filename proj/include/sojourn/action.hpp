#ifndef SOJOURN_ACTION_HPP
#define SOJOURN_ACTION_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sojourn/geometry.hpp"

namespace sojourn {

/// One coordinate of a trajectory segment: either a + b*t or
/// offset + amplitude * sin(angular_rate * t + phase).
struct Component {
    enum class Kind { Affine, Sinusoidal };
    Kind kind = Kind::Affine;
    double a = 0.0, b = 0.0;
    double amplitude = 0.0, angular_rate = 0.0, phase = 0.0, offset = 0.0;

    static Component affine(double a, double b) {
        Component c;
        c.kind = Kind::Affine;
        c.a = a;
        c.b = b;
        return c;
    }
    static Component constant(double v) { return affine(v, 0.0); }
    static Component sinusoid(double amplitude, double angular_rate, double phase,
                              double offset = 0.0);

    double eval(double t) const;
};

struct Segment {
    Interval domain;
    std::vector<Component> components;
};

/// Piecewise parametrization t -> t.x of one orbit. Segment domains
/// partition the real line; the map is continuous at junctions and
/// point_at(0) is the base point of the orbit.
struct Trajectory {
    std::string label;
    std::size_t dim = 0;
    std::vector<Segment> segments;

    std::vector<double> point_at(double t) const;
    std::vector<double> base_point() const { return point_at(0.0); }
    const Segment& segment_for(double t) const;
};

/// Checks the Trajectory invariants: the domains partition R with matching
/// open/closed junction endpoints and the position is continuous across
/// each junction within tol.
struct TrajectoryCheck {
    bool ok = true;
    std::string message;
};
TrajectoryCheck validate_trajectory(const Trajectory& traj, double tol = 1e-9);

struct InjectivityViolation {
    double t1 = 0.0, t2 = 0.0;
    double distance = 0.0;
};

/// Samples a t-grid on [-horizon, horizon] and reports distinct parameters
/// (|t - t'| > 1e-6) whose positions coincide within 1e-9. An empty report
/// means no violation of freeness was found on the grid.
std::vector<InjectivityViolation> injectivity_probe(const Trajectory& traj, double grid_step,
                                                    double horizon);

/// A limit point z, an indexed family of nearby orbits, a shrinking box
/// family around z's base point, and the group exhaustion K_m = [-r_m, r_m].
struct Scenario {
    std::string name;
    Trajectory z;
    std::function<Trajectory(int)> orbit_at;          // n >= 1
    std::function<BoxNeighborhood(int)> box_at;       // m >= 1, nested decreasing
    std::function<double(int)> exhaustion_radius = [](int m) { return double(m); };
    bool windowed = false;   // sojourn sets may be unbounded; window required
    bool torus = false;      // coordinates live on R/Z; engine unwraps
    std::string metadata;
};

/// Repetition rule n -> L_n >= 0 and gap rule n -> b_n for the folding
/// example. The gap rule must be strictly decreasing, positive, with the
/// intermediate b_n^j staying above b_{n+1}.
Scenario make_rieffel(std::function<int(int)> repetition, std::function<double(int)> gap);
/// Default dyadic gap rule b_n = 2^{-2n}.
Scenario make_rieffel(std::function<int(int)> repetition);

/// The two-limit example: a shared orbit family converging to both the
/// x0-line {(0,s,0)} and the z0-line {(1,s,0)}. Returns {x0-view, z0-view}.
std::pair<Scenario, Scenario> make_splice();

/// Dense linear flow on the 2-torus with the given irrational slope; the
/// z-orbit is not locally closed, so every analysis must be windowed.
Scenario make_kronecker(double slope);

}  // namespace sojourn

#endif
