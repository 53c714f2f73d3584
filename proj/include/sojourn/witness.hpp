#ifndef SOJOURN_WITNESS_HPP
#define SOJOURN_WITNESS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sojourn/action.hpp"
#include "sojourn/engine.hpp"

namespace sojourn {

/// k translate sequences certifying strength-k convergence: at index n the
/// k picks lie in the sojourn set of box m(n) and are pairwise at least
/// `separation` apart. The box schedule is nondecreasing.
struct Witness {
    int k = 1;
    bool self = false;  // translates act on the limit orbit itself
    struct Entry {
        int n = 0;
        int m = 0;
        std::vector<double> translates;
        double separation = 0.0;
    };
    std::vector<Entry> entries;
};

/// Greedy subtraction emptied the sojourn set before k picks: the measure
/// hypothesis fails at this index.
struct WitnessExhausted : std::runtime_error {
    WitnessExhausted(int n_arg, int picks_arg)
        : std::runtime_error("sojourn set exhausted before k picks"), n(n_arg), picks(picks_arg) {}
    int n;
    int picks;
};

struct HorizonTooSmall : std::runtime_error {
    explicit HorizonTooSmall(int m_arg)
        : std::runtime_error("window too small for the requested number of returns"), m(m_arg) {}
    int m;
};

/// Greedy selection: repeatedly take the midpoint of the leftmost interval
/// and excise the closed ball of the given radius around it. Returns the
/// picks made; fewer than k means the set ran out.
std::vector<double> pick_translates(IntervalSet sojourn, int k, double radius);

/// Builds a witness for k-times convergence over n <= n_max. With
/// `subsequence` only indices whose sojourn measure supports k strands are
/// used (the limsup route); otherwise the box schedule requires the
/// measure condition on a whole suffix of indices.
Witness construct_witness(const Scenario& sc, int k, int n_max, int m_max,
                          bool subsequence = false);

struct WitnessVerdict {
    bool pass = true;
    std::string message;
    int fail_n = -1, fail_i = -1, fail_j = -1;
};

/// Re-checks a witness against the scenario: every translate lands in its
/// scheduled box, pairwise gaps meet the recorded separation and the
/// exhaustion radius of the scheduled box, the gap sequence is monotone,
/// and the box schedule is nondecreasing.
WitnessVerdict verify_witness(const Scenario& sc, const Witness& w, double tol = 1e-9);

/// For a limit orbit that is not locally closed: picks k returns of z
/// itself to each box, pairwise separated by the exhaustion radius, using
/// windowed sojourn sets with the given horizon schedule (box index m runs
/// over the schedule).
Witness self_convergence_witness(const Scenario& sc, int k,
                                 const std::vector<double>& horizons);

struct ExcisionSample {
    double s = 0.0;
    bool ok = false;
    double r = 0.0;  // witnessing translate when ok
};

struct ExcisionVerdict {
    bool pass = true;
    int samples = 0;
    std::vector<ExcisionSample> failures;
    std::vector<ExcisionSample> records;
};

/// Sampled check of the excision property at orbit n, box m: every
/// radius-K window of the orbit's sojourn set, centered at a sampled
/// member s, fits inside a translate of the margin-fattened z-sojourn set.
ExcisionVerdict excision_check(const Scenario& sc, int n, int m, double superset_margin,
                               int s_samples);

}  // namespace sojourn

#endif
