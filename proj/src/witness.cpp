#include "sojourn/witness.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace sojourn {

std::vector<double> pick_translates(IntervalSet sojourn, int k, double radius) {
    std::vector<double> picks;
    for (int i = 0; i < k; ++i) {
        if (sojourn.empty()) break;
        double t = sojourn.parts().front().midpoint();
        picks.push_back(t);
        double c[1] = {t};
        sojourn = sojourn.subtract_translates(c, radius);
    }
    return picks;
}

namespace {

bool in_box(const Scenario& sc, const std::vector<double>& p, const BoxNeighborhood& box) {
    for (std::size_t d = 0; d < box.dim(); ++d) {
        double v = p[d];
        if (sc.torus) v -= std::round(v - box.face(d).midpoint());
        if (!box.face(d).contains(v)) return false;
    }
    return true;
}

}  // namespace

Witness construct_witness(const Scenario& sc, int k, int n_max, int m_max, bool subsequence) {
    if (sc.windowed)
        throw std::invalid_argument(
            "construct_witness needs a locally closed limit orbit; use "
            "self_convergence_witness");
    if (k < 1) throw std::invalid_argument("k must be positive");

    std::vector<double> nu_z(m_max + 1, 0.0);
    for (int m = 1; m <= m_max; ++m) nu_z[m] = sojourn_measure(sc.z, sc.box_at(m));

    std::vector<Trajectory> orbits;
    orbits.reserve(n_max);
    for (int n = 1; n <= n_max; ++n) orbits.push_back(sc.orbit_at(n));

    // qualifies[n][m]: the strict measure inequality behind the greedy
    // construction, nu_n(W_m) > (k-1) nu_z(W_m).
    auto qualifies = [&](int n, int m) {
        return sojourn_measure(orbits[n - 1], sc.box_at(m)) > (k - 1) * nu_z[m];
    };

    Witness w;
    w.k = k;

    if (!subsequence) {
        // The full-sequence witness must cover every index from the moment
        // the orbits reach the outermost box; skipping bad indices would
        // quietly turn it into a subsequence witness.
        int n_start = -1;
        for (int n = 1; n <= n_max && n_start == -1; ++n)
            if (sojourn_measure(orbits[n - 1], sc.box_at(1)) > 0.0) n_start = n;
        if (n_start == -1) throw WitnessExhausted(0, 0);

        // first_n[m] = first index from which the measure inequality holds
        // on the whole suffix; the schedule at n is the deepest box already
        // unlocked, falling back to the outermost box.
        std::vector<int> first_n(m_max + 1, -1);
        for (int m = 1; m <= m_max; ++m) {
            int start = -1;
            for (int n = n_max; n >= 1; --n) {
                if (!qualifies(n, m)) break;
                start = n;
            }
            first_n[m] = start;
        }
        auto schedule = [&](int n) {
            int best = 1;
            for (int m = 1; m <= m_max; ++m)
                if (first_n[m] != -1 && n >= first_n[m]) best = m;
            return best;
        };
        int prev_m = 1;
        for (int n = n_start; n <= n_max; ++n) {
            // Try the deepest unlocked box first, but allow backing off to a
            // shallower one (never below the previous entry, the schedule
            // must stay nondecreasing): early on the excision radius can
            // exceed the strand spacing even though the measure inequality
            // already holds.
            int best_picks = 0;
            bool placed = false;
            for (int m = schedule(n); m >= prev_m && !placed; --m) {
                double radius = sc.exhaustion_radius(m);
                IntervalSet sset = sojourn_set(orbits[n - 1], sc.box_at(m));
                std::vector<double> picks = pick_translates(std::move(sset), k, radius);
                best_picks = std::max(best_picks, int(picks.size()));
                if (int(picks.size()) == k) {
                    w.entries.push_back({n, m, std::move(picks), radius});
                    prev_m = m;
                    placed = true;
                }
            }
            if (!placed) throw WitnessExhausted(n, best_picks);
        }
        if (w.entries.empty()) throw WitnessExhausted(0, 0);
        return w;
    }

    // Subsequence route: keep only indices that support k strands at the
    // current box depth, advancing the depth by one per selected index.
    auto max_depth = [&](int n) {
        int m = 0;
        while (m < m_max && qualifies(n, m + 1)) ++m;
        return m;
    };
    int m_cur = 1;
    for (int n = 1; n <= n_max; ++n) {
        if (max_depth(n) < m_cur) continue;
        double radius = sc.exhaustion_radius(m_cur);
        IntervalSet sset = sojourn_set(orbits[n - 1], sc.box_at(m_cur));
        std::vector<double> picks = pick_translates(std::move(sset), k, radius);
        if (int(picks.size()) < k) throw WitnessExhausted(n, int(picks.size()));
        w.entries.push_back({n, m_cur, std::move(picks), radius});
        m_cur = std::min(m_max, m_cur + 1);
    }
    if (w.entries.empty()) throw WitnessExhausted(0, 0);
    return w;
}

WitnessVerdict verify_witness(const Scenario& sc, const Witness& w, double tol) {
    WitnessVerdict v;
    auto fail = [&](int n, int i, int j, std::string msg) {
        v.pass = false;
        v.fail_n = n;
        v.fail_i = i;
        v.fail_j = j;
        v.message = std::move(msg);
        return v;
    };
    int prev_m = 0;
    for (const Witness::Entry& e : w.entries) {
        if (int(e.translates.size()) != w.k)
            return fail(e.n, -1, -1, fmt::format("entry n={} has {} translates, expected {}",
                                                 e.n, e.translates.size(), w.k));
        if (e.m < prev_m)
            return fail(e.n, -1, -1,
                        fmt::format("box schedule decreases at n={} ({} -> {})", e.n, prev_m, e.m));
        prev_m = e.m;

        Trajectory traj = w.self ? sc.z : sc.orbit_at(e.n);
        BoxNeighborhood box = sc.box_at(e.m);
        for (int i = 0; i < w.k; ++i) {
            std::vector<double> p = traj.point_at(e.translates[i]);
            if (!in_box(sc, p, box))
                return fail(e.n, i, -1,
                            fmt::format("translate {} of entry n={} leaves box m={}", i, e.n, e.m));
        }
        if (w.k >= 2) {
            double min_gap = kInf;
            for (int i = 0; i < w.k; ++i)
                for (int j = i + 1; j < w.k; ++j)
                    min_gap = std::min(min_gap,
                                       std::abs(e.translates[j] - e.translates[i]));
            // Divergence of the pairwise differences is certified through
            // the exhaustion radius of the (nondecreasing) box schedule;
            // the raw gaps themselves need not be monotone.
            double required = std::max(e.separation, sc.exhaustion_radius(e.m));
            if (min_gap + tol < required)
                return fail(e.n, -1, -1,
                            fmt::format("gap {} at n={} below required separation {}", min_gap,
                                        e.n, required));
        }
    }
    if (w.entries.empty()) return fail(-1, -1, -1, "empty witness");
    return v;
}

Witness self_convergence_witness(const Scenario& sc, int k,
                                 const std::vector<double>& horizons) {
    if (!sc.windowed)
        throw std::invalid_argument(
            "self_convergence_witness needs an unbounded (windowed) scenario");
    Witness w;
    w.k = k;
    w.self = true;
    for (int m = 1; m <= int(horizons.size()); ++m) {
        double T = horizons[m - 1];
        double radius = sc.exhaustion_radius(m);
        IntervalSet sset =
            sojourn_set(sc.z, sc.box_at(m), Interval::closed(-T, T), sc.torus);
        std::vector<double> picks = pick_translates(std::move(sset), k, radius);
        if (int(picks.size()) < k) throw HorizonTooSmall(m);
        std::sort(picks.begin(), picks.end());
        w.entries.push_back({m, m, std::move(picks), radius});
    }
    return w;
}

ExcisionVerdict excision_check(const Scenario& sc, int n, int m, double superset_margin,
                               int s_samples) {
    BoxNeighborhood box = sc.box_at(m);
    IntervalSet z_set = sojourn_set(sc.z, box);
    double radius = sc.exhaustion_radius(m);

    // U: open margin-fattening of the z-sojourn set.
    std::vector<Interval> fat;
    for (const Interval& p : z_set.parts())
        fat.push_back(Interval::open(p.lo - superset_margin, p.hi + superset_margin));
    IntervalSet fattened(std::move(fat));

    IntervalSet orbit_set = sojourn_set(sc.orbit_at(n), box);

    // Sample points: part endpoints plus evenly spaced interior points.
    std::vector<double> samples;
    int per_part = orbit_set.empty()
                       ? 0
                       : std::max(1, int((s_samples + orbit_set.size() - 1) / orbit_set.size()));
    for (const Interval& p : orbit_set.parts()) {
        if (p.lo > -kInf) samples.push_back(p.lo_open ? std::nextafter(p.lo, p.hi) : p.lo);
        if (p.hi < kInf) samples.push_back(p.hi_open ? std::nextafter(p.hi, p.lo) : p.hi);
        for (int i = 1; i <= per_part; ++i)
            samples.push_back(p.lo + p.length() * i / (per_part + 1));
    }

    ExcisionVerdict verdict;
    for (double s : samples) {
        IntervalSet window_piece =
            intersect(orbit_set, IntervalSet{Interval::closed(s - radius, s + radius)});

        // Candidate translates back into the z-sojourn set: align part
        // centers, or use s directly when it already lies there.
        std::vector<double> candidates;
        const Interval* home = nullptr;
        for (const Interval& p : orbit_set.parts())
            if (p.contains(s)) home = &p;
        for (const Interval& q : z_set.parts()) {
            candidates.push_back(q.midpoint());
            if (home) candidates.push_back(s - (home->midpoint() - q.midpoint()));
        }
        if (z_set.contains(s)) candidates.push_back(s);

        ExcisionSample rec;
        rec.s = s;
        for (double r : candidates) {
            if (!z_set.contains(r)) continue;
            if (fattened.translated(s - r).contains_set(window_piece)) {
                rec.ok = true;
                rec.r = r;
                break;
            }
        }
        verdict.records.push_back(rec);
        if (!rec.ok) {
            verdict.pass = false;
            verdict.failures.push_back(rec);
        }
    }
    verdict.samples = int(samples.size());
    return verdict;
}

}  // namespace sojourn
