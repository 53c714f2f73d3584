#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "sojourn/geometry.hpp"

using namespace sojourn;

namespace {

// Small deterministic generator for the property checks below; xorshift is
// plenty for fuzzing interval endpoints.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ? seed : 1) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * double(next() % 1000000) / 1000000.0;
    }
    bool flip() { return next() & 1; }
};

IntervalSet random_set(Rng& rng, int max_parts) {
    std::vector<Interval> parts;
    int count = int(rng.next() % (max_parts + 1));
    for (int i = 0; i < count; ++i) {
        double a = rng.uniform(-10.0, 10.0);
        double b = rng.uniform(-10.0, 10.0);
        if (a > b) std::swap(a, b);
        parts.push_back({a, b, rng.flip(), rng.flip()});
    }
    return IntervalSet(std::move(parts));
}

}  // namespace

TEST_CASE("interval basics") {
    Interval i = Interval::closed(1.0, 3.0);
    CHECK(!i.empty());
    CHECK(i.length() == 2.0);
    CHECK(i.midpoint() == 2.0);
    CHECK(i.contains(1.0));
    CHECK(i.contains(3.0));
    CHECK(!i.contains(3.5));

    Interval o = Interval::open(1.0, 3.0);
    CHECK(!o.contains(1.0));
    CHECK(!o.contains(3.0));
    CHECK(o.contains(2.0));

    CHECK(Interval::open(1.0, 1.0).empty());
    CHECK(!Interval::point(1.0).empty());
    CHECK(Interval::point(1.0).length() == 0.0);
    CHECK(Interval{2.0, 1.0, false, false}.empty());

    CHECK(Interval::whole().contains(1e100));
    CHECK(!Interval::whole().bounded());
    CHECK(Interval::closed(0.0, 1.0).bounded());
}

TEST_CASE("interval intersection respects openness") {
    Interval a = Interval::closed(0.0, 2.0);
    Interval b = Interval::open(1.0, 3.0);
    Interval c = intersect(a, b);
    CHECK(c.lo == 1.0);
    CHECK(c.hi == 2.0);
    CHECK(c.lo_open);
    CHECK(!c.hi_open);

    // touching at a single point
    CHECK(intersect(Interval::closed(0.0, 1.0), Interval::closed(1.0, 2.0)) ==
          Interval::point(1.0));
    CHECK(intersect(Interval::right_open(0.0, 1.0), Interval::closed(1.0, 2.0)).empty());
}

TEST_CASE("interval translation keeps infinite ends infinite") {
    Interval h = {-kInf, 2.0, true, false};
    Interval ht = h.translated(5.0);
    CHECK(ht.lo == -kInf);
    CHECK(ht.hi == 7.0);
    CHECK(!ht.hi_open);
}

TEST_CASE("interval set normalization merges and sorts") {
    IntervalSet s{Interval::closed(1.0, 2.0), Interval::closed(0.0, 1.0)};
    REQUIRE(s.size() == 1);
    CHECK(s.parts()[0] == Interval::closed(0.0, 2.0));

    // half-open pieces fuse when one side covers the shared endpoint
    IntervalSet t{Interval::open(0.0, 1.0), Interval::closed(1.0, 2.0)};
    REQUIRE(t.size() == 1);
    CHECK(t.parts()[0] == Interval::left_open(0.0, 2.0));

    // both open at the junction: the point is genuinely missing
    IntervalSet u{Interval::open(0.0, 1.0), Interval::open(1.0, 2.0)};
    CHECK(u.size() == 2);
    CHECK(!u.contains(1.0));

    // empty parts vanish
    IntervalSet v{Interval::open(3.0, 3.0), Interval::closed(0.0, 1.0)};
    CHECK(v.size() == 1);
    CHECK(v.measure() == 1.0);

    // overlapping parts collapse
    IntervalSet w{Interval::closed(0.0, 5.0), Interval::closed(1.0, 2.0)};
    CHECK(w.size() == 1);
}

TEST_CASE("measure adds part lengths and ignores openness") {
    IntervalSet s{Interval::closed(0.0, 1.0), Interval::open(2.0, 4.5)};
    CHECK(s.measure() == doctest::Approx(3.5));
    CHECK(IntervalSet{}.measure() == 0.0);
    CHECK(IntervalSet{Interval::point(1.0)}.measure() == 0.0);
    CHECK(IntervalSet{Interval{0.0, kInf, false, true}}.measure() == kInf);
    CHECK(std::isinf(IntervalSet{Interval::whole()}.measure()));
}

TEST_CASE("set algebra on concrete sets") {
    IntervalSet a{Interval::closed(0.0, 2.0), Interval::closed(4.0, 6.0)};
    IntervalSet b{Interval::closed(1.0, 5.0)};

    IntervalSet u = set_union(a, b);
    REQUIRE(u.size() == 1);
    CHECK(u.parts()[0] == Interval::closed(0.0, 6.0));

    IntervalSet i = intersect(a, b);
    REQUIRE(i.size() == 2);
    CHECK(i.parts()[0] == Interval::closed(1.0, 2.0));
    CHECK(i.parts()[1] == Interval::closed(4.0, 5.0));

    IntervalSet d = difference(a, b);
    REQUIRE(d.size() == 2);
    CHECK(d.parts()[0] == Interval::right_open(0.0, 1.0));
    CHECK(d.parts()[1] == Interval::left_open(5.0, 6.0));
}

TEST_CASE("complement round trip") {
    IntervalSet a{Interval::left_open(0.0, 1.0), Interval::closed(3.0, 4.0)};
    IntervalSet c = a.complement();
    CHECK(c.contains(0.0));
    CHECK(!c.contains(0.5));
    CHECK(!c.contains(1.0));
    CHECK(c.contains(2.0));
    CHECK(!c.contains(3.0));
    CHECK(c.contains(5.0));
    CHECK(c.complement() == a);
    CHECK(IntervalSet{}.complement() == IntervalSet{Interval::whole()});
}

TEST_CASE("contains_set is genuine inclusion") {
    IntervalSet big{Interval::closed(0.0, 10.0)};
    IntervalSet small{Interval::closed(1.0, 2.0), Interval::open(8.0, 9.0)};
    CHECK(big.contains_set(small));
    CHECK(!small.contains_set(big));

    // openness matters at shared endpoints
    IntervalSet open_big{Interval::open(0.0, 10.0)};
    IntervalSet touches{Interval::closed(0.0, 1.0)};
    CHECK(!open_big.contains_set(touches));
    CHECK(big.contains_set(touches));
    CHECK(big.contains_set(IntervalSet{}));
}

TEST_CASE("subtract_translates removes closed balls") {
    IntervalSet s{Interval::closed(0.0, 10.0)};
    std::vector<double> centers = {2.0, 8.0};
    IntervalSet r = s.subtract_translates(centers, 1.0);
    REQUIRE(r.size() == 3);
    CHECK(r.parts()[0] == Interval::right_open(0.0, 1.0));
    CHECK(r.parts()[1] == Interval::open(3.0, 7.0));
    CHECK(r.parts()[2] == Interval::left_open(9.0, 10.0));
    CHECK(r.measure() == doctest::Approx(6.0));

    // no centers: identity
    CHECK(s.subtract_translates({}, 1.0) == s);
}

TEST_CASE("to_string / parse round trip") {
    IntervalSet s{Interval::left_open(0.0, 1.5), Interval::closed(3.0, 4.0),
                  Interval{5.0, kInf, false, true}};
    IntervalSet t = IntervalSet::parse(s.to_string());
    CHECK(t == s);
    CHECK(IntervalSet{}.to_string() == "");
    CHECK(IntervalSet::parse("") == IntervalSet{});
    IntervalSet half = IntervalSet::parse("(-inf, 0]");
    REQUIRE(half.size() == 1);
    CHECK(half.parts()[0].lo == -kInf);
    CHECK(!half.parts()[0].hi_open);
}

TEST_CASE("box neighborhood membership and nesting") {
    BoxNeighborhood box = BoxNeighborhood::closed_box({0.0, -1.0}, {2.0, 1.0});
    std::vector<double> in = {1.0, 0.0}, edge = {2.0, 1.0}, out = {2.1, 0.0};
    CHECK(box.contains(in));
    CHECK(box.contains(edge));
    CHECK(!box.contains(out));

    BoxNeighborhood open = BoxNeighborhood::open_box({0.0, -1.0}, {2.0, 1.0});
    CHECK(open.contains(in));
    CHECK(!open.contains(edge));

    CHECK(box.contains_box(open));
    CHECK(!open.contains_box(box));

    std::vector<double> center = {1.0, 0.0};
    BoxNeighborhood inner = box.shrunk(center, 0.5);
    CHECK(box.contains_box(inner));
    CHECK(inner.face(0).lo == doctest::Approx(0.5));
    CHECK(inner.face(0).hi == doctest::Approx(1.5));

    BoxNeighborhood cl = open.closure();
    CHECK(cl.contains(edge));
}

TEST_CASE("property: normalization is idempotent") {
    Rng rng(0xfeedULL);
    for (int it = 0; it < 300; ++it) {
        IntervalSet s = random_set(rng, 6);
        CHECK(IntervalSet(s.parts()) == s);
    }
}

TEST_CASE("property: inclusion-exclusion of the measure") {
    Rng rng(0xabcdULL);
    for (int it = 0; it < 300; ++it) {
        IntervalSet a = random_set(rng, 5);
        IntervalSet b = random_set(rng, 5);
        double lhs = set_union(a, b).measure() + intersect(a, b).measure();
        double rhs = a.measure() + b.measure();
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("property: difference partitions the left operand") {
    Rng rng(0x1234ULL);
    for (int it = 0; it < 300; ++it) {
        IntervalSet a = random_set(rng, 5);
        IntervalSet b = random_set(rng, 5);
        IntervalSet d = difference(a, b);
        IntervalSet i = intersect(a, b);
        CHECK(set_union(d, i) == a);
        CHECK(intersect(d, b).measure() == 0.0);
        CHECK(a.contains_set(d));
    }
}

TEST_CASE("property: translation preserves measure and membership") {
    Rng rng(0x5678ULL);
    for (int it = 0; it < 200; ++it) {
        IntervalSet a = random_set(rng, 5);
        double t = rng.uniform(-20.0, 20.0);
        IntervalSet at = a.translated(t);
        CHECK(at.measure() == doctest::Approx(a.measure()).epsilon(1e-12));
        double x = rng.uniform(-12.0, 12.0);
        CHECK(a.contains(x) == at.contains(x + t));
        // endpoints round when shifted, so the inverse translation agrees
        // only up to a symmetric difference of ulp size
        IntervalSet back = at.translated(-t);
        CHECK(set_union(difference(back, a), difference(a, back)).measure() <= 1e-9);
    }
}

TEST_CASE("property: subtract_translates shrinks monotonically in radius") {
    Rng rng(0x9999ULL);
    for (int it = 0; it < 200; ++it) {
        IntervalSet a = random_set(rng, 5);
        std::vector<double> centers;
        for (int i = 0; i < 3; ++i) centers.push_back(rng.uniform(-10.0, 10.0));
        double r1 = rng.uniform(0.1, 2.0);
        double r2 = r1 + rng.uniform(0.0, 2.0);
        IntervalSet s1 = a.subtract_translates(centers, r1);
        IntervalSet s2 = a.subtract_translates(centers, r2);
        CHECK(s1.contains_set(s2));
        CHECK(a.contains_set(s1));
        for (double c : centers) CHECK(!s1.contains(c));
    }
}
