#include <doctest.h>

#include <cmath>

#include "perimetry/geometry.hpp"

using namespace perimetry;

namespace {

PolygonalSet box(double x0, double y0, double x1, double y1) {
    return make_polygon_set({{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}});
}

// deterministic generator for property checks
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * double(next() >> 11) * 0x1.0p-53;
    }
};

PolygonalSet random_blob(Rng& rng, Point c, double rlo, double rhi) {
    const int n = 6 + int(rng.next() % 7);
    Ring r;
    for (int k = 0; k < n; ++k) {
        const double th = 2 * M_PI * (k + 0.3 * rng.uniform(-1, 1)) / n;
        const double rad = rng.uniform(rlo, rhi);
        r.push_back({c.x + rad * std::cos(th), c.y + rad * std::sin(th)});
    }
    return make_polygon_set({r});
}

} // namespace

TEST_CASE("unit square measures") {
    const PolygonalSet sq = box(0, 0, 1, 1);
    CHECK(area(sq) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(perimeter(sq) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(sq.components().size() == 1);
}

TEST_CASE("square with centered hole") {
    Ring outer{{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    Ring hole{{1, 1}, {3, 1}, {3, 3}, {1, 3}};
    const PolygonalSet s = make_polygon_set({outer, hole});
    CHECK(area(s) == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(perimeter(s) == doctest::Approx(24.0).epsilon(1e-12));
    REQUIRE(s.components().size() == 1);
    CHECK(s.components()[0].holes.size() == 1);
}

TEST_CASE("degenerate and invalid rings are rejected") {
    CHECK_THROWS_AS(make_polygon_set({{{0, 0}, {1, 0}}}), DegenerateRing);
    CHECK_THROWS_AS(make_polygon_set({{{0, 0}, {1e-13, 0}, {1e-13, 1e-13}, {0, 1e-13}}}),
                    DegenerateRing);
    // bowtie crosses itself
    CHECK_THROWS_AS(make_polygon_set({{{0, 0}, {1, 1}, {1, 0}, {0, 1}}}), SelfIntersection);
    // overlapping material
    CHECK_THROWS_AS(make_polygon_set({{{0, 0}, {2, 0}, {2, 2}, {0, 2}},
                                      {{1, 1}, {3, 1}, {3, 3}, {1, 3}}}),
                    NestingViolation);
}

TEST_CASE("boolean on shifted unit squares") {
    const PolygonalSet a = box(0, 0, 1, 1);
    const PolygonalSet b = box(0.5, 0, 1.5, 1);
    CHECK(area(boolean(a, b, BoolOp::Union)) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(area(boolean(a, b, BoolOp::Intersection)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(area(boolean(a, b, BoolOp::Difference)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(area(boolean(a, b, BoolOp::SymmetricDifference)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("union merges an exactly shared edge") {
    const PolygonalSet a = box(0, 0, 1, 1);
    const PolygonalSet b = box(1, 0, 2, 1);
    const PolygonalSet u = boolean(a, b, BoolOp::Union);
    CHECK(area(u) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(perimeter(u) == doctest::Approx(6.0).epsilon(1e-12));
    REQUIRE(u.components().size() == 1);
}

TEST_CASE("difference can open a hole") {
    const PolygonalSet a = box(0, 0, 4, 4);
    const PolygonalSet b = box(1, 1, 3, 3);
    const PolygonalSet d = boolean(a, b, BoolOp::Difference);
    CHECK(area(d) == doctest::Approx(12.0).epsilon(1e-12));
    REQUIRE(d.components().size() == 1);
    CHECK(d.components()[0].holes.size() == 1);
}

TEST_CASE("touching squares stay separate components") {
    const PolygonalSet a = box(0, 0, 1, 1);
    const PolygonalSet b = box(1, 1, 2, 2); // corner touch
    const PolygonalSet u = boolean(a, b, BoolOp::Union);
    CHECK(area(u) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(u.components().size() == 2);
}

TEST_CASE("intersection of disjoint sets is empty") {
    const PolygonalSet a = box(0, 0, 1, 1);
    const PolygonalSet b = box(5, 5, 6, 6);
    CHECK(boolean(a, b, BoolOp::Intersection).empty());
    CHECK(area(boolean(a, b, BoolOp::Intersection)) == 0.0);
}

TEST_CASE("complement within the universe") {
    const PolygonalSet a = box(0, 0, 1, 1);
    const Universe u = Universe::around({&a});
    const PolygonalSet c = complement(a, u);
    CHECK(area(c) == doctest::Approx(area(u.box()) - 1.0).epsilon(1e-9));
    CHECK(area(boolean(c, a, BoolOp::Intersection)) == doctest::Approx(0.0));
    // complement twice is the identity
    CHECK(symmetric_difference_area(complement(c, u), a) == doctest::Approx(0.0));
}

TEST_CASE("inclusion-exclusion area identity on random pairs") {
    Rng rng(20260815);
    for (int trial = 0; trial < 50; ++trial) {
        PolygonalSet a = random_blob(rng, {rng.uniform(-1, 1), rng.uniform(-1, 1)}, 0.5, 1.5);
        PolygonalSet b = random_blob(rng, {rng.uniform(-1, 1), rng.uniform(-1, 1)}, 0.5, 1.5);
        // snapped crossing vertices perturb each area by O(kSnap * diameter)
        const Universe u = Universe::around({&a, &b});
        const double lhs = area(boolean(a, b, BoolOp::Union)) +
                           area(boolean(a, b, BoolOp::Intersection));
        const double rhs = area(a) + area(b);
        CHECK(std::abs(lhs - rhs) < u.measure_tol());
        const double sym = area(boolean(a, b, BoolOp::SymmetricDifference));
        const double viaparts = area(boolean(a, b, BoolOp::Difference)) +
                                area(boolean(b, a, BoolOp::Difference));
        CHECK(std::abs(sym - viaparts) < u.measure_tol());
    }
}

TEST_CASE("union idempotence and involution of complement") {
    Rng rng(99);
    PolygonalSet a = random_blob(rng, {0, 0}, 0.5, 1.5);
    CHECK(symmetric_difference_area(boolean(a, a, BoolOp::Union), a) == doctest::Approx(0.0));
    CHECK(area(boolean(a, a, BoolOp::Difference)) == doctest::Approx(0.0));
}

TEST_CASE("perimeter is invariant under rigid motions") {
    Rng rng(7);
    PolygonalSet a = random_blob(rng, {0.5, -0.25}, 0.4, 1.2);
    const Universe u = Universe::around({&a});
    const double p0 = perimeter(a);
    const PolygonalSet moved = rotated(translated(a, {0.37, -1.21}), 0.61803398875);
    CHECK(std::abs(perimeter(moved) - p0) < u.measure_tol());
    CHECK(std::abs(area(moved) - area(a)) < u.measure_tol());
}

TEST_CASE("snapping collapses sub-lattice jitter") {
    Ring r{{0, 0}, {1, 2.4e-10}, {1, 1}, {0, 1}};
    const PolygonalSet s = make_polygon_set({r});
    CHECK(area(s) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(perimeter(s) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("coordinates beyond the exactness cap are rejected") {
    CHECK_THROWS_AS(box(0, 0, 5e3, 1), InvalidArgument);
}
