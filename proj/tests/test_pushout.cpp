#include "doctest.h"

#include <cmath>

#include "perimetry/boundary.hpp"
#include "perimetry/pushout.hpp"

using namespace perimetry;

namespace {

PolygonalSet box(double x0, double y0, double x1, double y1) {
    return make_polygon_set({Ring{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}});
}

// U-shaped container: broad box with a notch removed from the top edge.
PolygonalSet notch_container() {
    return boolean(box(0, 0, 3, 2), box(1, 1, 2, 2), BoolOp::Difference);
}

bool intersection_unchanged(const PolygonalSet& a, const PolygonalSet& b,
                            const PolygonalSet& omega) {
    const PolygonalSet ia = boolean(a, omega, BoolOp::Intersection);
    const PolygonalSet ib = boolean(b, omega, BoolOp::Intersection);
    return symmetric_difference_area(ia, ib) == 0.0;
}

struct Rng {
    unsigned long long s;
    explicit Rng(unsigned long long seed) : s(seed) {}
    unsigned long long next() {
        s += 0x9e3779b97f4a7c15ull;
        unsigned long long z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform(double a, double b) {
        return a + (b - a) * (double(next() >> 11) * 0x1.0p-53);
    }
};

} // namespace

TEST_CASE("exact common boundary on coincident edges") {
    const PolygonalSet e = box(0, 0, 1, 1);
    const PolygonalSet o = box(0, 0, 2, 1);
    const CommonBoundary cb = exact_common_boundary(e, o);
    CHECK(cb.plus_length() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(cb.minus_length() == 0.0);
    // merged back into maximal segments: left, bottom, top
    CHECK(cb.gamma_plus.size() == 3);

    // complement duality swaps the classes exactly
    const Universe u = Universe::around({&e, &o});
    const CommonBoundary dual = exact_common_boundary(complement(e, u), o);
    CHECK(dual.minus_length() == doctest::Approx(cb.plus_length()).epsilon(1e-12));
    CHECK(dual.plus_length() == doctest::Approx(cb.minus_length()).epsilon(1e-12));
}

TEST_CASE("exact metric ignores near-parallel hugging") {
    const PolygonalSet e = box(0, 1e-8, 1, 1); // floats 10 lattice units above
    const PolygonalSet o = box(0, 0, 1, 2);
    CHECK(exact_common_boundary(e, o).total_length() ==
          doctest::Approx(2.0 - 2e-8).epsilon(1e-12)); // only the side walls coincide
    CHECK(common_boundary(e, o).total_length() > 2.9); // toleranced detector sees the gap
}

TEST_CASE("bump removes its base and leaves omega side untouched") {
    const PolygonalSet o = box(0, 0, 4, 4);
    const PolygonalSet e = box(1, 0, 3, 2);
    const Universe u = Universe::around({&e, &o});
    const CommonBoundary cb = exact_common_boundary(e, o);
    REQUIRE(cb.gamma_plus.size() == 1);
    REQUIRE(cb.plus_length() == doctest::Approx(2.0));

    const double delta = 0.05;
    const PolygonalSet b = bump_segment(e, o, cb.gamma_plus[0], delta, u);
    CHECK(intersection_unchanged(e, b, o));
    CHECK(symmetric_difference_area(e, boolean(e, b, BoolOp::Intersection)) == 0.0); // b contains e
    const double gained = area(b) - area(e);
    CHECK(gained > delta * 2.0 * 2.0 * 0.99);  // h > delta*len over a len-2 base
    CHECK(gained < 2 * delta * 2.0 * 2.0 * 1.01);
    CHECK(exact_common_boundary(b, o).total_length() < u.measure_tol());
}

TEST_CASE("bump argument validation") {
    const PolygonalSet o = box(0, 0, 4, 4);
    const PolygonalSet e = box(1, 0, 3, 2);
    const Universe u = Universe::around({&e, &o});
    const OrientedSegment seg = exact_common_boundary(e, o).gamma_plus[0];
    CHECK_THROWS_AS(bump_segment(e, o, seg, 0.0, u), InvalidArgument);
    CHECK_THROWS_AS(bump_segment(e, o, seg, 0.5, u), InvalidArgument);
    const OrientedSegment tiny{{1, 0}, {1 + 4e-9, 0}, {0, -1}};
    CHECK_THROWS_AS(bump_segment(e, o, tiny, 0.1, u), InvalidArgument);

    HeightWeight bad = [](Point, Vec2, const OrientedSegment&) { return 1.5; };
    CHECK_THROWS_AS(bump_segment(e, o, seg, 0.1, u, bad), InvalidArgument);
}

TEST_CASE("height weight shrinks the bump") {
    const PolygonalSet o = box(0, 0, 4, 4);
    const PolygonalSet e = box(1, 0, 3, 2);
    const Universe u = Universe::around({&e, &o});
    const OrientedSegment seg = exact_common_boundary(e, o).gamma_plus[0];
    HeightWeight half = [](Point, Vec2, const OrientedSegment&) { return 0.5; };
    const double gained = area(bump_segment(e, o, seg, 0.05, u, half)) - area(e);
    CHECK(gained > 0.05 * 0.5 * 2.0 * 2.0 * 0.99);
    CHECK(gained < 0.10 * 0.5 * 2.0 * 2.0 * 1.01);
}

TEST_CASE("lattice floor heights keep sub-window bumps alive") {
    const PolygonalSet o = box(0, 0, 4, 4);
    const PolygonalSet e = box(1, 0, 1 + 3e-6, 1); // sliver slab, base 3e-6 on the container wall
    const Universe u = Universe::around({&e, &o});
    const CommonBoundary cb = exact_common_boundary(e, o);
    REQUIRE(cb.plus_length() == doctest::Approx(3e-6).epsilon(1e-6));

    // delta*len = 3e-12: far below the snap scale, lattice heights take over
    const PolygonalSet b = bump_segment(e, o, cb.gamma_plus[0], 1e-6, u);
    const double gained = area(b) - area(e);
    CHECK(gained >= 2e-9 * 3e-6 * 0.9);
    CHECK(gained <= 8e-9 * 3e-6 * 1.1);
    CHECK(exact_common_boundary(b, o).total_length() < u.measure_tol());
    CHECK(intersection_unchanged(e, b, o));
}

TEST_CASE("push out clears gamma plus and records the pass") {
    const PolygonalSet o = box(0, 0, 4, 4);
    const PolygonalSet e = box(1, 0, 3, 2);
    const Universe u = Universe::around({&e, &o});
    PushoutTrace trace;
    const double delta = 0.02;
    const PolygonalSet r = push_out_gamma_plus(e, o, delta, u, &trace);
    CHECK(exact_common_boundary(r, o).plus_length() < u.measure_tol());
    CHECK(intersection_unchanged(e, r, o));
    REQUIRE(trace.passes.size() == 1);
    const PassRecord& p = trace.passes[0];
    CHECK(p.direction == '+');
    CHECK(p.bumps == 1);
    CHECK(p.d_perimeter > 2 * delta * 2.0 * 0.99); // perimeter grows by twice the height
    CHECK(p.d_perimeter < 4 * delta * 2.0 * 1.01);
    CHECK(p.d_area == doctest::Approx(area(r) - area(e)).epsilon(1e-12));
    CHECK(trace.csv().find("pass,direction") == 0);
}

TEST_CASE("pull in removes exterior flap material") {
    const PolygonalSet o = box(0, 0, 4, 4);
    const PolygonalSet e = box(1, -1, 3, 0); // sits below, shares the container's bottom edge
    const Universe u = Universe::around({&e, &o});
    const CommonBoundary cb = exact_common_boundary(e, o);
    REQUIRE(cb.minus_length() == doctest::Approx(2.0));
    REQUIRE(cb.plus_length() == 0.0);

    PushoutTrace trace;
    const double delta = 0.05;
    const PolygonalSet r = pull_in_gamma_minus(e, o, delta, u, &trace);
    CHECK(exact_common_boundary(r, o).total_length() < u.measure_tol());
    CHECK(intersection_unchanged(e, r, o));
    CHECK(symmetric_difference_area(r, boolean(e, r, BoolOp::Intersection)) == 0.0); // r inside e
    const double removed = area(e) - area(r);
    CHECK(removed > delta * 2.0 * 2.0 * 0.99);
    CHECK(removed < 2 * delta * 2.0 * 2.0 * 1.01);
    REQUIRE(trace.passes.size() == 1);
    CHECK(trace.passes[0].direction == '-');
}

TEST_CASE("bumping into a notch creates only gamma minus") {
    const PolygonalSet o = notch_container();
    const PolygonalSet e = box(1, 0, 2, 1);
    const Universe u = Universe::around({&e, &o});
    const CommonBoundary before = exact_common_boundary(e, o);
    CHECK(before.plus_length() == doctest::Approx(2.0)); // notch floor and container bottom
    CHECK(before.minus_length() == 0.0);

    PushoutTrace trace;
    const double delta = 0.02;
    const PolygonalSet r = push_out_gamma_plus(e, o, delta, u, &trace);
    const CommonBoundary after = exact_common_boundary(r, o);
    CHECK(after.plus_length() < u.measure_tol());
    // the notch-floor bump's side walls land on the notch walls
    CHECK(after.minus_length() > 2 * delta * 1.0 * 0.99);
    CHECK(after.minus_length() < 4 * delta * 1.0 * 1.01);
    CHECK(intersection_unchanged(e, r, o));
}

TEST_CASE("alternating passes detach the notch fixture") {
    const PolygonalSet o = notch_container();
    const PolygonalSet e = box(1, 0, 2, 1);
    const Universe u = Universe::around({&e, &o});
    const double eps = 0.1;

    PushoutTrace trace;
    const PolygonalSet r = remove_common_boundary(e, o, eps, u, &trace);
    CHECK(exact_common_boundary(r, o).total_length() < u.measure_tol());
    CHECK(trace.residual < u.measure_tol());
    CHECK(intersection_unchanged(e, r, o));
    CHECK(symmetric_difference_area(e, r) <= eps);
    CHECK(std::abs(perimeter(r) - perimeter(e)) <= eps);
    CHECK(trace.passes.size() >= 3); // wall echoes force more than one round trip
    CHECK(trace.passes[0].direction == '+');
    CHECK(trace.passes[1].direction == '-');
}

TEST_CASE("container equal to the set detaches in one pass") {
    const PolygonalSet e = box(0, 0, 2, 2);
    const Universe u = Universe::around({&e});
    const double eps = 0.4;
    PushoutTrace trace;
    const PolygonalSet r = remove_common_boundary(e, e, eps, u, &trace);
    CHECK(exact_common_boundary(r, e).total_length() < u.measure_tol());
    CHECK(intersection_unchanged(e, r, e));
    CHECK(symmetric_difference_area(e, r) <= eps);
    CHECK(std::abs(perimeter(r) - perimeter(e)) <= eps);
    CHECK(trace.passes.size() == 1);
}

TEST_CASE("no common boundary is a fixed point") {
    const PolygonalSet o = box(0, 0, 4, 4);
    const PolygonalSet e = box(1, 1, 2, 2);
    const Universe u = Universe::around({&e, &o});
    PushoutTrace trace;
    const PolygonalSet r = remove_common_boundary(e, o, 0.1, u, &trace);
    CHECK(symmetric_difference_area(e, r) == 0.0);
    CHECK(trace.passes.empty());
}

TEST_CASE("pass cap surfaces as budget exhaustion with the residual") {
    const PolygonalSet o = notch_container();
    const PolygonalSet e = box(1, 0, 2, 1);
    const Universe u = Universe::around({&e, &o});
    RemoveOptions opts;
    opts.max_passes = 1; // the first pass necessarily leaves wall echoes
    bool thrown = false;
    try {
        remove_common_boundary(e, o, 0.1, u, nullptr, opts);
    } catch (const BudgetExhausted& ex) {
        thrown = true;
        CHECK(ex.residual > 0.0);
        CHECK(ex.residual < 0.2);
    }
    CHECK(thrown);
}

TEST_CASE("random bottom-flush slabs detach within budget") {
    const PolygonalSet o = box(0, 0, 4, 4);
    Rng rng(20240817ull);
    for (int trial = 0; trial < 20; ++trial) {
        const double x0 = rng.uniform(0.0, 2.0);
        const double x1 = x0 + rng.uniform(0.3, 1.8);
        const double y1 = rng.uniform(0.3, 3.5);
        const PolygonalSet e = box(x0, 0, x1, y1);
        const Universe u = Universe::around({&e, &o});
        const double eps = 0.05 * perimeter(e);

        CAPTURE(trial);
        PushoutTrace trace;
        const PolygonalSet r = remove_common_boundary(e, o, eps, u, &trace);
        CHECK(exact_common_boundary(r, o).total_length() < u.measure_tol());
        CHECK(intersection_unchanged(e, r, o));
        CHECK(symmetric_difference_area(e, r) <= eps);
        CHECK(std::abs(perimeter(r) - perimeter(e)) <= eps);
    }
}
