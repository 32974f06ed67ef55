#ifndef PERIMETRY_TESTS_FIXTURES_HPP
#define PERIMETRY_TESTS_FIXTURES_HPP

#include <cstdint>
#include <vector>

#include "perimetry/geometry.hpp"

namespace perimetry::fixtures {

// splitmix64: deterministic across platforms, one stream per fixture seed
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    int range(int n) { return int(next() % std::uint64_t(n)); }
};

// convex hull of random points in a disk; float vertices (oracle fixtures)
PolygonalSet random_convex_polygon(Rng& rng, Point center, double radius, int npts);

// Container/set pair sharing exact boundary: a convex container with vertices
// on a coarse lattice, and E made of wedges reflected into sub-segments of its
// edges (inward wedges share with matching normals, outward ones opposing)
// plus a detached blob. Sub-segment endpoints sit exactly on the edge lines.
struct SharedBoundaryFixture {
    PolygonalSet e, omega;
    double gamma_plus = 0, gamma_minus = 0; // shared lengths per normal class
};
SharedBoundaryFixture wedge_fixture(std::uint64_t seed);

// E = container clipped to a lattice-exact half plane: the shared boundary is
// a long arc of the container wall, matching normals only
SharedBoundaryFixture clipped_fixture(std::uint64_t seed);

// clipped_fixture plus slabs glued outside full wall edges above the cut:
// both normal classes exceed 0.15 P(E) and together exceed half of it, so a
// level set of the plain mollified field lands inside the container along one
// class or the other no matter which level is chosen
SharedBoundaryFixture mixed_fixture(std::uint64_t seed);

// unit square growing one flange of size 2^-j per step, then held constant
std::vector<PolygonalSet> flange_sequence(int grow_steps, int hold_steps);

// square jumping back and forth by 0.3: boundaries never settle
std::vector<PolygonalSet> alternating_sequence(int steps);

} // namespace perimetry::fixtures

#endif
