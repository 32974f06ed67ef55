#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "perimetry/boundary.hpp"

namespace perimetry::fixtures {

namespace {

// Andrew monotone chain, CCW hull
std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Point a, Point b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Point> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
        h[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

constexpr double kCoarse = 1e-3; // coarse lattice pitch for exact shared edges

double coarse(double v) { return std::round(v / kCoarse) * kCoarse; }

// container: convex hull of coarse-lattice points around `center`
Ring coarse_hull(Rng& rng, Point center, double radius, int npts) {
    std::vector<Point> pts;
    while (true) {
        pts.clear();
        for (int i = 0; i < npts; ++i) {
            const double th = rng.uniform(0, 2 * M_PI);
            const double r = radius * std::sqrt(rng.uniform(0.35, 1.0));
            pts.push_back({coarse(center.x + r * std::cos(th)),
                           coarse(center.y + r * std::sin(th))});
        }
        auto h = convex_hull(pts);
        if (h.size() < 5) continue;
        Ring r(h.begin(), h.end());
        if (ring_signed_area(r) >= 1.2) return r; // fat hulls keep the blob off the walls
    }
}

// exact lattice point on the segment a-b at micro-step parameter k/1e6: coarse
// lattice coordinates are integer multiples of 1e6 snap units, so every such
// combination lands exactly on the snap lattice and on the line
Point on_edge(Point a, Point b, long long k) {
    const double t = double(k) * 1e-6;
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

} // namespace

PolygonalSet random_convex_polygon(Rng& rng, Point center, double radius, int npts) {
    while (true) {
        std::vector<Point> pts;
        for (int i = 0; i < npts; ++i) {
            const double th = rng.uniform(0, 2 * M_PI);
            const double r = radius * std::sqrt(rng.uniform());
            pts.push_back({center.x + r * std::cos(th), center.y + r * std::sin(th)});
        }
        auto h = convex_hull(pts);
        if (h.size() < 3) continue;
        return make_polygon_set({Ring(h.begin(), h.end())});
    }
}

SharedBoundaryFixture wedge_fixture(std::uint64_t seed) {
    Rng rng(seed);
    SharedBoundaryFixture fx;
    const Ring hull = coarse_hull(rng, {0, 0}, 1.2, 14);
    fx.omega = make_polygon_set({hull});

    // centroid of the hull, for placing the detached blob
    Point c{0, 0};
    for (const Point& p : hull) {
        c.x += p.x / double(hull.size());
        c.y += p.y / double(hull.size());
    }

    PolygonalSet e = random_convex_polygon(rng, c, 0.12, 9);

    const int pieces = 2 + rng.range(3);
    std::vector<int> edges(hull.size());
    for (std::size_t i = 0; i < hull.size(); ++i) edges[i] = int(i);
    for (std::size_t i = hull.size(); i-- > 1;) std::swap(edges[i], edges[rng.range(int(i) + 1)]);

    for (int w = 0; w < pieces && w < int(hull.size()); ++w) {
        const Point a = hull[std::size_t(edges[w])];
        const Point b = hull[(std::size_t(edges[w]) + 1) % hull.size()];
        const double len = norm(b - a);
        if (len < 0.2) continue;
        const long long k0 = 100000 + rng.range(250000);
        const long long k1 = 650000 + rng.range(250000);
        const Point p0 = on_edge(a, b, k0), p1 = on_edge(a, b, k1);
        const Vec2 out{(b.y - a.y) / len, -(b.x - a.x) / len}; // outward normal
        const bool inward = rng.uniform() < 0.6;
        const double depth = rng.uniform(0.03, 0.08) * len * (inward ? -1 : 1);

        // reflected polyline: one or two apex points lifted off the edge,
        // walked back from p1 toward p0 so the ring stays simple
        Ring piece{p0, p1};
        const int apexes = 1 + rng.range(2);
        for (int t = 1; t <= apexes; ++t) {
            const double s = double(t) / (apexes + 1);
            const Point base{p1.x + s * (p0.x - p1.x), p1.y + s * (p0.y - p1.y)};
            piece.push_back(base + (depth * rng.uniform(0.6, 1.0)) * out);
        }
        if (!inward) std::reverse(piece.begin(), piece.end());
        e = boolean(e, make_polygon_set({piece}), BoolOp::Union);
        (inward ? fx.gamma_plus : fx.gamma_minus) += norm(p1 - p0);
    }
    fx.e = e;
    return fx;
}

namespace {

// Clips `container` to the half plane below `cut` and rebuilds the container
// as the union of its two halves. The cut crosses hull edges between lattice
// points; rebuilding inserts the same snapped crossing vertices into the
// container ring, so the wall kept by the clip stays exactly collinear with
// the container instead of hugging it one snap step away.
void clip_below(const PolygonalSet& container, double cut, SharedBoundaryFixture& fx) {
    const PolygonalSet lower =
        make_polygon_set({Ring{{-4, -4}, {4, -4}, {4, cut}, {-4, cut}}});
    const PolygonalSet upper =
        make_polygon_set({Ring{{-4, cut}, {4, cut}, {4, 4}, {-4, 4}}});
    fx.e = boolean(container, lower, BoolOp::Intersection);
    fx.omega = boolean(fx.e, boolean(container, upper, BoolOp::Intersection), BoolOp::Union);
}

} // namespace

SharedBoundaryFixture clipped_fixture(std::uint64_t seed) {
    Rng rng(seed);
    SharedBoundaryFixture fx;
    const Ring hull = coarse_hull(rng, {0, 0}, 1.2, 16);
    // lattice-exact horizontal cut: everything below keeps the container wall
    clip_below(make_polygon_set({hull}), coarse(rng.uniform(0.1, 0.5)), fx);
    const CommonBoundary cb = exact_common_boundary(fx.e, fx.omega);
    fx.gamma_plus = cb.plus_length();
    fx.gamma_minus = cb.minus_length();
    return fx;
}

SharedBoundaryFixture mixed_fixture(std::uint64_t seed) {
    Rng rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        SharedBoundaryFixture fx;
        const Ring hull = coarse_hull(rng, {0, 0}, 1.2, 16);
        clip_below(make_polygon_set({hull}), coarse(rng.uniform(0.15, 0.45)), fx);

        // candidate wall edges fully above the clip, longest first
        std::vector<std::pair<double, std::size_t>> cand;
        double top = -4;
        for (const Ring* ring : fx.e.rings())
            for (const Point& p : *ring) top = std::max(top, p.y);
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const Point a = hull[i], b = hull[(i + 1) % hull.size()];
            const double len = norm(b - a);
            if (std::min(a.y, b.y) > top + 0.05 && len >= 0.25)
                cand.push_back({len, i});
        }
        std::sort(cand.rbegin(), cand.rend());
        if (cand.size() < 2) continue;

        for (std::size_t w = 0; w < cand.size() && w < 4; ++w) {
            const Point a = hull[cand[w].second];
            const Point b = hull[(cand[w].second + 1) % hull.size()];
            const double len = cand[w].first;
            const Vec2 out{(b.y - a.y) / len, -(b.x - a.x) / len};
            const double depth = std::max(0.04, rng.uniform(0.05, 0.10) * len);
            const Ring quad{a, a + depth * out, b + depth * out, b};
            fx.e = boolean(fx.e, make_polygon_set({quad}), BoolOp::Union);
        }

        const CommonBoundary cb = exact_common_boundary(fx.e, fx.omega);
        fx.gamma_plus = cb.plus_length();
        fx.gamma_minus = cb.minus_length();
        const double p = perimeter(fx.e);
        if (cb.total_length() > 0.52 * p && fx.gamma_plus > 0.15 * p &&
            fx.gamma_minus > 0.15 * p)
            return fx;
    }
    throw std::logic_error("mixed_fixture: no admissible hull after 64 attempts");
}

std::vector<PolygonalSet> flange_sequence(int grow_steps, int hold_steps) {
    std::vector<PolygonalSet> seq;
    PolygonalSet f = make_polygon_set({Ring{{0, 0}, {1, 0}, {1, 1}, {0, 1}}});
    seq.push_back(f);
    double x = 0.05;
    for (int j = 2; j < 2 + grow_steps; ++j) {
        const double w = std::pow(2.0, -j);
        const PolygonalSet flange =
            make_polygon_set({Ring{{x, 1}, {x + w, 1}, {x + w, 1 + w}, {x, 1 + w}}});
        f = boolean(f, flange, BoolOp::Union);
        seq.push_back(f);
        x += w + 0.01;
    }
    for (int j = 0; j < hold_steps; ++j) seq.push_back(f);
    return seq;
}

std::vector<PolygonalSet> alternating_sequence(int steps) {
    const PolygonalSet a = make_polygon_set({Ring{{0, 0}, {1, 0}, {1, 1}, {0, 1}}});
    const PolygonalSet b =
        make_polygon_set({Ring{{0.3, 0}, {1.3, 0}, {1.3, 1}, {0.3, 1}}});
    std::vector<PolygonalSet> seq;
    for (int i = 0; i < steps; ++i) seq.push_back(i % 2 ? b : a);
    return seq;
}

} // namespace perimetry::fixtures
