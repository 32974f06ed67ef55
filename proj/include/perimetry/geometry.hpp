#ifndef PERIMETRY_GEOMETRY_HPP
#define PERIMETRY_GEOMETRY_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "perimetry/errors.hpp"

namespace perimetry {

// Global tolerances. kSnap is the coordinate lattice pitch: every stored vertex
// is an integer multiple of kSnap, and all overlay predicates are exact integer
// arithmetic on that lattice. kCoordLimit keeps lattice cross products and
// intersection numerators inside __int128. kMinRingArea sits two decades above
// the kSnap^2 crossing-snap debris scale but below the smallest deliberate
// feature (a lattice-height bump over a 16-lattice-unit base).
constexpr double kSnap = 1e-9;
constexpr double kMinRingArea = 1e-17;
constexpr double kAngleTol = 1e-7;
constexpr double kOverlapTol = 1e-7;
constexpr double kCoordLimit = 2e3;
constexpr double kUniverseMargin = 10.0; // margin = factor * diameter

struct Vec2 {
    double x = 0.0, y = 0.0;
};
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

struct Point {
    double x = 0.0, y = 0.0;
};
inline Vec2 operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(Point p, Vec2 v) { return {p.x + v.x, p.y + v.y}; }

double snap_coord(double v);
Point snap_point(Point p);

// Closed simple ring, implicit closing edge last->first. Orientation encodes the
// region: CCW rings bound material on the inside, CW rings bound holes; in both
// cases the region lies to the LEFT of the directed edges.
using Ring = std::vector<Point>;

double ring_signed_area(const Ring& r);
double ring_perimeter(const Ring& r);

struct Component {
    Ring outer;              // CCW
    std::vector<Ring> holes; // CW, strictly inside outer
};

// Canonical finite union of polygons-with-holes. Always produced through the
// snap-rounded overlay, so rings are simple, pairwise non-crossing, and
// coincident opposite edges have been cancelled.
class PolygonalSet {
  public:
    PolygonalSet() = default;
    explicit PolygonalSet(std::vector<Component> comps) : components_(std::move(comps)) {}

    const std::vector<Component>& components() const { return components_; }
    bool empty() const { return components_.empty(); }
    std::vector<const Ring*> rings() const;
    std::size_t vertex_count() const;

  private:
    std::vector<Component> components_;
};

struct Universe {
    double xmin = 0, ymin = 0, xmax = 0, ymax = 0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double diameter() const { return std::hypot(width(), height()); }
    double measure_tol() const { return 1e-9 * diameter(); } // tau_meas
    PolygonalSet box() const;
    bool contains_strictly(const PolygonalSet& s) const;

    // Bounding box of the inputs expanded by margin_factor * diameter on every side.
    static Universe around(const std::vector<const PolygonalSet*>& sets,
                           double margin_factor = kUniverseMargin);
};

enum class BoolOp { Union, Intersection, Difference, SymmetricDifference };

// Validating constructor: rings may be arbitrarily oriented; orientation is
// normalized by containment depth (even depth = material). Crossing rings raise
// SelfIntersection/NestingViolation, rings below kMinRingArea raise DegenerateRing.
PolygonalSet make_polygon_set(const std::vector<Ring>& rings);

PolygonalSet boolean(const PolygonalSet& a, const PolygonalSet& b, BoolOp op);
PolygonalSet complement(const PolygonalSet& s, const Universe& u);

double area(const PolygonalSet& s);
double perimeter(const PolygonalSet& s);
double symmetric_difference_area(const PolygonalSet& a, const PolygonalSet& b);

Point centroid_hint(const PolygonalSet& s); // bbox center, for plots and probes
void bounding_box(const PolygonalSet& s, double& xmin, double& ymin, double& xmax, double& ymax);

PolygonalSet translated(const PolygonalSet& s, Vec2 d);
PolygonalSet scaled(const PolygonalSet& s, double factor, Point about = {0, 0});
PolygonalSet rotated(const PolygonalSet& s, double angle, Point about = {0, 0});

// Regular n-gon inscribed in the circle |x - c| = r, first vertex at angle phase.
Ring regular_ngon(Point c, double r, int n, double phase = 0.0);

} // namespace perimetry

#endif
