#ifndef PERIMETRY_DENSITY_HPP
#define PERIMETRY_DENSITY_HPP

#include <string>
#include <vector>

#include "perimetry/geometry.hpp"
#include "perimetry/grid.hpp"

namespace perimetry {

// Volume density f. Registry forms only; user-grid carries a sampled field
// with bilinear interpolation, clamped to the window edge so it stays
// positive wherever the quadrature probes.
enum class DensityKind { Const, RadialStep, ExpX, CuspG, UserGrid };

struct Density {
    DensityKind kind = DensityKind::Const;
    std::vector<double> params; // Const: c; RadialStep: r0, inner, outer
    GridField field;            // UserGrid only
    bool declared_continuous = true;

    double operator()(Point p) const;
};

// spec strings: "const:c", "radial-step:r0,inner,outer", "exp-x", "cusp-g"
Density parse_density(const std::string& spec);
Density user_grid_density(GridField field);

// Direction modulation: positively 1-homogeneous gauge in nu. The unit ball
// {v : gauge(v) <= 1} must be convex; concave-test deliberately is not and
// exists to exercise the gate.
enum class GaugeKind { Isotropic, Ellipse, ConcaveTest };

struct DirectionalDensity {
    Density base;
    GaugeKind gauge_kind = GaugeKind::Isotropic;
    double a = 1, b = 1; // Ellipse semiaxis weights

    double gauge(Vec2 v) const;
    double operator()(Point x, Vec2 nu) const { return base(x) * gauge(nu); }
};

// spec strings: "isotropic", "ellipse:a,b", "concave-test"
DirectionalDensity parse_directional(const std::string& base_spec,
                                     const std::string& modulation_spec);

// Subadditivity of the gauge sampled over 360 direction pairs; a violation
// means the unit ball is not convex.
void check_gauge_convexity(const DirectionalDensity& g);

// Throws DiscontinuousDensity unless the registry flag says continuous.
void require_continuous(const Density& f);

// Largest relative jump of f over probe pairs separated by kSnap; candidate
// jumps are found on coarse rays through the box and refined by bisection.
// Sub-snap oscillation can hide from this check; the registry flag is the
// source of truth and the two must agree on every registry entry.
double sampled_max_jump(const Density& f, double xmin, double ymin, double xmax,
                        double ymax);
bool sampled_continuous(const Density& f, double xmin, double ymin, double xmax,
                        double ymax);

// integral of f over E: every directed edge spans a trapezoid down to a
// baseline below the set, each trapezoid splits into two triangles handled by
// a degree-7 rule. Signs follow edge direction, so holes cancel exactly.
double weighted_area(const PolygonalSet& e, const Density& f);

// scalar line integral of f along [a, b], 9-point Gauss rule
double line_integral(Point a, Point b, const Density& f);

// integral of g(x, nu) along [a, b] with the fixed normal nu
double weighted_edge_integral(Point a, Point b, Vec2 nu, const DirectionalDensity& g);

// g-perimeter of E; with region given, only the part of bd(E) inside the open
// interior of region counts.
double weighted_perimeter(const PolygonalSet& e, const DirectionalDensity& g,
                          const PolygonalSet* region = nullptr);

struct TruncationStep {
    double r = 0;
    double tail_area = 0, tail_perimeter = 0, slice = 0;
    bool tail_ok = false, slice_ok = false;
};

// Smallest scanned R (geometric scan R = 0.1 * 1.1^k) at which cutting E to
// the centered disk of radius R costs less than eps in f-volume and g-perimeter:
// the scan first finds R0 with |E \ B_R0|_f < eps and P_g(E \ B_R0) < eps/2,
// then the first R >= R0 whose f-integral over E cap bd(B_R) is <= eps/(2m).
// Every candidate circle is sampled for the hypothesis g <= m*f first.
double truncation_radius(const PolygonalSet& e, const Density& f,
                         const DirectionalDensity& g, double m, double eps,
                         std::vector<TruncationStep>* log = nullptr);

} // namespace perimetry

#endif
