#ifndef PERIMETRY_BOUNDARY_HPP
#define PERIMETRY_BOUNDARY_HPP

#include <string>
#include <vector>

#include "perimetry/geometry.hpp"

namespace perimetry {

// Piece of reduced boundary with its outward normal (unit, right of the
// directed edge since material lies left).
struct OrientedSegment {
    Point a, b;
    Vec2 normal;
    double length() const { return norm(b - a); }
};

// Shared boundary of (E, Omega) split by normal agreement: gamma_plus collects
// the segments where the outward normals coincide (E locally inside Omega),
// gamma_minus where they oppose.
struct CommonBoundary {
    std::vector<OrientedSegment> gamma_plus;
    std::vector<OrientedSegment> gamma_minus;

    double plus_length() const;
    double minus_length() const;
    double total_length() const { return plus_length() + minus_length(); }
};

// Length of bd(E) inside the open interior of omega; boundary-on-boundary
// portions are excluded exactly (open-set convention).
double relative_perimeter(const PolygonalSet& e, const PolygonalSet& omega);

// Maximal near-collinear overlaps between bd(E) and bd(Omega): pairs of edges
// within angle_tol of parallel and within overlap_tol lateral distance count,
// so exact coincidence on the snap lattice is the common case, and hugging
// level-set contours are caught as well. Segment geometry is taken from E.
CommonBoundary common_boundary(const PolygonalSet& e, const PolygonalSet& omega,
                               double overlap_tol = kOverlapTol,
                               double angle_tol = kAngleTol);

// Class-agnostic total length of bd(A) lying in near-collinear overlap with
// bd(B); used to measure how much boundary two successive sets share.
double boundary_overlap_length(const PolygonalSet& a, const PolygonalSet& b,
                               double overlap_tol = kOverlapTol,
                               double angle_tol = kAngleTol);

// Tolerance-free variant on the exact lattice arrangement: only sub-edges of
// bd(E) that coincide with sub-edges of bd(Omega) count, adjacent collinear
// pieces are merged back into maximal segments. This is the metric the
// detachment passes drive to zero; near-parallel hugging below the snap scale
// does not register here, which keeps bump tops from re-entering the count.
CommonBoundary exact_common_boundary(const PolygonalSet& e, const PolygonalSet& omega);

// Sub-edges of bd(E) classified against omega on the exact lattice
// arrangement. Used by the open-set perimeter, the weighted restricted
// perimeter and the truncation scan.
enum class SidePosition { Inside, Outside, OnBoundary };
struct ClassifiedSubEdge {
    Point a, b;
    Vec2 normal;
    SidePosition pos;
};
std::vector<ClassifiedSubEdge> classify_boundary(const PolygonalSet& e,
                                                 const PolygonalSet& omega);

std::string common_boundary_csv(const CommonBoundary& cb);

} // namespace perimetry

#endif
