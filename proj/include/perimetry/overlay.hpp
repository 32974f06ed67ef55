#ifndef PERIMETRY_OVERLAY_HPP
#define PERIMETRY_OVERLAY_HPP

// Snap-lattice arrangement machinery shared by the boolean overlay and the
// boundary measurements. Coordinates are int64 lattice multiples of kSnap;
// every predicate is exact in __int128 (inputs are capped at kCoordLimit, so
// intersection numerators stay below 2^127).

#include <cstdint>
#include <vector>

#include "perimetry/geometry.hpp"

namespace perimetry {
namespace lattice {

using i64 = std::int64_t;
using i128 = __int128;

struct IPt {
    i64 x = 0, y = 0;
    friend bool operator==(IPt a, IPt b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(IPt a, IPt b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }
};

IPt to_lattice(Point p);
Point from_lattice(IPt p);

inline i128 cross(IPt o, IPt a, IPt b) {
    return i128(a.x - o.x) * i128(b.y - o.y) - i128(a.y - o.y) * i128(b.x - o.x);
}

// Directed edge, region to the LEFT. `set` tags the owning input (0 or 1).
struct Edge {
    IPt a, b;
    int set = 0;
};

// Splits all edges at mutual crossings, T-junctions and collinear overlap
// endpoints, iterating until the snapped arrangement is stable. Afterwards two
// distinct sub-edges are either disjoint, share endpoints, or coincide as an
// unordered pair. Snapped cut points can bend sub-edges into new crossings a
// few lattice steps away; every cut becomes an endpoint, so rounds make
// strict progress and deep cascades need the generous cap.
std::vector<Edge> split_arrangement(std::vector<Edge> edges, int max_rounds = 40);

// Winding number of the ring set at a point OFF the boundary. Point given in
// doubled lattice coordinates (so edge midpoints are representable).
int winding_at(const std::vector<Edge>& edges, int set, i64 px2, i64 py2);

// Winding number immediately beside point m (doubled coords) in direction dir:
// the value of the winding at m + 0+ * dir. Edges collinear with the ray through
// m contribute nothing, which is exactly the "beside" semantics.
int winding_beside(const std::vector<Edge>& edges, int set, i64 px2, i64 py2, i64 dirx, i64 diry);

struct RawRing {
    std::vector<IPt> pts;
    double signed_area; // in coordinate units^2
};

// Stitches directed edges (region-left, at most one per unordered vertex pair)
// into closed rings, dropping rings below kMinRingArea. Throws OverlayFailure on
// open chains.
std::vector<RawRing> stitch(std::vector<Edge> kept);

// Assembles stitched rings into components (holes assigned to the smallest
// containing outer).
PolygonalSet assemble(const std::vector<RawRing>& rings);

// Full boolean overlay of two canonical sets.
PolygonalSet overlay(const PolygonalSet& a, const PolygonalSet& b, BoolOp op);

// Canonicalization used by make_polygon_set: material is the region of odd
// crossing parity, so input ring orientations are irrelevant.
PolygonalSet canonicalize(const std::vector<Ring>& rings);

std::vector<Edge> collect_edges(const PolygonalSet& s, int set_tag);

} // namespace lattice
} // namespace perimetry

#endif
