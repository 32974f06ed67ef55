#ifndef PERIMETRY_GRID_HPP
#define PERIMETRY_GRID_HPP

#include <cstddef>
#include <vector>

#include "perimetry/geometry.hpp"

namespace perimetry {

// Scalar field sampled at the nodes of a square grid. Only the support window
// is stored; `at` reads zero outside it, which extends the field to the whole
// Universe (mollified indicators vanish beyond their support).
struct GridField {
    Point origin;           // position of node (0, 0)
    double spacing = 0;     // h_g
    std::size_t nx = 0, ny = 0;
    std::vector<double> values; // row-major, node (i, j) at [j * nx + i]

    double at(std::ptrdiff_t i, std::ptrdiff_t j) const {
        if (i < 0 || j < 0 || std::size_t(i) >= nx || std::size_t(j) >= ny) return 0.0;
        return values[std::size_t(j) * nx + std::size_t(i)];
    }
    Point node_pos(std::ptrdiff_t i, std::ptrdiff_t j) const {
        return {origin.x + double(i) * spacing, origin.y + double(j) * spacing};
    }
    double max_value() const;
};

// Radial bump (1 - r^2/delta^2)^3 on r < delta; mollify normalizes it so the
// cell-center quadrature sums to exactly one.
struct Mollifier {
    double radius = 0;
    double operator()(double r) const {
        if (r >= radius) return 0.0;
        const double q = 1.0 - (r * r) / (radius * radius);
        return q * q * q;
    }
};

// Per-cell coverage fractions of E over the window starting at `origin` with
// `ncx` x `ncy` cells of size h. Exact per cell: row-band clipping plus
// column-resolved trapezoid sums. Shared by mollify and the raster oracle.
std::vector<double> coverage_raster(const PolygonalSet& e, Point origin, double h,
                                    std::size_t ncx, std::size_t ncy);

// phi = (coverage of E) convolved with the normalized bump of radius delta,
// sampled at grid nodes. bounded_cut > 0 replaces E by its intersection with
// the centered disk (256-gon) of that radius first.
GridField mollify(const PolygonalSet& e, double delta, double h_g,
                  double bounded_cut = 0.0);

// Marching-squares contour of {phi > t} with linear interpolation; saddles are
// resolved by the cell-center average. t is nudged upward until it differs
// from every node value, so crossings are strict.
PolygonalSet extract_level_set(const GridField& phi, double t);

// Scans t in {0.10, 0.11, ..., 0.90} and returns the level whose contour
// perimeter is closest to perimeter(e); levels whose contour fails to build
// are skipped.
double choose_level(const GridField& phi, const PolygonalSet& e);

// Smallest sigma in {0, eta, ..., 32*eta}, eta = (0.9 - t)/64, whose level set
// at t + sigma has common boundary with omega below u.measure_tol(). sigma = 0
// reuses f unchanged.
PolygonalSet detach(const PolygonalSet& f, const GridField& phi, double t,
                    const PolygonalSet& omega, const Universe& u);

} // namespace perimetry

#endif
