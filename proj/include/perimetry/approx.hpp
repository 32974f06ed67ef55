#ifndef PERIMETRY_APPROX_HPP
#define PERIMETRY_APPROX_HPP

#include "perimetry/density.hpp"
#include "perimetry/geometry.hpp"
#include "perimetry/pushout.hpp"
#include "perimetry/verify.hpp"

namespace perimetry {

struct ApproxResult {
    PolygonalSet f;
    ApproxReport report;
    PushoutTrace trace; // detachment phase record
    double delta = 0;   // mollifier radius that produced f
    double level = 0;   // accepted level value
    double radius = 0;  // truncation radius, when bounded output was requested
};

// Polygonal F with boundary disjoint from bd(Omega) whose total perimeter,
// in-container perimeter, and volume match E within eps (the shared-boundary
// clause within the measure tolerance). Phase 1 strips the shared boundary
// with budget eps/3; phase 2 mollifies the result and extracts a level-set
// contour, halving the mollifier radius (at most 12 times) until the measured
// report passes. Each radius tries the perimeter-matching level first, then
// levels near 1/2 when only the in-container clause missed, since those keep
// the contour inside the clearance phase 1 opened along the wall. Throws
// BudgetExhausted when refinement runs out; `best`, when given, then holds
// the closest failing attempt for inspection.
ApproxResult approximate_in_container(const PolygonalSet& e, const PolygonalSet& omega,
                                      double eps, const Universe& u,
                                      ApproxResult* best = nullptr);

struct WeightedOptions {
    bool want_bounded = false; // cut E to a centered disk before approximating
    double g_bound = 0;        // m with g <= m*f near infinity; required when bounded
};

// Same engine measured in the weighted metrics: f-volume and g-perimeter. f
// and the positional factor of g must be continuous and the gauge convex.
// Phase-1 bump heights shrink by g(midpoint, normal) relative to its sampled
// maximum. With want_bounded the budget splits evenly: eps/2 buys the cut
// radius, eps/2 drives the pipeline on the cut set; the final report still
// measures F against the original E with the full eps.
ApproxResult approximate_weighted(const PolygonalSet& e, const PolygonalSet& omega,
                                  const Density& f, const DirectionalDensity& g,
                                  double eps, const Universe& u,
                                  const WeightedOptions& opts = {},
                                  ApproxResult* best = nullptr);

} // namespace perimetry

#endif
