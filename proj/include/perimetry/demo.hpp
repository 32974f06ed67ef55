#pragma once

#include <string>

namespace perimetry {

// Output of a built-in demonstration sweep: a CSV table (header row plus one
// row per sweep step, schema in docs/report-schema.md), an SVG figure of a
// representative step, and whether the sweep's numeric claims held.
struct DemoResult {
    std::string csv;
    std::string svg;
    bool pass = false;
};

// Offset-family obstruction. E is a 64-gon inscribed in the unit circle and
// the perimeter density jumps from 1 to 2 across that circle. The competitors
// are scaled copies of E shrinking back onto it from outside, so their volume
// gap to E vanishes while every one of them pays the outer density along its
// whole boundary. Claims checked: min |P_g(F) - P_g(E)| over the sweep stays
// above 0.9 * 2pi, and the symmetric difference decreases below 0.02.
DemoResult demo_example51();

// Unbounded-truncation obstruction. E is the region between y = +x^-2 and
// y = -x^-2 for x in [1, 8] with unit volume density, and the perimeter
// density grows like e^x inside the narrowing cusp. Cutting at x = T leaves
// volume 2(1/T - 1/8) outside but the cut segment's weighted length exceeds
// e^(T-1) / (2 T^2), growing without bound. Claims checked for T = 2..6: cut
// weighted length >= that bound and strictly increasing, volume outside the
// cut <= 2/T.
DemoResult demo_example52();

} // namespace perimetry
