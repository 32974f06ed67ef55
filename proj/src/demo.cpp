#include "perimetry/demo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <vector>

#include "perimetry/density.hpp"
#include "perimetry/geometry.hpp"
#include "perimetry/io.hpp"

namespace perimetry {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

DemoResult demo_example51() {
    const PolygonalSet e = make_polygon_set({regular_ngon({0, 0}, 1.0, 64)});
    const DirectionalDensity g = parse_directional("radial-step:1,1,2", "isotropic");
    const double pg_e = weighted_perimeter(e, g);

    DemoResult res;
    res.csv = "tau,sym_diff,per_gap\n";
    double min_gap = std::numeric_limits<double>::infinity();
    double prev_sym = std::numeric_limits<double>::infinity();
    double last_sym = prev_sym;
    bool shrinking = true;
    PolygonalSet mid;
    // stop while the scaled copy's edges still clear the unit circle; the
    // 64-gon chord sag is 1 - cos(pi/64) = 1.2e-3, so tau = 2.05e-3 keeps the
    // inradius above 1 and the outer density active on the whole boundary
    double tau = 0.3;
    for (int k = 0; k < 13; ++k, tau *= 0.66) {
        const PolygonalSet f = make_polygon_set({regular_ngon({0, 0}, 1.0 + tau, 64)});
        const double sym = symmetric_difference_area(e, f);
        const double gap = std::abs(weighted_perimeter(f, g) - pg_e);
        res.csv += num(tau) + "," + num(sym) + "," + num(gap) + "\n";
        min_gap = std::min(min_gap, gap);
        if (sym >= prev_sym) shrinking = false;
        prev_sym = last_sym = sym;
        if (k == 6) mid = f;
    }
    res.pass = min_gap >= 0.9 * 2 * std::numbers::pi && shrinking && last_sym < 0.02;

    const Universe u = Universe::around({&e, &mid});
    res.svg = svg_figure(u, &e, nullptr, &mid);
    return res;
}

DemoResult demo_example52() {
    // vertices exactly on y = +-x^-2 at binary-rational x, so every integer
    // cut abscissa is itself a vertex coordinate
    const double h = 1.0 / 128;
    std::vector<Point> bottom, top;
    for (int i = 0; i <= 896; ++i) {
        const double x = 1.0 + i * h;
        bottom.push_back({x, -1.0 / (x * x)});
        top.push_back({x, 1.0 / (x * x)});
    }
    Ring ring = bottom;
    ring.insert(ring.end(), top.rbegin(), top.rend());
    const PolygonalSet e = make_polygon_set({ring});

    const Density f = parse_density("const:1");
    const DirectionalDensity g = parse_directional("cusp-g", "isotropic");
    const double vol_e = weighted_area(e, f);

    DemoResult res;
    res.csv = "T,vol_outside,cut_glength,bound\n";
    bool ok = true;
    double prev_cut = 0;
    PolygonalSet shown;
    for (int t = 2; t <= 6; ++t) {
        const Ring window{{0.5, -2}, {double(t), -2}, {double(t), 2}, {0.5, 2}};
        const PolygonalSet box = make_polygon_set({window});
        const PolygonalSet et = boolean(e, box, BoolOp::Intersection);
        const double vol_outside = vol_e - weighted_area(et, f);
        // the cut is the only part of the truncated boundary on the window
        // frame, so it is the region-restricted perimeter's complement
        const double cut = weighted_perimeter(et, g) - weighted_perimeter(et, g, &box);
        const double bound = std::exp(t - 1.0) / (2.0 * t * t);
        res.csv += std::to_string(t) + "," + num(vol_outside) + "," + num(cut) + "," +
                   num(bound) + "\n";
        ok = ok && cut >= bound && cut > prev_cut && vol_outside <= 2.0 / t;
        prev_cut = cut;
        if (t == 4) shown = et;
    }
    res.pass = ok;

    const Universe u = Universe::around({&e});
    res.svg = svg_figure(u, &e, nullptr, &shown);
    return res;
}

} // namespace perimetry
