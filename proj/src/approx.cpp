#include "perimetry/approx.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "perimetry/errors.hpp"
#include "perimetry/grid.hpp"

namespace perimetry {

namespace {

constexpr int kMaxRefine = 12;

// Sampled sup of f and of g over the joint bounding box (48x48 positions, 256
// directions for the gauge). Converts a weighted budget into a geometric one:
// an area change a costs at most f_max * a, a length change l at most g_max * l.
struct DensityBounds {
    double f_max = 1;
    double g_max = 1;
};

DensityBounds sample_bounds(const PolygonalSet& e, const PolygonalSet& omega,
                            const Density& f, const DirectionalDensity& g) {
    double xmin, ymin, xmax, ymax;
    bounding_box(e, xmin, ymin, xmax, ymax);
    if (!omega.empty()) {
        double x2, y2, x3, y3;
        bounding_box(omega, x2, y2, x3, y3);
        xmin = std::min(xmin, x2);
        ymin = std::min(ymin, y2);
        xmax = std::max(xmax, x3);
        ymax = std::max(ymax, y3);
    }
    double gauge_max = 0;
    for (int k = 0; k < 256; ++k) {
        double th = 3.14159265358979323846 * (2.0 * k) / 256.0;
        gauge_max = std::max(gauge_max, g.gauge({std::cos(th), std::sin(th)}));
    }
    DensityBounds b;
    b.f_max = 0;
    double base_max = 0;
    for (int i = 0; i <= 48; ++i) {
        for (int j = 0; j <= 48; ++j) {
            Point p{xmin + (xmax - xmin) * i / 48.0, ymin + (ymax - ymin) * j / 48.0};
            b.f_max = std::max(b.f_max, f(p));
            base_max = std::max(base_max, g.base(p));
        }
    }
    b.f_max = std::max(b.f_max, 1e-12);
    b.g_max = std::max(base_max * gauge_max, 1e-12);
    return b;
}

double clause_excess(const ApproxReport& rep) {
    double score = 0;
    for (const auto& c : rep.clauses())
        score = std::max(score, c.measured / std::max(c.budget, 1e-300));
    return score;
}

bool only_in_container_fails(const ApproxReport& rep) {
    bool in_container_failed = false;
    for (const auto& c : rep.clauses()) {
        if (c.ok())
            continue;
        if (c.name != "in-container-perimeter")
            return false;
        in_container_failed = true;
    }
    return in_container_failed;
}

ApproxResult core(const PolygonalSet& e0, const PolygonalSet& omega, double eps,
                  const Universe& u, CheckMode mode, const Density* f,
                  const DirectionalDensity* g, const WeightedOptions& wopts,
                  ApproxResult* best_out) {
    if (!(eps > 0))
        throw InvalidArgument("approximation budget must be positive");

    ApproxResult res;
    PolygonalSet work = e0;
    double budget = eps;
    if (mode == CheckMode::Weighted) {
        require_continuous(*f);
        require_continuous(g->base);
        check_gauge_convexity(*g);
        if (wopts.want_bounded) {
            if (!(wopts.g_bound > 0))
                throw InvalidArgument("bounded output needs the bound m with g <= m*f");
            res.radius = truncation_radius(e0, *f, *g, wopts.g_bound, eps / 2);
            PolygonalSet ball = make_polygon_set({regular_ngon({0, 0}, res.radius, 256)});
            work = boolean(work, ball, BoolOp::Intersection);
            budget = eps / 2;
        }
    }

    HeightWeight weight = nullptr;
    double m_big = 1;
    if (mode == CheckMode::Weighted) {
        DensityBounds db = sample_bounds(work, omega, *f, *g);
        m_big = std::max({1.0, db.f_max, db.g_max});
        double g_sup = db.g_max;
        weight = [g, g_sup](Point mid, Vec2 nu, const OrientedSegment&) {
            return std::clamp((*g)(mid, nu) / g_sup, 1e-3, 1.0);
        };
    }

    RemoveOptions ropts;
    ropts.weight = weight;
    PolygonalSet detached =
        remove_common_boundary(work, omega, budget / (3 * m_big), u, &res.trace, ropts);

    if (detached.empty()) {
        res.f = detached;
        res.report = check_clauses(e0, detached, omega, eps, u, mode, f, g);
        res.report.passes = static_cast<int>(res.trace.passes.size());
        if (res.report.pass())
            return res;
        if (best_out)
            *best_out = res;
        throw BudgetExhausted("empty working set fails the clauses",
                              clause_excess(res.report));
    }

    double xmin, ymin, xmax, ymax;
    bounding_box(detached, xmin, ymin, xmax, ymax);
    double diam = std::hypot(xmax - xmin, ymax - ymin);
    double delta0 = std::min(0.5 * budget, diam / 8);

    double best_score = std::numeric_limits<double>::infinity();
    std::string last_err = "no contour attempted";
    for (int j = 0; j <= kMaxRefine; ++j) {
        double delta = delta0 / static_cast<double>(1 << j);
        // Halving delta quadruples the node count; once the grid is over
        // budget every later iteration is too, so stop refining.
        double h = delta / 5, pad = delta + 2 * h;
        double nodes = ((xmax - xmin + 2 * pad) / h + 2) * ((ymax - ymin + 2 * pad) / h + 2);
        if (nodes > 12e6) {
            last_err = "mollification grid over budget";
            break;
        }
        try {
            GridField phi = mollify(detached, delta, delta / 5);
            ApproxReport last;
            auto attempt = [&](double level) {
                PolygonalSet cand = detach(extract_level_set(phi, level), phi, level, omega, u);
                ApproxReport rep = check_clauses(e0, cand, omega, eps, u, mode, f, g);
                rep.passes = static_cast<int>(res.trace.passes.size());
                last = rep;
                double score = clause_excess(rep);
                if (score < best_score) {
                    best_score = score;
                    res.f = std::move(cand);
                    res.report = rep;
                    res.delta = delta;
                    res.level = level;
                }
                return rep.pass();
            };
            double t = choose_level(phi, detached);
            if (attempt(t))
                return res;
            // The level scan matches total perimeter only. When the sole miss
            // is the in-container length, the contour crossed the wall along
            // one shared-normal class; levels near 1/2 keep it within the
            // clearance the detachment passes opened, on the outside.
            if (only_in_container_fails(last)) {
                for (int k = 1; k <= 21 && !res.report.pass(); ++k) {
                    double t2 = 0.5 + 0.01 * (k / 2) * (k % 2 ? -1 : 1);
                    if (std::abs(t2 - t) < 1e-9)
                        continue;
                    try {
                        if (attempt(t2))
                            return res;
                    } catch (const Error& err) {
                        last_err = err.what();
                    }
                }
            }
        } catch (const Error& err) {
            last_err = err.what();
        }
    }

    if (best_out)
        *best_out = res;
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "no admissible approximation after %d refinements "
                  "(best clause excess %.3g; last skip: %s)",
                  kMaxRefine + 1, best_score, last_err.c_str());
    throw BudgetExhausted(buf, best_score);
}

} // namespace

ApproxResult approximate_in_container(const PolygonalSet& e, const PolygonalSet& omega,
                                      double eps, const Universe& u, ApproxResult* best) {
    return core(e, omega, eps, u, CheckMode::Approx, nullptr, nullptr, {}, best);
}

ApproxResult approximate_weighted(const PolygonalSet& e, const PolygonalSet& omega,
                                  const Density& f, const DirectionalDensity& g,
                                  double eps, const Universe& u,
                                  const WeightedOptions& opts, ApproxResult* best) {
    return core(e, omega, eps, u, CheckMode::Weighted, &f, &g, opts, best);
}

} // namespace perimetry
