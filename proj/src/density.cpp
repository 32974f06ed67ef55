#include "perimetry/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "perimetry/boundary.hpp"

namespace perimetry {

namespace {

double smoothstep(double s) {
    s = std::clamp(s, 0.0, 1.0);
    return s * s * (3 - 2 * s);
}

// Example profile at fixed x >= 1: e^x near the axis, 1/x^2 on and beyond the
// curve |y| = 1/x^2, monotone cubic blend in |y| between the two prescribed
// regions.
double cusp_profile(double x, double ay) {
    const double inv2 = 1.0 / (x * x);
    const double hi = std::exp(x), lo = inv2;
    if (ay <= 0.5 * inv2) return hi;
    if (ay >= inv2) return lo;
    return hi + smoothstep((ay - 0.5 * inv2) / (0.5 * inv2)) * (lo - hi);
}

double bilinear_clamped(const GridField& f, Point p) {
    if (f.nx < 2 || f.ny < 2) throw InvalidArgument("user-grid field needs 2x2 nodes");
    double fx = (p.x - f.origin.x) / f.spacing;
    double fy = (p.y - f.origin.y) / f.spacing;
    fx = std::clamp(fx, 0.0, double(f.nx - 1));
    fy = std::clamp(fy, 0.0, double(f.ny - 1));
    const std::size_t i = std::min(std::size_t(fx), f.nx - 2);
    const std::size_t j = std::min(std::size_t(fy), f.ny - 2);
    const double sx = fx - double(i), sy = fy - double(j);
    const double v00 = f.values[j * f.nx + i], v10 = f.values[j * f.nx + i + 1];
    const double v01 = f.values[(j + 1) * f.nx + i], v11 = f.values[(j + 1) * f.nx + i + 1];
    return (1 - sx) * (1 - sy) * v00 + sx * (1 - sy) * v10 + (1 - sx) * sy * v01 +
           sx * sy * v11;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

std::vector<double> parse_params(const std::string& s, std::size_t want,
                                 const char* what) {
    const auto parts = split(s, ',');
    std::vector<double> out;
    for (const auto& p : parts) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(p, &used));
            if (used != p.size()) throw std::invalid_argument(p);
        } catch (const std::exception&) {
            throw InvalidArgument(std::string(what) + ": bad number '" + p + "'");
        }
    }
    if (out.size() != want)
        throw InvalidArgument(std::string(what) + ": expected " + std::to_string(want) +
                              " parameters");
    return out;
}

// degree-7 rule on a triangle: 13 points, barycentric orbits
struct TriOrbit {
    double w, a, b, c;
    int perms; // 1, 3 or 6
};
constexpr TriOrbit kTriRule[] = {
    {-0.149570044467670, 1.0 / 3, 1.0 / 3, 1.0 / 3, 1},
    {0.175615257433204, 0.479308067841923, 0.260345966079038, 0.260345966079038, 3},
    {0.053347235608839, 0.869739794195568, 0.065130102902216, 0.065130102902216, 3},
    {0.077113760890257, 0.638444188569809, 0.312865496004875, 0.048690315425316, 6},
};

// 9-point Gauss-Legendre on [-1, 1]
constexpr double kGaussX[9] = {0.0,
                               -0.324253423403809,
                               0.324253423403809,
                               -0.613371432700590,
                               0.613371432700590,
                               -0.836031107326636,
                               0.836031107326636,
                               -0.968160239507626,
                               0.968160239507626};
constexpr double kGaussW[9] = {0.330239355001260, 0.312347077040003, 0.312347077040003,
                               0.260610696402935, 0.260610696402935, 0.180648160694857,
                               0.180648160694857, 0.081274388361574, 0.081274388361574};

double sample_checked(const Density& f, Point p) {
    const double v = f(p);
    if (!(v > 0)) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "density is %.3g at (%.6g, %.6g)", v, p.x, p.y);
        throw NonPositiveDensity(msg);
    }
    return v;
}

// signed integral of f over the triangle (p0, p1, p2)
double tri_integral(Point p0, Point p1, Point p2, const Density& f) {
    const double area2 = cross(p1 - p0, p2 - p0);
    if (area2 == 0) return 0;
    double acc = 0;
    for (const TriOrbit& o : kTriRule) {
        double bary[3] = {o.a, o.b, o.c};
        const int reps = o.perms == 1 ? 1 : 3;
        for (int r = 0; r < reps; ++r) {
            for (int swap = 0; swap < (o.perms == 6 ? 2 : 1); ++swap) {
                const double a = bary[0], b = swap ? bary[2] : bary[1],
                             c = swap ? bary[1] : bary[2];
                const Point q{a * p0.x + b * p1.x + c * p2.x,
                              a * p0.y + b * p1.y + c * p2.y};
                acc += o.w * sample_checked(f, q);
            }
            std::rotate(bary, bary + 1, bary + 3);
        }
    }
    return 0.5 * area2 * acc;
}

double gauge_max_on_circle(const DirectionalDensity& g) {
    double m = 0;
    for (int k = 0; k < 128; ++k) {
        const double th = 2 * M_PI * k / 128.0;
        m = std::max(m, g.gauge({std::cos(th), std::sin(th)}));
    }
    return m;
}

} // namespace

double Density::operator()(Point p) const {
    switch (kind) {
    case DensityKind::Const: return params[0];
    case DensityKind::RadialStep:
        return std::hypot(p.x, p.y) <= params[0] ? params[1] : params[2];
    case DensityKind::ExpX: return std::exp(p.x);
    case DensityKind::CuspG: {
        const double ay = std::abs(p.y);
        if (p.x >= 1.0) return cusp_profile(p.x, ay);
        if (p.x <= 0.5) return 1.0;
        // continuous ramp onto the x = 1 profile; the pure form is 1 for all
        // x < 1, which would jump at the x = 1 axis
        return 1.0 + smoothstep(2 * (p.x - 0.5)) * (cusp_profile(1.0, ay) - 1.0);
    }
    case DensityKind::UserGrid: return bilinear_clamped(field, p);
    }
    throw InvalidArgument("unknown density kind");
}

Density parse_density(const std::string& spec) {
    const auto head = split(spec, ':');
    Density d;
    if (head[0] == "const") {
        if (head.size() != 2) throw InvalidArgument("const needs a value, e.g. const:1");
        d.kind = DensityKind::Const;
        d.params = parse_params(head[1], 1, "const");
    } else if (head[0] == "radial-step") {
        if (head.size() != 2)
            throw InvalidArgument("radial-step needs r0,inner,outer");
        d.kind = DensityKind::RadialStep;
        d.params = parse_params(head[1], 3, "radial-step");
        if (!(d.params[0] > 0)) throw InvalidArgument("radial-step: r0 must be positive");
        d.declared_continuous = d.params[1] == d.params[2];
    } else if (spec == "exp-x") {
        d.kind = DensityKind::ExpX;
    } else if (spec == "cusp-g") {
        d.kind = DensityKind::CuspG;
    } else if (head[0] == "user-grid") {
        throw InvalidArgument("user-grid densities are built from a loaded field");
    } else {
        throw InvalidArgument("unknown density '" + spec + "'");
    }
    return d;
}

Density user_grid_density(GridField field) {
    Density d;
    d.kind = DensityKind::UserGrid;
    d.field = std::move(field);
    return d;
}

double DirectionalDensity::gauge(Vec2 v) const {
    switch (gauge_kind) {
    case GaugeKind::Isotropic: return norm(v);
    case GaugeKind::Ellipse: return std::hypot(a * v.x, b * v.y);
    case GaugeKind::ConcaveTest: {
        const double s = std::sqrt(std::abs(v.x)) + std::sqrt(std::abs(v.y));
        return s * s;
    }
    }
    throw InvalidArgument("unknown gauge kind");
}

DirectionalDensity parse_directional(const std::string& base_spec,
                                     const std::string& modulation_spec) {
    DirectionalDensity g;
    g.base = parse_density(base_spec);
    const auto head = split(modulation_spec, ':');
    if (modulation_spec == "isotropic") {
        g.gauge_kind = GaugeKind::Isotropic;
    } else if (head[0] == "ellipse") {
        if (head.size() != 2) throw InvalidArgument("ellipse needs a,b");
        const auto p = parse_params(head[1], 2, "ellipse");
        if (!(p[0] > 0) || !(p[1] > 0))
            throw InvalidArgument("ellipse: weights must be positive");
        g.gauge_kind = GaugeKind::Ellipse;
        g.a = p[0];
        g.b = p[1];
    } else if (modulation_spec == "concave-test") {
        g.gauge_kind = GaugeKind::ConcaveTest;
    } else {
        throw InvalidArgument("unknown modulation '" + modulation_spec + "'");
    }
    return g;
}

void check_gauge_convexity(const DirectionalDensity& g) {
    // 1-homogeneous gauges are convex iff subadditive; pair separations sweep
    // (0, 179] degrees
    for (int i = 0; i < 360; ++i) {
        const double t1 = i * M_PI / 180.0;
        const double t2 = t1 + (double(i % 179) + 1.0) * M_PI / 180.0;
        const Vec2 u{std::cos(t1), std::sin(t1)}, v{std::cos(t2), std::sin(t2)};
        const double lhs = g.gauge(u + v);
        const double rhs = g.gauge(u) + g.gauge(v);
        if (lhs > rhs * (1 + 1e-12)) {
            char msg[128];
            std::snprintf(msg, sizeof msg,
                          "gauge is superadditive at %d deg + %d deg (%.6g > %.6g)", i,
                          int(i % 179) + 1 + i, lhs, rhs);
            throw NonConvexGauge(msg);
        }
    }
}

void require_continuous(const Density& f) {
    if (!f.declared_continuous)
        throw DiscontinuousDensity("density form is flagged discontinuous");
}

double sampled_max_jump(const Density& f, double xmin, double ymin, double xmax,
                        double ymax) {
    const Point center{0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
    const double reach = 0.5 * std::hypot(xmax - xmin, ymax - ymin);
    double worst = 0;

    auto rel_jump = [&](Point a, Point b) {
        const double fa = f(a), fb = f(b);
        const double local = std::max({std::abs(fa), std::abs(fb), 1e-300});
        return std::abs(fa - fb) / local;
    };
    auto probe_ray = [&](Point from, Vec2 dir) {
        const int steps = 256;
        for (int s = 0; s < steps; ++s) {
            Point a = from + (reach * s / steps) * dir;
            Point b = from + (reach * (s + 1) / steps) * dir;
            if (rel_jump(a, b) < 1e-3) continue;
            // bisect the jump down to a snap-length pair
            while (norm(b - a) > kSnap) {
                const Point mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
                if (rel_jump(a, mid) >= rel_jump(mid, b)) b = mid;
                else a = mid;
            }
            worst = std::max(worst, rel_jump(a, b));
        }
    };

    for (int k = 0; k < 96; ++k) {
        const double th = 2 * M_PI * k / 96.0;
        const Vec2 dir{std::cos(th), std::sin(th)};
        probe_ray(center, dir);
        if (std::hypot(center.x, center.y) < 2 * reach) probe_ray({0, 0}, dir);
    }
    return worst;
}

bool sampled_continuous(const Density& f, double xmin, double ymin, double xmax,
                        double ymax) {
    return sampled_max_jump(f, xmin, ymin, xmax, ymax) < 1e-3;
}

double weighted_area(const PolygonalSet& e, const Density& f) {
    if (e.empty()) return 0;
    double xmin, ymin, xmax, ymax;
    bounding_box(e, xmin, ymin, xmax, ymax);
    const double y0 = ymin - 1;
    double acc = 0;
    for (const Ring* r : e.rings()) {
        const std::size_t n = r->size();
        for (std::size_t k = 0; k < n; ++k) {
            const Point p = (*r)[k], q = (*r)[(k + 1) % n];
            if (p.x == q.x) continue;
            // quad (pa, p, q, qa) is the trapezoid between the edge and the
            // baseline; its signed area follows the edge direction, so hole
            // rings subtract
            const Point pa{p.x, y0}, qa{q.x, y0};
            acc += tri_integral(pa, p, q, f) + tri_integral(pa, q, qa, f);
        }
    }
    return std::max(acc, 0.0);
}

double line_integral(Point a, Point b, const Density& f) {
    const double len = norm(b - a);
    if (len == 0) return 0;
    const Point mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
    double acc = 0;
    for (int i = 0; i < 9; ++i) {
        const Point q = mid + (0.5 * kGaussX[i]) * (b - a);
        acc += kGaussW[i] * sample_checked(f, q);
    }
    return 0.5 * len * acc;
}

double weighted_edge_integral(Point a, Point b, Vec2 nu, const DirectionalDensity& g) {
    const double scale = g.gauge(nu);
    if (!(scale > 0)) throw NonPositiveDensity("gauge vanishes on a boundary normal");
    return line_integral(a, b, g.base) * scale;
}

double weighted_perimeter(const PolygonalSet& e, const DirectionalDensity& g,
                          const PolygonalSet* region) {
    double acc = 0;
    if (region) {
        for (const ClassifiedSubEdge& s : classify_boundary(e, *region))
            if (s.pos == SidePosition::Inside)
                acc += weighted_edge_integral(s.a, s.b, s.normal, g);
        return acc;
    }
    for (const Ring* r : e.rings()) {
        const std::size_t n = r->size();
        for (std::size_t k = 0; k < n; ++k) {
            const Point p = (*r)[k], q = (*r)[(k + 1) % n];
            const double len = norm(q - p);
            if (len == 0) continue;
            const Vec2 nu{(q.y - p.y) / len, -(q.x - p.x) / len};
            acc += weighted_edge_integral(p, q, nu, g);
        }
    }
    return acc;
}

double truncation_radius(const PolygonalSet& e, const Density& f,
                         const DirectionalDensity& g, double m, double eps,
                         std::vector<TruncationStep>* log) {
    if (!(eps > 0)) throw InvalidArgument("eps must be positive");
    if (!(m > 0)) throw InvalidArgument("the bound m must be positive");
    const double gauge_max = gauge_max_on_circle(g);
    bool tail_found = false;

    for (int k = 0;; ++k) {
        const double r = 0.1 * std::pow(1.1, k);
        if (r > 0.95 * kCoordLimit)
            throw NoAdmissibleRadius("geometric radius scan exhausted");

        // hypothesis g <= m*f, sampled on this candidate circle; the gauge
        // factors out, so the direction maximum is exact up to sampling in x
        for (int s = 0; s < 256; ++s) {
            const double th = 2 * M_PI * s / 256.0;
            const Point x{r * std::cos(th), r * std::sin(th)};
            const double lhs = g.base(x) * gauge_max;
            const double rhs = m * sample_checked(f, x);
            if (lhs > rhs * (1 + 1e-12)) {
                char msg[128];
                std::snprintf(msg, sizeof msg,
                              "g exceeds m*f on the circle r=%.6g (%.3g > %.3g)", r, lhs,
                              rhs);
                throw GBoundViolated(msg);
            }
        }

        const PolygonalSet ball = make_polygon_set({regular_ngon({0, 0}, r, 256)});
        const PolygonalSet tail = boolean(e, ball, BoolOp::Difference);
        TruncationStep step;
        step.r = r;
        step.tail_area = weighted_area(tail, f);
        step.tail_perimeter = weighted_perimeter(tail, g);
        step.tail_ok = step.tail_area < eps && step.tail_perimeter < eps / 2;
        if (step.tail_ok) tail_found = true;

        if (tail_found) {
            for (const ClassifiedSubEdge& s : classify_boundary(ball, e))
                if (s.pos == SidePosition::Inside) step.slice += line_integral(s.a, s.b, f);
            step.slice_ok = step.slice <= eps / (2 * m);
        }
        if (log) log->push_back(step);
        if (step.tail_ok && step.slice_ok) return r;
    }
}

} // namespace perimetry
