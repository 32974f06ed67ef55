#include "perimetry/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "perimetry/overlay.hpp"

namespace perimetry {

using lattice::IPt;
using lattice::i128;

double snap_coord(double v) { return double(llround(v / kSnap)) * kSnap; }
Point snap_point(Point p) { return {snap_coord(p.x), snap_coord(p.y)}; }

double ring_signed_area(const Ring& r) {
    i128 two_area = 0;
    const std::size_t n = r.size();
    for (std::size_t k = 0; k < n; ++k) {
        const IPt p = lattice::to_lattice(r[k]), q = lattice::to_lattice(r[(k + 1) % n]);
        two_area += i128(p.x) * q.y - i128(p.y) * q.x;
    }
    return double(two_area) * 0.5 * kSnap * kSnap;
}

double ring_perimeter(const Ring& r) {
    double len = 0;
    const std::size_t n = r.size();
    for (std::size_t k = 0; k < n; ++k) len += norm(r[(k + 1) % n] - r[k]);
    return len;
}

std::vector<const Ring*> PolygonalSet::rings() const {
    std::vector<const Ring*> out;
    for (const auto& c : components_) {
        out.push_back(&c.outer);
        for (const auto& h : c.holes) out.push_back(&h);
    }
    return out;
}

std::size_t PolygonalSet::vertex_count() const {
    std::size_t n = 0;
    for (const Ring* r : rings()) n += r->size();
    return n;
}

namespace {

Ring snapped_clean(const Ring& in) {
    Ring r;
    r.reserve(in.size());
    for (Point p : in) {
        const Point s = snap_point(p);
        if (r.empty() || !(r.back().x == s.x && r.back().y == s.y)) r.push_back(s);
    }
    while (r.size() > 1 && r.front().x == r.back().x && r.front().y == r.back().y)
        r.pop_back();
    return r;
}

void validate_simple(const Ring& r) {
    const std::size_t n = r.size();
    std::vector<IPt> p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = lattice::to_lattice(r[k]);
    for (std::size_t i = 0; i < n; ++i) {
        const IPt a = p[i], b = p[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const IPt c = p[j], d = p[(j + 1) % n];
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            const i128 o1 = lattice::cross(a, b, c), o2 = lattice::cross(a, b, d);
            const i128 o3 = lattice::cross(c, d, a), o4 = lattice::cross(c, d, b);
            auto sg = [](i128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
            if (sg(o1) * sg(o2) < 0 && sg(o3) * sg(o4) < 0)
                throw SelfIntersection("ring edges cross");
            if (adjacent) continue;
            // non-adjacent touching or overlap makes the ring non-simple
            auto on = [](IPt u, IPt v, IPt w) {
                return std::min(u.x, v.x) <= w.x && w.x <= std::max(u.x, v.x) &&
                       std::min(u.y, v.y) <= w.y && w.y <= std::max(u.y, v.y);
            };
            if ((o1 == 0 && on(a, b, c)) || (o2 == 0 && on(a, b, d)) ||
                (o3 == 0 && on(c, d, a)) || (o4 == 0 && on(c, d, b)))
                throw SelfIntersection("ring touches itself");
        }
    }
}

} // namespace

PolygonalSet make_polygon_set(const std::vector<Ring>& rings) {
    std::vector<Ring> clean;
    for (const Ring& r : rings) {
        Ring s = snapped_clean(r);
        if (s.size() < 3) throw DegenerateRing("ring has fewer than three distinct vertices");
        validate_simple(s);
        if (std::abs(ring_signed_area(s)) < kMinRingArea)
            throw DegenerateRing("ring area below minimum");
        clean.push_back(std::move(s));
    }
    if (clean.empty()) return PolygonalSet{};

    // Rings may touch (shared edges, T-junctions) but never cross: a proper
    // crossing means a hole escapes its outer or two components overlap.
    const std::size_t n = clean.size();
    std::vector<std::vector<IPt>> pts(n);
    for (std::size_t i = 0; i < n; ++i)
        for (const Point& p : clean[i]) pts[i].push_back(lattice::to_lattice(p));
    auto sg = [](i128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t ke = 0; ke < pts[i].size(); ++ke) {
                const IPt a = pts[i][ke], b = pts[i][(ke + 1) % pts[i].size()];
                for (std::size_t kf = 0; kf < pts[j].size(); ++kf) {
                    const IPt c = pts[j][kf], d = pts[j][(kf + 1) % pts[j].size()];
                    if (sg(lattice::cross(a, b, c)) * sg(lattice::cross(a, b, d)) < 0 &&
                        sg(lattice::cross(c, d, a)) * sg(lattice::cross(c, d, b)) < 0)
                        throw NestingViolation("rings cross");
                }
            }
        }
    }
    // Material is the odd-crossing-parity region, so input orientations are
    // irrelevant; the overlay re-orients all output rings region-left.
    return lattice::canonicalize(clean);
}

PolygonalSet boolean(const PolygonalSet& a, const PolygonalSet& b, BoolOp op) {
    if (a.empty() && b.empty()) return PolygonalSet{};
    if (b.empty()) {
        if (op == BoolOp::Intersection) return PolygonalSet{};
        return a;
    }
    if (a.empty()) {
        if (op == BoolOp::Intersection || op == BoolOp::Difference) return PolygonalSet{};
        return b;
    }
    return lattice::overlay(a, b, op);
}

PolygonalSet complement(const PolygonalSet& s, const Universe& u) {
    return boolean(u.box(), s, BoolOp::Difference);
}

double area(const PolygonalSet& s) {
    double a = 0;
    for (const Ring* r : s.rings()) a += ring_signed_area(*r);
    return a;
}

double perimeter(const PolygonalSet& s) {
    double len = 0;
    for (const Ring* r : s.rings()) len += ring_perimeter(*r);
    return len;
}

double symmetric_difference_area(const PolygonalSet& a, const PolygonalSet& b) {
    return area(boolean(a, b, BoolOp::SymmetricDifference));
}

void bounding_box(const PolygonalSet& s, double& xmin, double& ymin, double& xmax,
                  double& ymax) {
    xmin = ymin = std::numeric_limits<double>::infinity();
    xmax = ymax = -std::numeric_limits<double>::infinity();
    for (const Ring* r : s.rings())
        for (const Point& p : *r) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    if (s.empty()) xmin = ymin = xmax = ymax = 0;
}

Point centroid_hint(const PolygonalSet& s) {
    double x0, y0, x1, y1;
    bounding_box(s, x0, y0, x1, y1);
    return {0.5 * (x0 + x1), 0.5 * (y0 + y1)};
}

PolygonalSet Universe::box() const {
    Ring r{{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}};
    return make_polygon_set({r});
}

bool Universe::contains_strictly(const PolygonalSet& s) const {
    double x0, y0, x1, y1;
    bounding_box(s, x0, y0, x1, y1);
    return s.empty() || (x0 > xmin && y0 > ymin && x1 < xmax && y1 < ymax);
}

Universe Universe::around(const std::vector<const PolygonalSet*>& sets, double margin_factor) {
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0;
    double x1 = -x0, y1 = -x0;
    bool any = false;
    for (const PolygonalSet* s : sets) {
        if (!s || s->empty()) continue;
        double a, b, c, d;
        bounding_box(*s, a, b, c, d);
        x0 = std::min(x0, a);
        y0 = std::min(y0, b);
        x1 = std::max(x1, c);
        y1 = std::max(y1, d);
        any = true;
    }
    if (!any) { x0 = y0 = -0.5; x1 = y1 = 0.5; }
    const double diam = std::max(std::hypot(x1 - x0, y1 - y0), 1e-6);
    const double m = margin_factor * diam;
    Universe u{snap_coord(x0 - m), snap_coord(y0 - m), snap_coord(x1 + m), snap_coord(y1 + m)};
    return u;
}

namespace {
PolygonalSet transformed(const PolygonalSet& s, const std::function<Point(Point)>& f) {
    std::vector<Component> comps;
    for (const Component& c : s.components()) {
        Component out;
        for (Point p : c.outer) out.outer.push_back(snap_point(f(p)));
        for (const Ring& h : c.holes) {
            Ring hh;
            for (Point p : h) hh.push_back(snap_point(f(p)));
            out.holes.push_back(std::move(hh));
        }
        comps.push_back(std::move(out));
    }
    return PolygonalSet{std::move(comps)};
}
} // namespace

PolygonalSet translated(const PolygonalSet& s, Vec2 d) {
    return transformed(s, [d](Point p) { return p + d; });
}

PolygonalSet scaled(const PolygonalSet& s, double factor, Point about) {
    return transformed(s, [factor, about](Point p) {
        return Point{about.x + factor * (p.x - about.x), about.y + factor * (p.y - about.y)};
    });
}

PolygonalSet rotated(const PolygonalSet& s, double angle, Point about) {
    const double c = std::cos(angle), sn = std::sin(angle);
    return transformed(s, [c, sn, about](Point p) {
        const double dx = p.x - about.x, dy = p.y - about.y;
        return Point{about.x + c * dx - sn * dy, about.y + sn * dx + c * dy};
    });
}

Ring regular_ngon(Point c, double r, int n, double phase) {
    Ring out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double th = phase + 2.0 * M_PI * k / n;
        out.push_back(snap_point({c.x + r * std::cos(th), c.y + r * std::sin(th)}));
    }
    return out;
}

} // namespace perimetry
