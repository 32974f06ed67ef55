#include "perimetry/boundary.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>

#include "perimetry/overlay.hpp"

namespace perimetry {

using lattice::Edge;
using lattice::IPt;

double CommonBoundary::plus_length() const {
    double s = 0;
    for (const auto& g : gamma_plus) s += g.length();
    return s;
}

double CommonBoundary::minus_length() const {
    double s = 0;
    for (const auto& g : gamma_minus) s += g.length();
    return s;
}

std::vector<ClassifiedSubEdge> classify_boundary(const PolygonalSet& e,
                                                 const PolygonalSet& omega) {
    std::vector<Edge> edges = lattice::collect_edges(e, 0);
    const std::vector<Edge> eo = lattice::collect_edges(omega, 1);
    edges.insert(edges.end(), eo.begin(), eo.end());
    if (edges.empty()) return {};
    edges = lattice::split_arrangement(std::move(edges));

    std::set<std::pair<IPt, IPt>> omega_pairs;
    for (const auto& ed : edges)
        if (ed.set == 1) omega_pairs.insert({std::min(ed.a, ed.b), std::max(ed.a, ed.b)});

    std::vector<ClassifiedSubEdge> out;
    for (const auto& ed : edges) {
        if (ed.set != 0) continue;
        ClassifiedSubEdge c;
        c.a = lattice::from_lattice(ed.a);
        c.b = lattice::from_lattice(ed.b);
        const Vec2 d = c.b - c.a;
        const double len = norm(d);
        if (len <= 0) continue;
        c.normal = {d.y / len, -d.x / len};
        if (omega_pairs.count({std::min(ed.a, ed.b), std::max(ed.a, ed.b)})) {
            c.pos = SidePosition::OnBoundary;
        } else {
            const int w = lattice::winding_at(edges, 1, ed.a.x + ed.b.x, ed.a.y + ed.b.y);
            c.pos = (w != 0) ? SidePosition::Inside : SidePosition::Outside;
        }
        out.push_back(c);
    }
    return out;
}

double relative_perimeter(const PolygonalSet& e, const PolygonalSet& omega) {
    if (e.empty() || omega.empty()) return 0.0;
    double len = 0;
    for (const auto& c : classify_boundary(e, omega))
        if (c.pos == SidePosition::Inside) len += norm(c.b - c.a);
    return len;
}

namespace {

struct DirEdge {
    Point a, b;
    Vec2 u; // unit direction
    double len;
};

std::vector<DirEdge> directed_edges(const PolygonalSet& s) {
    std::vector<DirEdge> out;
    for (const Ring* r : s.rings()) {
        const std::size_t n = r->size();
        for (std::size_t k = 0; k < n; ++k) {
            const Point a = (*r)[k], b = (*r)[(k + 1) % n];
            const double len = norm(b - a);
            if (len <= 0) continue;
            out.push_back({a, b, {(b.x - a.x) / len, (b.y - a.y) / len}, len});
        }
    }
    return out;
}

struct Interval {
    double t0, t1;
};

double merged_length(std::vector<Interval>& iv) {
    if (iv.empty()) return 0;
    std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.t0 < b.t0; });
    double total = 0, lo = iv[0].t0, hi = iv[0].t1;
    for (std::size_t k = 1; k < iv.size(); ++k) {
        if (iv[k].t0 <= hi + kSnap) {
            hi = std::max(hi, iv[k].t1);
        } else {
            total += hi - lo;
            lo = iv[k].t0;
            hi = iv[k].t1;
        }
    }
    return total + (hi - lo);
}

std::vector<Interval> merged(std::vector<Interval>& iv) {
    std::vector<Interval> out;
    if (iv.empty()) return out;
    std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.t0 < b.t0; });
    double lo = iv[0].t0, hi = iv[0].t1;
    for (std::size_t k = 1; k < iv.size(); ++k) {
        if (iv[k].t0 <= hi + kSnap) {
            hi = std::max(hi, iv[k].t1);
        } else {
            out.push_back({lo, hi});
            lo = iv[k].t0;
            hi = iv[k].t1;
        }
    }
    out.push_back({lo, hi});
    return out;
}

// Overlapping parameter window of edge f projected onto edge e, or empty.
bool collinear_window(const DirEdge& e, const DirEdge& f, double overlap_tol,
                      double angle_tol, Interval& out) {
    if (std::abs(cross(e.u, f.u)) > angle_tol) return false;
    const Vec2 ca = f.a - e.a, cb = f.b - e.a;
    if (std::abs(cross(e.u, ca)) > overlap_tol || std::abs(cross(e.u, cb)) > overlap_tol)
        return false;
    double t0 = dot(ca, e.u), t1 = dot(cb, e.u);
    if (t0 > t1) std::swap(t0, t1);
    t0 = std::max(t0, 0.0);
    t1 = std::min(t1, e.len);
    if (t1 - t0 <= kSnap) return false;
    out = {t0, t1};
    return true;
}

} // namespace

CommonBoundary common_boundary(const PolygonalSet& e, const PolygonalSet& omega,
                               double overlap_tol, double angle_tol) {
    CommonBoundary cb;
    if (e.empty() || omega.empty()) return cb;
    const std::vector<DirEdge> ee = directed_edges(e);
    const std::vector<DirEdge> oo = directed_edges(omega);
    for (const DirEdge& de : ee) {
        std::vector<Interval> plus, minus;
        for (const DirEdge& df : oo) {
            Interval w;
            if (!collinear_window(de, df, overlap_tol, angle_tol, w)) continue;
            (dot(de.u, df.u) > 0 ? plus : minus).push_back(w);
        }
        const Vec2 n{de.u.y, -de.u.x};
        for (const Interval& w : merged(plus))
            cb.gamma_plus.push_back({de.a + w.t0 * de.u, de.a + w.t1 * de.u, n});
        for (const Interval& w : merged(minus))
            cb.gamma_minus.push_back({de.a + w.t0 * de.u, de.a + w.t1 * de.u, n});
    }
    return cb;
}

double boundary_overlap_length(const PolygonalSet& a, const PolygonalSet& b,
                               double overlap_tol, double angle_tol) {
    if (a.empty() || b.empty()) return 0.0;
    const std::vector<DirEdge> ea = directed_edges(a);
    const std::vector<DirEdge> eb = directed_edges(b);
    double total = 0;
    for (const DirEdge& de : ea) {
        std::vector<Interval> iv;
        for (const DirEdge& df : eb) {
            Interval w;
            if (collinear_window(de, df, overlap_tol, angle_tol, w)) iv.push_back(w);
        }
        total += merged_length(iv);
    }
    return total;
}

namespace {

struct LinePiece {
    IPt a, b;
    lattice::i128 ta, tb; // params along the reduced line direction
};

struct LineKey {
    long long dx, dy; // reduced direction, canonical sign
    lattice::i128 c;  // line offset
    int cls;          // 0 plus, 1 minus
    int sign;         // edge direction relative to (dx, dy)
    bool operator<(const LineKey& o) const {
        if (dx != o.dx) return dx < o.dx;
        if (dy != o.dy) return dy < o.dy;
        if (c != o.c) return c < o.c;
        if (cls != o.cls) return cls < o.cls;
        return sign < o.sign;
    }
};

} // namespace

CommonBoundary exact_common_boundary(const PolygonalSet& e, const PolygonalSet& omega) {
    CommonBoundary cb;
    if (e.empty() || omega.empty()) return cb;
    std::vector<Edge> edges = lattice::collect_edges(e, 0);
    const std::vector<Edge> eo = lattice::collect_edges(omega, 1);
    edges.insert(edges.end(), eo.begin(), eo.end());
    edges = lattice::split_arrangement(std::move(edges));

    std::set<std::pair<IPt, IPt>> omega_dir;
    for (const auto& ed : edges)
        if (ed.set == 1) omega_dir.insert({ed.a, ed.b});

    std::map<LineKey, std::vector<LinePiece>> groups;
    for (const auto& ed : edges) {
        if (ed.set != 0) continue;
        int cls;
        if (omega_dir.count({ed.a, ed.b})) cls = 0;
        else if (omega_dir.count({ed.b, ed.a})) cls = 1;
        else continue;
        long long dx = ed.b.x - ed.a.x, dy = ed.b.y - ed.a.y;
        if (dx == 0 && dy == 0) continue;
        const long long g = std::gcd(std::abs(dx), std::abs(dy));
        dx /= g;
        dy /= g;
        int sign = 1;
        if (dx < 0 || (dx == 0 && dy < 0)) {
            dx = -dx;
            dy = -dy;
            sign = -1;
        }
        const lattice::i128 c =
            lattice::i128(dx) * ed.a.y - lattice::i128(dy) * ed.a.x;
        const lattice::i128 ta = lattice::i128(dx) * ed.a.x + lattice::i128(dy) * ed.a.y;
        const lattice::i128 tb = lattice::i128(dx) * ed.b.x + lattice::i128(dy) * ed.b.y;
        groups[{dx, dy, c, cls, sign}].push_back({ed.a, ed.b, ta, tb});
    }

    for (auto& [key, pieces] : groups) {
        std::sort(pieces.begin(), pieces.end(), [](const LinePiece& x, const LinePiece& y) {
            return std::min(x.ta, x.tb) < std::min(y.ta, y.tb);
        });
        std::size_t k = 0;
        while (k < pieces.size()) {
            IPt plo = (pieces[k].ta <= pieces[k].tb) ? pieces[k].a : pieces[k].b;
            IPt phi = (pieces[k].ta <= pieces[k].tb) ? pieces[k].b : pieces[k].a;
            lattice::i128 thi = std::max(pieces[k].ta, pieces[k].tb);
            std::size_t j = k + 1;
            while (j < pieces.size() && std::min(pieces[j].ta, pieces[j].tb) == thi) {
                phi = (pieces[j].ta <= pieces[j].tb) ? pieces[j].b : pieces[j].a;
                thi = std::max(pieces[j].ta, pieces[j].tb);
                ++j;
            }
            OrientedSegment seg;
            seg.a = lattice::from_lattice(key.sign > 0 ? plo : phi);
            seg.b = lattice::from_lattice(key.sign > 0 ? phi : plo);
            const Vec2 d = seg.b - seg.a;
            const double len = norm(d);
            if (len > 0) {
                seg.normal = {d.y / len, -d.x / len};
                (key.cls == 0 ? cb.gamma_plus : cb.gamma_minus).push_back(seg);
            }
            k = j;
        }
    }
    return cb;
}

std::string common_boundary_csv(const CommonBoundary& cb) {
    std::string out = "ax,ay,bx,by,class,length\n";
    char buf[256];
    auto emit = [&](const OrientedSegment& s, const char* cls) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%s,%.17g\n", s.a.x, s.a.y,
                      s.b.x, s.b.y, cls, s.length());
        out += buf;
    };
    for (const auto& s : cb.gamma_plus) emit(s, "plus");
    for (const auto& s : cb.gamma_minus) emit(s, "minus");
    return out;
}

} // namespace perimetry
