#include "perimetry/overlay.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace perimetry {
namespace lattice {

IPt to_lattice(Point p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw InvalidArgument("non-finite coordinate");
    if (std::abs(p.x) > kCoordLimit || std::abs(p.y) > kCoordLimit)
        throw InvalidArgument("coordinate exceeds exactness cap");
    return {llround(p.x / kSnap), llround(p.y / kSnap)};
}

Point from_lattice(IPt p) {
    return {double(p.x) * kSnap, double(p.y) * kSnap};
}

namespace {

inline int sgn(i128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// round(n/d) half away from zero, exact, no overflow
i64 round_div(i128 n, i128 d) {
    if (d < 0) { n = -n; d = -d; }
    i128 q = n / d, r = n % d;
    if (r < 0) r = -r;
    if (2 * r >= d) q += (n < 0 ? -1 : 1);
    return i64(q);
}

struct BBox {
    i64 x0, y0, x1, y1;
    static BBox of(IPt a, IPt b) {
        return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
    }
    bool overlaps(const BBox& o) const {
        return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1;
    }
};

bool on_segment(IPt a, IPt b, IPt p) { // collinearity assumed
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool strictly_inside_segment(IPt a, IPt b, IPt p) {
    return !(p == a) && !(p == b) && on_segment(a, b, p);
}

} // namespace

std::vector<Edge> split_arrangement(std::vector<Edge> edges, int max_rounds) {
    for (int round = 0; round < max_rounds; ++round) {
        const std::size_t n = edges.size();
        std::vector<std::vector<IPt>> cuts(n);
        std::vector<BBox> boxes;
        boxes.reserve(n);
        for (auto& e : edges) boxes.push_back(BBox::of(e.a, e.b));

        bool any = false;
        auto add_cut = [&](std::size_t i, IPt p) {
            if (strictly_inside_segment(edges[i].a, edges[i].b, p)) {
                cuts[i].push_back(p);
                any = true;
            }
        };
        // True if v sits within one lattice unit of segment pq's interior, so
        // a crossing beside it should be routed through v rather than given a
        // fresh vertex. cr is the precomputed cross(p, q, v).
        auto hot = [](IPt v, IPt p, IPt q, i128 cr) {
            if (!strictly_inside_segment(p, q, v)) return false;
            const i128 ca = cr < 0 ? -cr : cr;
            const i128 dx = q.x - p.x, dy = q.y - p.y;
            return ca * ca < dx * dx + dy * dy;
        };

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!boxes[i].overlaps(boxes[j])) continue;
                const IPt a = edges[i].a, b = edges[i].b;
                const IPt c = edges[j].a, d = edges[j].b;
                const i128 o1 = cross(a, b, c), o2 = cross(a, b, d);
                const i128 o3 = cross(c, d, a), o4 = cross(c, d, b);
                if (o1 == 0 && o2 == 0) { // collinear: exchange interior endpoints
                    if (on_segment(a, b, c)) add_cut(i, c);
                    if (on_segment(a, b, d)) add_cut(i, d);
                    if (on_segment(c, d, a)) add_cut(j, a);
                    if (on_segment(c, d, b)) add_cut(j, b);
                    continue;
                }
                if (o1 == 0 && on_segment(a, b, c)) add_cut(i, c);
                if (o2 == 0 && on_segment(a, b, d)) add_cut(i, d);
                if (o3 == 0 && on_segment(c, d, a)) add_cut(j, a);
                if (o4 == 0 && on_segment(c, d, b)) add_cut(j, b);
                if (sgn(o1) * sgn(o2) < 0 && sgn(o3) * sgn(o4) < 0) {
                    // Proper crossing. One beside a nearby endpoint routes
                    // through that endpoint: a snapped vertex minted one pixel
                    // over would bend the sub-edges into the same shallow
                    // crossing again, one step further, every round.
                    IPt p;
                    if (hot(a, c, d, o3)) p = a;
                    else if (hot(b, c, d, o4)) p = b;
                    else if (hot(c, a, b, o1)) p = c;
                    else if (hot(d, a, b, o2)) p = d;
                    else {
                        // snap the rational intersection to the lattice
                        const i128 den = o3 - o4;
                        p = {a.x + round_div(o3 * i128(b.x - a.x), den),
                             a.y + round_div(o3 * i128(b.y - a.y), den)};
                    }
                    add_cut(i, p);
                    add_cut(j, p);
                }
            }
        }
        if (!any) return edges;

        std::vector<Edge> next;
        next.reserve(edges.size() * 2);
        for (std::size_t i = 0; i < n; ++i) {
            if (cuts[i].empty()) {
                next.push_back(edges[i]);
                continue;
            }
            const IPt a = edges[i].a, b = edges[i].b;
            const i128 dx = b.x - a.x, dy = b.y - a.y;
            auto& cs = cuts[i];
            std::sort(cs.begin(), cs.end(), [&](IPt p, IPt q) {
                return dx * (p.x - a.x) + dy * (p.y - a.y) <
                       dx * (q.x - a.x) + dy * (q.y - a.y);
            });
            cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
            IPt prev = a;
            for (IPt p : cs) {
                if (!(p == prev)) next.push_back({prev, p, edges[i].set});
                prev = p;
            }
            if (!(prev == b)) next.push_back({prev, b, edges[i].set});
        }
        edges = std::move(next);
    }
    throw OverlayFailure("arrangement did not stabilize under snap rounding");
}

int winding_at(const std::vector<Edge>& edges, int set, i64 px2, i64 py2) {
    return winding_beside(edges, set, px2, py2, 1, 0);
}

int winding_beside(const std::vector<Edge>& edges, int set, i64 px2, i64 py2,
                   i64 dirx, i64 diry) {
    int w = 0;
    for (const auto& e : edges) {
        if (e.set != set) continue;
        const i128 ux = 2 * e.a.x - px2, uy = 2 * e.a.y - py2;
        const i128 vx = 2 * e.b.x - px2, vy = 2 * e.b.y - py2;
        const i128 sa = i128(dirx) * uy - i128(diry) * ux;
        const i128 sb = i128(dirx) * vy - i128(diry) * vx;
        if (sa <= 0 && sb > 0) {
            if (ux * vy - uy * vx > 0) ++w;
        } else if (sb <= 0 && sa > 0) {
            if (ux * vy - uy * vx < 0) --w;
        }
    }
    return w;
}

namespace {

// CCW-turn ordering of outgoing directions relative to the incoming direction.
// Class 0: straight ahead; 1: left half-plane; 2: U-turn; 3: right half-plane.
int turn_class(i64 inx, i64 iny, i64 dx, i64 dy) {
    const i128 cr = i128(inx) * dy - i128(iny) * dx;
    if (cr > 0) return 1;
    if (cr < 0) return 3;
    return (i128(inx) * dx + i128(iny) * dy > 0) ? 0 : 2;
}

bool turn_less(i64 inx, i64 iny, i64 d1x, i64 d1y, i64 d2x, i64 d2y) {
    const int c1 = turn_class(inx, iny, d1x, d1y);
    const int c2 = turn_class(inx, iny, d2x, d2y);
    if (c1 != c2) return c1 < c2;
    return i128(d1x) * d2y - i128(d1y) * d2x > 0;
}

} // namespace

std::vector<RawRing> stitch(std::vector<Edge> kept) {
    std::sort(kept.begin(), kept.end(), [](const Edge& l, const Edge& r) {
        if (!(l.a == r.a)) return l.a < r.a;
        return l.b < r.b;
    });
    auto first_out = [&](IPt v) {
        std::size_t lo = 0, hi = kept.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (kept[mid].a < v) lo = mid + 1; else hi = mid;
        }
        return lo;
    };

    std::vector<bool> used(kept.size(), false);
    std::vector<RawRing> rings;
    for (std::size_t s = 0; s < kept.size(); ++s) {
        if (used[s]) continue;
        std::vector<IPt> pts;
        std::size_t cur = s;
        while (true) {
            used[cur] = true;
            pts.push_back(kept[cur].a);
            const IPt v = kept[cur].b;
            const i64 inx = v.x - kept[cur].a.x, iny = v.y - kept[cur].a.y;
            std::size_t best = kept.size();
            for (std::size_t k = first_out(v); k < kept.size() && kept[k].a == v; ++k) {
                if (used[k] && k != s) continue;
                if (best == kept.size() ||
                    turn_less(inx, iny, kept[k].b.x - v.x, kept[k].b.y - v.y,
                              kept[best].b.x - v.x, kept[best].b.y - v.y))
                    best = k;
            }
            if (best == kept.size()) throw OverlayFailure("open chain while stitching");
            if (best == s) break;
            if (used[best]) throw OverlayFailure("re-entered a consumed edge while stitching");
            cur = best;
        }

        // drop collinear interior vertices; they carry no information
        std::vector<IPt> slim;
        const std::size_t m = pts.size();
        for (std::size_t k = 0; k < m; ++k) {
            const IPt p = pts[(k + m - 1) % m], q = pts[k], r = pts[(k + 1) % m];
            if (cross(p, q, r) != 0) slim.push_back(q);
        }
        if (slim.size() < 3) continue;

        i128 two_area = 0;
        for (std::size_t k = 0; k < slim.size(); ++k) {
            const IPt p = slim[k], q = slim[(k + 1) % slim.size()];
            two_area += i128(p.x) * q.y - i128(p.y) * q.x;
        }
        const double signed_area = double(two_area) * 0.5 * kSnap * kSnap;
        if (std::abs(signed_area) < kMinRingArea) continue;
        rings.push_back({std::move(slim), signed_area});
    }
    return rings;
}

namespace {

// Probe point (doubled coords) and inward ray for a ring: the midpoint of an
// edge whose midpoint coincides with no arrangement vertex, ray = left normal.
struct Probe {
    i64 px2, py2, dirx, diry;
};

Probe probe_of(const RawRing& r, const std::vector<IPt>& all_vertices_sorted) {
    const std::size_t n = r.pts.size();
    std::size_t pick = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const IPt a = r.pts[k], b = r.pts[(k + 1) % n];
        const i64 mx2 = a.x + b.x, my2 = a.y + b.y;
        if ((mx2 & 1) || (my2 & 1)) { pick = k; break; }
        IPt m{mx2 / 2, my2 / 2};
        if (!std::binary_search(all_vertices_sorted.begin(), all_vertices_sorted.end(), m)) {
            pick = k;
            break;
        }
    }
    const IPt a = r.pts[pick], b = r.pts[(pick + 1) % n];
    return {a.x + b.x, a.y + b.y, -(b.y - a.y), b.x - a.x};
}

} // namespace

PolygonalSet assemble(const std::vector<RawRing>& rings) {
    if (rings.empty()) return PolygonalSet{};

    std::vector<IPt> verts;
    for (const auto& r : rings) verts.insert(verts.end(), r.pts.begin(), r.pts.end());
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

    const std::size_t n = rings.size();
    std::vector<std::vector<Edge>> ring_edges(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < rings[i].pts.size(); ++k)
            ring_edges[i].push_back(
                {rings[i].pts[k], rings[i].pts[(k + 1) % rings[i].pts.size()], 0});

    std::vector<int> depth(n, 0);
    std::vector<std::vector<std::size_t>> containers(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Probe pr = probe_of(rings[i], verts);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            if (winding_beside(ring_edges[j], 0, pr.px2, pr.py2, pr.dirx, pr.diry) != 0) {
                ++depth[i];
                containers[i].push_back(j);
            }
        }
    }

    std::vector<Component> comps;
    std::vector<std::size_t> comp_of_ring(n, size_t(-1));
    for (std::size_t i = 0; i < n; ++i) {
        if (rings[i].signed_area <= 0) continue;
        comp_of_ring[i] = comps.size();
        Component c;
        c.outer.reserve(rings[i].pts.size());
        for (IPt p : rings[i].pts) c.outer.push_back(from_lattice(p));
        comps.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (rings[i].signed_area > 0) continue;
        std::size_t parent = size_t(-1);
        double best = 0;
        for (std::size_t j : containers[i]) {
            if (rings[j].signed_area <= 0) continue;
            if (parent == size_t(-1) || rings[j].signed_area < best) {
                parent = j;
                best = rings[j].signed_area;
            }
        }
        if (parent == size_t(-1) || depth[parent] != depth[i] - 1)
            throw OverlayFailure("hole without matching outer ring");
        Ring h;
        h.reserve(rings[i].pts.size());
        for (IPt p : rings[i].pts) h.push_back(from_lattice(p));
        comps[comp_of_ring[parent]].holes.push_back(std::move(h));
    }

    // canonical ordering for byte-stable serialization
    auto ring_key = [](const Ring& r) {
        Point m = r.front();
        for (const Point& p : r)
            if (p.x < m.x || (p.x == m.x && p.y < m.y)) m = p;
        return m;
    };
    for (auto& c : comps) {
        auto rot = [&](Ring& r) {
            std::size_t k = 0;
            for (std::size_t i = 1; i < r.size(); ++i)
                if (r[i].x < r[k].x || (r[i].x == r[k].x && r[i].y < r[k].y)) k = i;
            std::rotate(r.begin(), r.begin() + k, r.end());
        };
        rot(c.outer);
        for (auto& h : c.holes) rot(h);
        std::sort(c.holes.begin(), c.holes.end(), [&](const Ring& a, const Ring& b) {
            const Point ka = ring_key(a), kb = ring_key(b);
            return ka.x != kb.x ? ka.x < kb.x : ka.y < kb.y;
        });
    }
    std::sort(comps.begin(), comps.end(), [&](const Component& a, const Component& b) {
        const Point ka = ring_key(a.outer), kb = ring_key(b.outer);
        return ka.x != kb.x ? ka.x < kb.x : ka.y < kb.y;
    });
    return PolygonalSet{std::move(comps)};
}

std::vector<Edge> collect_edges(const PolygonalSet& s, int set_tag) {
    std::vector<Edge> out;
    for (const Ring* r : s.rings()) {
        const std::size_t n = r->size();
        for (std::size_t k = 0; k < n; ++k) {
            const IPt a = to_lattice((*r)[k]);
            const IPt b = to_lattice((*r)[(k + 1) % n]);
            if (!(a == b)) out.push_back({a, b, set_tag});
        }
    }
    return out;
}

namespace {

bool combine(BoolOp op, bool a, bool b) {
    switch (op) {
        case BoolOp::Union: return a || b;
        case BoolOp::Intersection: return a && b;
        case BoolOp::Difference: return a && !b;
        case BoolOp::SymmetricDifference: return a != b;
    }
    return false;
}

struct GroupKey {
    IPt p, q;
    bool operator<(const GroupKey& o) const {
        if (!(p == o.p)) return p < o.p;
        return q < o.q;
    }
};

PolygonalSet classify_and_build(const std::vector<Edge>& sub,
                                const std::function<bool(int, int)>& keep_left) {
    std::map<GroupKey, bool> seen;
    std::vector<Edge> kept;
    for (const auto& e : sub) {
        GroupKey key{std::min(e.a, e.b), std::max(e.a, e.b)};
        auto [it, fresh] = seen.emplace(key, true);
        if (!fresh) continue;
        const IPt p = key.p, q = key.q;
        const i64 mx2 = p.x + q.x, my2 = p.y + q.y;
        const i64 nlx = -(q.y - p.y), nly = q.x - p.x; // left normal of p->q
        const int wl0 = winding_beside(sub, 0, mx2, my2, nlx, nly);
        const int wr0 = winding_beside(sub, 0, mx2, my2, -nlx, -nly);
        const int wl1 = winding_beside(sub, 1, mx2, my2, nlx, nly);
        const int wr1 = winding_beside(sub, 1, mx2, my2, -nlx, -nly);
        const bool L = keep_left(wl0, wl1), R = keep_left(wr0, wr1);
        if (L == R) continue;
        if (L)
            kept.push_back({p, q, 0});
        else
            kept.push_back({q, p, 0});
    }
    return assemble(stitch(std::move(kept)));
}

} // namespace

PolygonalSet overlay(const PolygonalSet& a, const PolygonalSet& b, BoolOp op) {
    std::vector<Edge> edges = collect_edges(a, 0);
    const std::vector<Edge> eb = collect_edges(b, 1);
    edges.insert(edges.end(), eb.begin(), eb.end());
    if (edges.empty()) return PolygonalSet{};
    edges = split_arrangement(std::move(edges));
    return classify_and_build(
        edges, [op](int w0, int w1) { return combine(op, w0 != 0, w1 != 0); });
}

PolygonalSet canonicalize(const std::vector<Ring>& rings) {
    std::vector<Edge> edges;
    for (const Ring& r : rings) {
        const std::size_t n = r.size();
        for (std::size_t k = 0; k < n; ++k) {
            const IPt p = to_lattice(r[k]);
            const IPt q = to_lattice(r[(k + 1) % n]);
            if (!(p == q)) edges.push_back({p, q, 0});
        }
    }
    if (edges.empty()) return PolygonalSet{};
    edges = split_arrangement(std::move(edges));
    // crossing-parity material: orientation of the input rings does not matter
    return classify_and_build(edges, [](int w0, int) { return w0 % 2 != 0; });
}

} // namespace lattice
} // namespace perimetry
