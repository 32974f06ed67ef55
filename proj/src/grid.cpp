#include "perimetry/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <tuple>

#include "perimetry/boundary.hpp"

namespace perimetry {

double GridField::max_value() const {
    double m = 0;
    for (double v : values) m = std::max(m, v);
    return m;
}

namespace {

// Sutherland-Hodgman against one horizontal half-plane. keep_below: y <= c.
std::vector<Point> clip_half(const std::vector<Point>& poly, double c, bool keep_below) {
    std::vector<Point> out;
    const std::size_t n = poly.size();
    if (n == 0) return out;
    auto inside = [&](const Point& p) { return keep_below ? p.y <= c : p.y >= c; };
    for (std::size_t k = 0; k < n; ++k) {
        const Point& p = poly[k];
        const Point& q = poly[(k + 1) % n];
        const bool pi = inside(p), qi = inside(q);
        if (pi) out.push_back(p);
        if (pi != qi) {
            const double s = (c - p.y) / (q.y - p.y);
            out.push_back({p.x + s * (q.x - p.x), c});
        }
    }
    return out;
}

} // namespace

std::vector<double> coverage_raster(const PolygonalSet& e, Point origin, double h,
                                    std::size_t ncx, std::size_t ncy) {
    std::vector<double> cell(ncx * ncy, 0.0);
    if (e.empty() || ncx == 0 || ncy == 0) return cell;

    for (const Ring* r : e.rings()) {
        double rxmin = r->front().x, rxmax = rxmin, rymin = r->front().y, rymax = rymin;
        for (const Point& p : *r) {
            rxmin = std::min(rxmin, p.x);
            rxmax = std::max(rxmax, p.x);
            rymin = std::min(rymin, p.y);
            rymax = std::max(rymax, p.y);
        }
        const std::ptrdiff_t j0 = std::max<std::ptrdiff_t>(0, std::ptrdiff_t(std::floor((rymin - origin.y) / h)));
        const std::ptrdiff_t j1 = std::min<std::ptrdiff_t>(std::ptrdiff_t(ncy) - 1,
                                                           std::ptrdiff_t(std::floor((rymax - origin.y) / h)));
        const std::vector<Point> base(r->begin(), r->end());
        for (std::ptrdiff_t j = j0; j <= j1; ++j) {
            const double y0 = origin.y + double(j) * h;
            std::vector<Point> band = clip_half(base, y0, false);
            band = clip_half(band, y0 + h, true);
            if (band.size() < 3) continue;
            // -integral of y dx per column slab equals the slab's signed area:
            // the vertical closure edges a clip would add contribute nothing.
            const std::size_t m = band.size();
            for (std::size_t k = 0; k < m; ++k) {
                const Point& p = band[k];
                const Point& q = band[(k + 1) % m];
                if (p.x == q.x) continue;
                const double xlo = std::min(p.x, q.x), xhi = std::max(p.x, q.x);
                const double slope = (q.y - p.y) / (q.x - p.x);
                std::ptrdiff_t c0 = std::ptrdiff_t(std::floor((xlo - origin.x) / h));
                std::ptrdiff_t c1 = std::ptrdiff_t(std::floor((xhi - origin.x) / h));
                c0 = std::max<std::ptrdiff_t>(c0, 0);
                c1 = std::min<std::ptrdiff_t>(c1, std::ptrdiff_t(ncx) - 1);
                for (std::ptrdiff_t c = c0; c <= c1; ++c) {
                    const double a = std::max(xlo, origin.x + double(c) * h);
                    const double b = std::min(xhi, origin.x + double(c + 1) * h);
                    if (b <= a) continue;
                    const double xm = 0.5 * (a + b);
                    const double ym = p.y + slope * (xm - p.x) - y0;
                    const double dx = (q.x > p.x) ? (b - a) : (a - b);
                    cell[std::size_t(j) * ncx + std::size_t(c)] -= ym * dx;
                }
            }
        }
    }
    const double inv = 1.0 / (h * h);
    for (double& v : cell) v = std::clamp(v * inv, 0.0, 1.0);
    return cell;
}

GridField mollify(const PolygonalSet& e, double delta, double h_g, double bounded_cut) {
    if (!(delta > 0) || !(h_g > 0)) throw InvalidArgument("delta and spacing must be positive");
    if (delta < 2 * h_g) throw GridTooCoarse("mollifier radius below twice the grid spacing");

    PolygonalSet work = e;
    if (bounded_cut > 0) {
        const PolygonalSet ball = make_polygon_set({regular_ngon({0, 0}, bounded_cut, 256)});
        work = boolean(e, ball, BoolOp::Intersection);
    }

    GridField phi;
    phi.spacing = h_g;
    if (work.empty()) {
        phi.origin = {0, 0};
        phi.nx = phi.ny = 2;
        phi.values.assign(4, 0.0);
        return phi;
    }

    double xmin, ymin, xmax, ymax;
    bounding_box(work, xmin, ymin, xmax, ymax);
    const double pad = delta + 2 * h_g;
    phi.origin = {std::floor((xmin - pad) / h_g) * h_g, std::floor((ymin - pad) / h_g) * h_g};
    const std::size_t ncx = std::size_t(std::ceil((xmax + pad - phi.origin.x) / h_g));
    const std::size_t ncy = std::size_t(std::ceil((ymax + pad - phi.origin.y) / h_g));
    phi.nx = ncx + 1;
    phi.ny = ncy + 1;
    if (phi.nx * phi.ny > std::size_t(64) * 1024 * 1024)
        throw InvalidArgument("mollification grid exceeds the memory budget");

    const std::vector<double> cov = coverage_raster(work, phi.origin, h_g, ncx, ncy);

    // kernel over node-to-cell-center offsets, normalized to unit mass
    const Mollifier rho{delta};
    const int m = int(std::ceil(delta / h_g)) + 1;
    const int kw = 2 * m;
    std::vector<double> kern(std::size_t(kw) * kw, 0.0);
    double ksum = 0;
    for (int l = -m; l < m; ++l)
        for (int k = -m; k < m; ++k) {
            const double r = h_g * std::hypot(k + 0.5, l + 0.5);
            const double v = rho(r);
            kern[std::size_t(l + m) * kw + std::size_t(k + m)] = v;
            ksum += v;
        }
    for (double& v : kern) v /= ksum;

    phi.values.assign(phi.nx * phi.ny, 0.0);
    for (std::size_t j = 0; j < phi.ny; ++j) {
        for (std::size_t i = 0; i < phi.nx; ++i) {
            double acc = 0;
            for (int l = -m; l < m; ++l) {
                const std::ptrdiff_t cj = std::ptrdiff_t(j) + l;
                if (cj < 0 || cj >= std::ptrdiff_t(ncy)) continue;
                const double* kr = &kern[std::size_t(l + m) * kw];
                const double* cr = &cov[std::size_t(cj) * ncx];
                for (int k = -m; k < m; ++k) {
                    const std::ptrdiff_t ci = std::ptrdiff_t(i) + k;
                    if (ci < 0 || ci >= std::ptrdiff_t(ncx)) continue;
                    acc += kr[std::size_t(k + m)] * cr[ci];
                }
            }
            phi.values[j * phi.nx + i] = std::clamp(acc, 0.0, 1.0);
        }
    }
    return phi;
}

namespace {

// grid-edge key: orientation (0 horizontal, 1 vertical) + lower-left node
using EdgeKey = std::tuple<int, std::ptrdiff_t, std::ptrdiff_t>;

struct ContourSeg {
    EdgeKey from, to;
    Point from_pt;
};

} // namespace

PolygonalSet extract_level_set(const GridField& phi, double t) {
    if (!(t > 0) || !(t < 1)) throw InvalidArgument("level must lie in (0, 1)");
    if (phi.nx == 0 || phi.ny == 0 || phi.spacing <= 0)
        throw InvalidArgument("field is empty");

    // nudge t off node values so every crossing is strict
    double tt = t;
    for (int guard = 0; guard < 64; ++guard) {
        bool clash = false;
        for (double v : phi.values)
            if (v == tt) {
                clash = true;
                break;
            }
        if (!clash && tt != 0.0) break;
        tt += 1e-12;
    }
    if (tt >= phi.max_value()) throw EmptyLevelSet("level at or above the field maximum");

    const double h = phi.spacing;
    std::vector<ContourSeg> segs;
    std::map<EdgeKey, std::size_t> start_at;

    // one ring of ghost cells around the stored window (field is zero there),
    // so contours close even when the support touches the window edge
    for (std::ptrdiff_t j = -1; j <= std::ptrdiff_t(phi.ny) - 1; ++j) {
        for (std::ptrdiff_t i = -1; i <= std::ptrdiff_t(phi.nx) - 1; ++i) {
            const double v00 = phi.at(i, j), v10 = phi.at(i + 1, j);
            const double v11 = phi.at(i + 1, j + 1), v01 = phi.at(i, j + 1);
            const int code = (v00 > tt ? 1 : 0) | (v10 > tt ? 2 : 0) | (v11 > tt ? 4 : 0) |
                             (v01 > tt ? 8 : 0);
            if (code == 0 || code == 15) continue;

            const Point base = phi.node_pos(i, j);
            auto cross_pt = [&](int edge) -> Point {
                switch (edge) {
                case 0: { // S
                    const double s = (tt - v00) / (v10 - v00);
                    return {base.x + s * h, base.y};
                }
                case 1: { // E
                    const double s = (tt - v10) / (v11 - v10);
                    return {base.x + h, base.y + s * h};
                }
                case 2: { // N
                    const double s = (tt - v01) / (v11 - v01);
                    return {base.x + s * h, base.y + h};
                }
                default: { // W
                    const double s = (tt - v00) / (v01 - v00);
                    return {base.x, base.y + s * h};
                }
                }
            };
            auto key_of = [&](int edge) -> EdgeKey {
                switch (edge) {
                case 0: return {0, i, j};
                case 1: return {1, i + 1, j};
                case 2: return {0, i, j + 1};
                default: return {1, i, j};
                }
            };
            auto emit = [&](int from, int to) {
                if (!start_at.emplace(key_of(from), segs.size()).second)
                    throw OverlayFailure("level-set contour branches");
                segs.push_back({key_of(from), key_of(to), cross_pt(from)});
            };

            // edges: 0 = S, 1 = E, 2 = N, 3 = W; material (phi > t) stays left
            switch (code) {
            case 1: emit(0, 3); break;
            case 2: emit(1, 0); break;
            case 3: emit(1, 3); break;
            case 4: emit(2, 1); break;
            case 5: {
                const bool center_in = 0.25 * (v00 + v10 + v11 + v01) > tt;
                if (center_in) {
                    emit(2, 3);
                    emit(0, 1);
                } else {
                    emit(0, 3);
                    emit(2, 1);
                }
                break;
            }
            case 6: emit(2, 0); break;
            case 7: emit(2, 3); break;
            case 8: emit(3, 2); break;
            case 9: emit(0, 2); break;
            case 10: {
                const bool center_in = 0.25 * (v00 + v10 + v11 + v01) > tt;
                if (center_in) {
                    emit(3, 0);
                    emit(1, 2);
                } else {
                    emit(1, 0);
                    emit(3, 2);
                }
                break;
            }
            case 11: emit(1, 2); break;
            case 12: emit(3, 1); break;
            case 13: emit(0, 1); break;
            case 14: emit(3, 0); break;
            default: break;
            }
        }
    }
    if (segs.empty()) throw EmptyLevelSet("no contour at this level");

    std::vector<Ring> rings;
    std::vector<char> used(segs.size(), 0);
    for (std::size_t s0 = 0; s0 < segs.size(); ++s0) {
        if (used[s0]) continue;
        Ring ring;
        std::size_t cur = s0;
        for (std::size_t guard = 0; guard <= segs.size(); ++guard) {
            used[cur] = 1;
            ring.push_back(segs[cur].from_pt);
            const auto it = start_at.find(segs[cur].to);
            if (it == start_at.end()) throw OverlayFailure("open level-set contour");
            cur = it->second;
            if (cur == s0) break;
            if (used[cur]) throw OverlayFailure("level-set contour self-links");
        }
        if (std::abs(ring_signed_area(ring)) < kMinRingArea) continue;
        rings.push_back(std::move(ring));
    }
    if (rings.empty()) throw EmptyLevelSet("contour encloses no area");
    return make_polygon_set(rings);
}

double choose_level(const GridField& phi, const PolygonalSet& e) {
    const double target = perimeter(e);
    double best_t = -1, best_score = 0;
    for (int k = 10; k <= 90; ++k) {
        const double t = k / 100.0;
        try {
            const PolygonalSet f = extract_level_set(phi, t);
            const double score = std::abs(perimeter(f) - target);
            if (best_t < 0 || score < best_score) {
                best_t = t;
                best_score = score;
            }
        } catch (const Error&) {
            continue; // degenerate level (empty, pinched or self-touching contour)
        }
    }
    if (best_t < 0) throw NoAdmissibleLevel("every level in (0.1, 0.9) is degenerate");
    return best_t;
}

PolygonalSet detach(const PolygonalSet& f, const GridField& phi, double t,
                    const PolygonalSet& omega, const Universe& u) {
    const double eta = (0.9 - t) / 64.0;
    const double tau = u.measure_tol();
    double best_len = -1;
    for (int k = 0; k <= 32; ++k) {
        PolygonalSet g;
        try {
            g = (k == 0) ? f : extract_level_set(phi, t + k * eta);
        } catch (const Error&) {
            continue;
        }
        const double len = common_boundary(g, omega).total_length();
        if (len < tau) return g;
        if (best_len < 0 || len < best_len) best_len = len;
    }
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "no level in the sigma family separates from the container "
                  "(best overlap %.3g)",
                  best_len);
    throw DetachFailed(msg);
}

} // namespace perimetry
