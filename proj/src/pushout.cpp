#include "perimetry/pushout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace perimetry {

std::string PushoutTrace::csv() const {
    std::string out =
        "pass,direction,delta,bumps,d_perimeter,d_area,gamma_plus_after,gamma_minus_after,"
        "cost_ratio\n";
    char buf[320];
    for (const PassRecord& p : passes) {
        std::snprintf(buf, sizeof buf, "%d,%c,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      p.index, p.direction, p.delta, p.bumps, p.d_perimeter, p.d_area,
                      p.gamma_plus_after, p.gamma_minus_after, p.cost_ratio);
        out += buf;
    }
    return out;
}

namespace {

// Shortest base a bump can still remove: below this the rectangle would fall
// under the ring-area floor even at the smallest lattice height.
constexpr double kBumpLenFloor = 16 * kSnap;

// Heights at which the rectangle top would graze existing geometry: vertex
// heights over the base line, plus edge heights clipped to the base span.
std::vector<double> grazing_levels(const PolygonalSet& s, Point a, Vec2 u, Vec2 n,
                                   double len, double hi) {
    std::vector<double> out;
    auto clip_edge = [&](Point p, Point q) {
        double tp = dot(p - a, u), tq = dot(q - a, u);
        double ep = dot(p - a, n), eq = dot(q - a, n);
        if ((tp < 0 && tq < 0) || (tp > len && tq > len)) return;
        if (tp > tq) {
            std::swap(tp, tq);
            std::swap(ep, eq);
        }
        const double dt = tq - tp;
        double e0 = ep, e1 = eq;
        if (dt > 0) {
            if (tp < 0) e0 = ep + (0 - tp) / dt * (eq - ep);
            if (tq > len) e1 = ep + (len - tp) / dt * (eq - ep);
        }
        for (double ee : {e0, e1})
            if (ee > 0 && ee < hi * 1.5) out.push_back(ee);
    };
    for (const Ring* r : s.rings()) {
        const std::size_t m = r->size();
        for (std::size_t k = 0; k < m; ++k) clip_edge((*r)[k], (*r)[(k + 1) % m]);
    }
    return out;
}

double height_weight_of(const HeightWeight& weight, const OrientedSegment& seg) {
    if (!weight) return 1.0;
    const Point mid{0.5 * (seg.a.x + seg.b.x), 0.5 * (seg.a.y + seg.b.y)};
    const double w = weight(mid, seg.normal, seg);
    if (!(w > 0) || w > 1.0) throw InvalidArgument("height weight must lie in (0, 1]");
    return w;
}

} // namespace

PolygonalSet bump_segment(const PolygonalSet& e, const PolygonalSet& omega,
                          const OrientedSegment& seg, double delta, const Universe& u,
                          const HeightWeight& weight) {
    if (!(delta > 0) || delta >= 0.5) throw InvalidArgument("delta must lie in (0, 1/2)");
    const double len = seg.length();
    if (len < kBumpLenFloor)
        throw InvalidArgument("segment too short to clear the ring-area floor");
    const double w = height_weight_of(weight, seg);

    // Window (delta*len*w, 2*delta*len*w), or the smallest lattice heights when
    // that window falls under the snap scale. Out of 16 candidates keep the one
    // clearing grazing levels best; ties resolve to the lower height.
    double lo = delta * len * w, hi = 2 * delta * len * w;
    double min_clear = 4 * kSnap;
    if (lo < kBumpLenFloor) {
        lo = 2 * kSnap;
        hi = 8 * kSnap;
        min_clear = 1.4 * kSnap;
    }

    const Vec2 dir = (1.0 / len) * (seg.b - seg.a);
    const Vec2 n = seg.normal;

    std::vector<double> levels = grazing_levels(e, seg.a, dir, n, len, hi);
    {
        std::vector<double> more = grazing_levels(omega, seg.a, dir, n, len, hi);
        levels.insert(levels.end(), more.begin(), more.end());
    }

    double best_h = 0, best_clear = -1;
    for (int k = 1; k <= 16; ++k) {
        const double h = lo + (hi - lo) * k / 17.0;
        double clear = std::numeric_limits<double>::infinity();
        for (double lv : levels) clear = std::min(clear, std::abs(h - lv));
        if (clear > best_clear + kSnap * 1e-3) {
            best_clear = clear;
            best_h = h;
        }
    }
    if (best_clear < min_clear)
        throw HeightSelectionFailed("every candidate height grazes a vertex");

    const Point a = seg.a, b = seg.b;
    const Point c = b + best_h * n, d = a + best_h * n;
    for (const Point& p : {a, b, c, d})
        if (p.x <= u.xmin || p.x >= u.xmax || p.y <= u.ymin || p.y >= u.ymax)
            throw BumpEscapesUniverse("bump rectangle reaches the universe boundary");

    const PolygonalSet rect = make_polygon_set({Ring{a, b, c, d}});
    const PolygonalSet sliver = boolean(rect, omega, BoolOp::Difference);
    if (sliver.empty()) return e; // base faces omega's interior across its whole span
    return boolean(e, sliver, BoolOp::Union);
}

namespace {

// One full gamma-plus pass on S (bump until the class is spent). Fills `rec`
// except index/direction.
PolygonalSet run_plus_pass(const PolygonalSet& s, const PolygonalSet& omega, double delta,
                           const Universe& u, const HeightWeight& weight, PassRecord& rec) {
    const double tau = u.measure_tol();
    PolygonalSet cur = s;
    const double p_before = perimeter(s);
    rec.delta = delta;
    rec.bumps = 0;

    CommonBoundary cb = exact_common_boundary(cur, omega);
    const double treated = cb.plus_length();
    const int guard = 64 + 4 * int(cb.gamma_plus.size());
    for (int iter = 0; iter < guard; ++iter) {
        if (cb.plus_length() < tau) break;
        // longest first; ties resolved by position for determinism
        std::vector<const OrientedSegment*> order;
        for (const auto& g : cb.gamma_plus) order.push_back(&g);
        std::sort(order.begin(), order.end(),
                  [](const OrientedSegment* x, const OrientedSegment* y) {
                      const double lx = x->length(), ly = y->length();
                      if (lx != ly) return lx > ly;
                      if (x->a.x != y->a.x) return x->a.x < y->a.x;
                      return x->a.y < y->a.y;
                  });
        bool advanced = false;
        for (const OrientedSegment* segp : order) {
            if (segp->length() < kBumpLenFloor) continue;
            PolygonalSet next = cur;
            double dtry = delta;
            for (int retry = 0;; ++retry) {
                try {
                    next = bump_segment(cur, omega, *segp, dtry, u, weight);
                    break;
                } catch (const HeightSelectionFailed&) {
                    if (retry >= 6) throw;
                    dtry *= 0.5;
                } catch (const OverlayFailure&) {
                    // a degenerate alignment at this height; different heights
                    // give a different arrangement
                    if (retry >= 6) throw;
                    dtry *= 0.5;
                }
            }
            ++rec.bumps;
            cur = std::move(next);
            advanced = true;
            break;
        }
        if (!advanced) break; // only sub-floor slivers remain
        cb = exact_common_boundary(cur, omega);
    }

    rec.d_perimeter = perimeter(cur) - p_before;
    rec.d_area = symmetric_difference_area(cur, s);
    rec.gamma_plus_after = cb.plus_length();
    rec.gamma_minus_after = cb.minus_length();
    rec.cost_ratio = (treated > 0 && delta > 0) ? std::abs(rec.d_perimeter) / (delta * treated) : 0;
    return cur;
}

} // namespace

PolygonalSet push_out_gamma_plus(const PolygonalSet& e, const PolygonalSet& omega,
                                 double delta, const Universe& u, PushoutTrace* trace,
                                 const HeightWeight& weight) {
    PassRecord rec;
    rec.direction = '+';
    PolygonalSet out = run_plus_pass(e, omega, delta, u, weight, rec);
    if (trace) {
        rec.index = int(trace->passes.size()) + 1;
        trace->passes.push_back(rec);
        trace->residual = rec.gamma_plus_after + rec.gamma_minus_after;
    }
    return out;
}

PolygonalSet pull_in_gamma_minus(const PolygonalSet& e, const PolygonalSet& omega,
                                 double delta, const Universe& u, PushoutTrace* trace,
                                 const HeightWeight& weight) {
    PassRecord rec;
    rec.direction = '-';
    const PolygonalSet comp = complement(e, u);
    const PolygonalSet comp_out = run_plus_pass(comp, omega, delta, u, weight, rec);
    PolygonalSet out = complement(comp_out, u);
    // report the pass in terms of E, not its complement
    const CommonBoundary cb = exact_common_boundary(out, omega);
    rec.gamma_plus_after = cb.plus_length();
    rec.gamma_minus_after = cb.minus_length();
    if (trace) {
        rec.index = int(trace->passes.size()) + 1;
        trace->passes.push_back(rec);
        trace->residual = rec.gamma_plus_after + rec.gamma_minus_after;
    }
    return out;
}

int default_max_passes() {
    if (const char* env = std::getenv("PERIMETRY_MAX_PASSES")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 64;
}

PolygonalSet remove_common_boundary(const PolygonalSet& e, const PolygonalSet& omega,
                                    double eps, const Universe& u, PushoutTrace* trace,
                                    const RemoveOptions& opts) {
    if (!(eps > 0)) throw InvalidArgument("eps must be positive");
    const int max_passes = opts.max_passes > 0 ? opts.max_passes : default_max_passes();
    const double tau = u.measure_tol();

    PolygonalSet cur = e;
    CommonBoundary cb = exact_common_boundary(cur, omega);
    if (cb.total_length() < tau) {
        if (trace) trace->residual = cb.total_length();
        return cur;
    }
    // A bump over a segment of length l adds at most 2*delta*l^2 of area, so the
    // first pass spends at most 2*delta*max_len*total <= eps/6; later passes halve it.
    double max_len = 0;
    for (const auto& g : cb.gamma_plus) max_len = std::max(max_len, g.length());
    for (const auto& g : cb.gamma_minus) max_len = std::max(max_len, g.length());
    double delta = std::min(0.45, eps / (12.0 * cb.total_length() * max_len));

    for (int j = 1; j <= max_passes; ++j) {
        cb = exact_common_boundary(cur, omega);
        if (cb.total_length() < tau) {
            if (trace) trace->residual = cb.total_length();
            return cur;
        }
        const bool plus_turn = (j % 2 == 1);
        const double relevant = plus_turn ? cb.plus_length() : cb.minus_length();
        if (relevant >= tau) {
            // Each pass owns eps/2^(j+1) of perimeter drift, so the committed
            // total stays under eps/2. A pass can overshoot its share when a
            // sliver rectangle truncates a feature thinner than the bump
            // height (the cut trades the feature's width, not O(delta*len));
            // the cost is linear in the height scale, so halving converges.
            const double pass_budget = eps * std::pow(0.5, std::min(j, 40) + 1);
            double dtry = delta;
            PolygonalSet next;
            PushoutTrace tmp;
            for (int attempt = 0;; ++attempt) {
                tmp.passes.clear();
                next = plus_turn
                           ? push_out_gamma_plus(cur, omega, dtry, u, &tmp, opts.weight)
                           : pull_in_gamma_minus(cur, omega, dtry, u, &tmp, opts.weight);
                if (std::abs(tmp.passes[0].d_perimeter) <= pass_budget) break;
                if (attempt >= 12)
                    throw BudgetExhausted("pass perimeter cost will not fit its budget share",
                                          std::abs(tmp.passes[0].d_perimeter));
                dtry *= 0.5;
            }
            cur = std::move(next);
            if (trace) {
                PassRecord rec = tmp.passes[0];
                rec.index = int(trace->passes.size()) + 1;
                trace->passes.push_back(rec);
                trace->residual = rec.gamma_plus_after + rec.gamma_minus_after;
            }
            delta = dtry;
        }
        delta *= 0.5;
    }
    cb = exact_common_boundary(cur, omega);
    if (trace) trace->residual = cb.total_length();
    if (cb.total_length() < tau) return cur;
    throw BudgetExhausted("pass cap reached with residual common boundary", cb.total_length());
}

} // namespace perimetry
