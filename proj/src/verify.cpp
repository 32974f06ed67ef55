#include "perimetry/verify.hpp"

#include <cmath>

#include "perimetry/boundary.hpp"
#include "perimetry/grid.hpp"

namespace perimetry {

std::vector<ClauseVerdict> ApproxReport::clauses() const {
    std::vector<ClauseVerdict> out;
    if (mode == CheckMode::Removal)
        out.push_back({"inside-match", inside_mismatch, tau});
    else
        out.push_back({"in-container-perimeter", d_per_in, eps});
    out.push_back({"total-perimeter", d_per_total, eps});
    out.push_back({"volume", d_vol, eps});
    out.push_back({"common-boundary", cb_len, tau});
    return out;
}

bool ApproxReport::pass() const {
    for (const ClauseVerdict& c : clauses())
        if (!c.ok()) return false;
    return true;
}

ApproxReport check_clauses(const PolygonalSet& e, const PolygonalSet& f,
                           const PolygonalSet& omega, double eps, const Universe& u,
                           CheckMode mode, const Density* fdens,
                           const DirectionalDensity* gdens) {
    if (mode == CheckMode::Weighted && (!fdens || !gdens))
        throw InvalidArgument("weighted check needs both densities");
    ApproxReport r;
    r.mode = mode;
    r.eps = eps;
    r.tau = u.measure_tol();
    r.cb_len = exact_common_boundary(f, omega).total_length();

    if (mode == CheckMode::Weighted) {
        r.d_per_in = std::abs(weighted_perimeter(f, *gdens, &omega) -
                              weighted_perimeter(e, *gdens, &omega));
        r.d_per_total = std::abs(weighted_perimeter(f, *gdens) -
                                 weighted_perimeter(e, *gdens));
        const PolygonalSet sym = boolean(f, e, BoolOp::SymmetricDifference);
        r.d_vol = weighted_area(sym, *fdens);
    } else {
        r.d_per_in = std::abs(relative_perimeter(f, omega) - relative_perimeter(e, omega));
        r.d_per_total = std::abs(perimeter(f) - perimeter(e));
        r.d_vol = symmetric_difference_area(f, e);
    }
    if (mode == CheckMode::Removal) {
        const PolygonalSet fi = boolean(f, omega, BoolOp::Intersection);
        const PolygonalSet ei = boolean(e, omega, BoolOp::Intersection);
        r.inside_mismatch = symmetric_difference_area(fi, ei);
    }
    return r;
}

double raster_area_oracle(const PolygonalSet& e, int resolution) {
    if (resolution < 16) throw InvalidArgument("resolution below 16 cells per unit");
    if (e.empty()) return 0;
    double xmin, ymin, xmax, ymax;
    bounding_box(e, xmin, ymin, xmax, ymax);
    const double h = 1.0 / resolution;
    const Point origin{std::floor(xmin / h) * h, std::floor(ymin / h) * h};
    const std::size_t ncx = std::size_t(std::ceil((xmax - origin.x) / h)) + 1;
    const std::size_t ncy = std::size_t(std::ceil((ymax - origin.y) / h)) + 1;
    if (ncx * ncy > std::size_t(64) * 1024 * 1024)
        throw InvalidArgument("raster exceeds the memory budget");
    double total = 0;
    for (double c : coverage_raster(e, origin, h, ncx, ncy)) total += c;
    return total * h * h;
}

CroftonEstimate crofton_perimeter_oracle(const PolygonalSet& e, int n_lines,
                                         std::uint64_t seed) {
    if (n_lines < 1000) throw InvalidArgument("need at least 1000 lines");
    CroftonEstimate out;
    if (e.empty()) return out;

    double xmin, ymin, xmax, ymax;
    bounding_box(e, xmin, ymin, xmax, ymax);
    const Point c{0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
    // every line meeting E has |offset| at most half the bbox diagonal
    const double radius = 0.75 * std::hypot(xmax - xmin, ymax - ymin);

    std::uint64_t s = seed;
    auto uniform = [&s]() {
        s += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z ^= z >> 31;
        return double(z >> 11) * 0x1.0p-53;
    };

    const auto rings = e.rings();
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n_lines; ++i) {
        const double th = M_PI * uniform();
        const double p = radius * (2 * uniform() - 1);
        const Vec2 nrm{std::cos(th), std::sin(th)};
        int count = 0;
        for (const Ring* r : rings) {
            const std::size_t n = r->size();
            double sa = dot((*r)[0] - c, nrm) - p;
            for (std::size_t k = 0; k < n; ++k) {
                const double sb = dot((*r)[(k + 1) % n] - c, nrm) - p;
                if ((sa < 0 && sb > 0) || (sa > 0 && sb < 0)) ++count;
                sa = sb;
            }
        }
        sum += count;
        sum2 += double(count) * count;
    }
    const double mean = sum / n_lines;
    const double var = std::max(0.0, (sum2 - n_lines * mean * mean) / (n_lines - 1));
    out.estimate = M_PI * radius * mean;
    out.stderr_ = M_PI * radius * std::sqrt(var / n_lines);
    return out;
}

double LimitReport::boundary_tail() const {
    const std::size_t n = new_boundary.size();
    return new_boundary[n - 1] + new_boundary[n - 2];
}

double LimitReport::perimeter_tail() const {
    const std::size_t n = perimeter_gap.size();
    return std::max(perimeter_gap[n - 1], perimeter_gap[n - 2]);
}

LimitReport boundary_limit_check(const std::vector<PolygonalSet>& seq,
                                 const PolygonalSet& f) {
    if (seq.size() < 4) throw SequenceTooShort("need at least 4 sets");
    std::vector<const PolygonalSet*> all{&f};
    for (const PolygonalSet& s : seq) all.push_back(&s);
    const Universe u = Universe::around(all);

    LimitReport r;
    r.tol = 10 * u.measure_tol();
    const double pf = perimeter(f);
    for (std::size_t j = 0; j < seq.size(); ++j) {
        r.perimeter_gap.push_back(std::abs(perimeter(seq[j]) - pf));
        r.volume_gap.push_back(symmetric_difference_area(seq[j], f));
        if (j + 1 < seq.size()) {
            const double next = perimeter(seq[j + 1]);
            r.new_boundary.push_back(next - boundary_overlap_length(seq[j + 1], seq[j]));
        }
    }
    return r;
}

} // namespace perimetry
