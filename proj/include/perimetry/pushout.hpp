#ifndef PERIMETRY_PUSHOUT_HPP
#define PERIMETRY_PUSHOUT_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "perimetry/boundary.hpp"
#include "perimetry/geometry.hpp"

namespace perimetry {

// Relative height factor for a bump over `seg`, in (0, 1]. Used by the
// density-weighted pipeline to shrink bumps where the boundary density is
// small relative to its local maximum; the unweighted pipeline uses 1.
using HeightWeight =
    std::function<double(Point midpoint, Vec2 normal, const OrientedSegment& seg)>;

struct PassRecord {
    int index = 0;
    char direction = '+'; // '+' pushes material out, '-' pulls it in
    double delta = 0;
    int bumps = 0;
    double d_perimeter = 0;     // perimeter(after) - perimeter(before)
    double d_area = 0;          // area(sym diff across the pass)
    double gamma_plus_after = 0;
    double gamma_minus_after = 0;
    double cost_ratio = 0;      // |d_perimeter| / (delta * treated length)
};

struct PushoutTrace {
    std::vector<PassRecord> passes;
    double residual = 0; // common-boundary length left at the end
    std::string csv() const;
};

// One bump: attaches the sliver (rectangle over seg, minus omega) to E. The
// rectangle height is scanned over 16 candidates in (delta*len*w, 2*delta*len*w)
// and the one clearing arrangement vertices best is kept; when that window falls
// under the snap scale the smallest lattice heights are scanned instead. E gains
// material only outside omega, so E and the result agree inside omega exactly.
PolygonalSet bump_segment(const PolygonalSet& e, const PolygonalSet& omega,
                          const OrientedSegment& seg, double delta, const Universe& u,
                          const HeightWeight& weight = nullptr);

// Repeatedly bumps the longest gamma-plus segment until the class is exhausted
// (exact_common_boundary below tau_meas). New common boundary produced by a bump
// always lands in gamma-minus, so the loop terminates after roughly one bump per
// segment.
PolygonalSet push_out_gamma_plus(const PolygonalSet& e, const PolygonalSet& omega,
                                 double delta, const Universe& u, PushoutTrace* trace = nullptr,
                                 const HeightWeight& weight = nullptr);

// Dual pass through the complement: removes material just inside bd(Omega)
// where gamma-minus lives. Acts only outside omega as well.
PolygonalSet pull_in_gamma_minus(const PolygonalSet& e, const PolygonalSet& omega,
                                 double delta, const Universe& u, PushoutTrace* trace = nullptr,
                                 const HeightWeight& weight = nullptr);

struct RemoveOptions {
    int max_passes = 0;          // 0: use PERIMETRY_MAX_PASSES env or 64
    HeightWeight weight = nullptr;
};

int default_max_passes();

// Alternating gamma-plus / gamma-minus passes with geometrically shrinking
// budgets eps/2^j (delta_1 chosen so the first pass spends at most eps/6 of
// area). A pass whose measured perimeter drift exceeds its eps/2^(j+1) share
// is discarded and retried at half the height scale, so the committed drift
// sums below eps/2. Returns a set with exact_common_boundary(result, omega)
// < tau_meas whose intersection with omega equals E's. Throws BudgetExhausted
// if the pass cap is reached with residual common boundary.
PolygonalSet remove_common_boundary(const PolygonalSet& e, const PolygonalSet& omega,
                                    double eps, const Universe& u,
                                    PushoutTrace* trace = nullptr,
                                    const RemoveOptions& opts = {});

} // namespace perimetry

#endif
