#ifndef PERIMETRY_VERIFY_HPP
#define PERIMETRY_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "perimetry/density.hpp"
#include "perimetry/geometry.hpp"

namespace perimetry {

// Which contract the report is judged against. Removal asks for an unchanged
// trace inside the container; Approx adds the in-container perimeter clause;
// Weighted is Approx with f/g measures.
enum class CheckMode { Removal, Approx, Weighted };

struct ClauseVerdict {
    std::string name;
    double measured = 0, budget = 0;
    bool ok() const { return measured < budget; }
};

// Everything the constructions promise, measured from (E, F, Omega) alone.
// Verdicts are recomputed from the stored fields on every call; nothing is
// cached at construction time.
struct ApproxReport {
    CheckMode mode = CheckMode::Approx;
    double d_per_in = 0;      // |P(F; Omega) - P(E; Omega)|, g-weighted in Weighted mode
    double d_per_total = 0;   // |P(F) - P(E)|, g-weighted in Weighted mode
    double d_vol = 0;         // area(F delta E), f-weighted in Weighted mode
    double cb_len = 0;        // exact shared-boundary length of (F, Omega)
    double inside_mismatch = 0; // area((F cap Omega) delta (E cap Omega)); Removal only
    double eps = 0;
    double tau = 0;
    int passes = 0;           // detachment passes reported by the construction

    std::vector<ClauseVerdict> clauses() const;
    bool pass() const;
};

ApproxReport check_clauses(const PolygonalSet& e, const PolygonalSet& f,
                           const PolygonalSet& omega, double eps, const Universe& u,
                           CheckMode mode, const Density* fdens = nullptr,
                           const DirectionalDensity* gdens = nullptr);

// Area by exact-clipped pixel coverage: an arithmetic path independent of the
// lattice shoelace. |result - area(e)| <= perimeter(e)/resolution.
double raster_area_oracle(const PolygonalSet& e, int resolution);

// Cauchy-Crofton estimate: random lines (angle uniform in [0, pi), offset
// uniform across the bounding disk), perimeter = pi * R * mean crossing count.
struct CroftonEstimate {
    double estimate = 0;
    double stderr_ = 0;
};
CroftonEstimate crofton_perimeter_oracle(const PolygonalSet& e, int n_lines,
                                         std::uint64_t seed);

// Convergence audit of a set sequence against its limit: per-step length of
// boundary not shared with the previous step, and the perimeter gap to F.
// Passing needs both tails under 10 * tau_meas, strictly looser than what the
// constructions enforce, so their outputs never false-fail here.
struct LimitReport {
    std::vector<double> new_boundary;  // length(bd F_{j+1} outside bd F_j overlap)
    std::vector<double> perimeter_gap; // |P(F_j) - P(F)|
    std::vector<double> volume_gap;    // area(F_j delta F)
    double tol = 0;

    double boundary_tail() const;  // last two increments
    double perimeter_tail() const; // worst of the last two gaps
    bool pass() const { return boundary_tail() < tol && perimeter_tail() < tol; }
};
LimitReport boundary_limit_check(const std::vector<PolygonalSet>& seq,
                                 const PolygonalSet& f);

} // namespace perimetry

#endif
