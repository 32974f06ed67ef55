#ifndef PERIMETRY_ERRORS_HPP
#define PERIMETRY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace perimetry {

// All recoverable failures derive from Error so callers (and the CLI, which maps
// them to exit code 2) can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidArgument : Error { using Error::Error; };

// geometry construction / overlay
struct SelfIntersection : Error { using Error::Error; };
struct DegenerateRing : Error { using Error::Error; };
struct NestingViolation : Error { using Error::Error; };
struct OverlayFailure : Error { using Error::Error; };

// pushout
struct BumpEscapesUniverse : Error { using Error::Error; };
struct HeightSelectionFailed : Error { using Error::Error; };
struct BudgetExhausted : Error {
    double residual;
    BudgetExhausted(const std::string& msg, double res) : Error(msg), residual(res) {}
};

// mollification / level sets
struct GridTooCoarse : Error { using Error::Error; };
struct EmptyLevelSet : Error { using Error::Error; };
struct NoAdmissibleLevel : Error { using Error::Error; };
struct DetachFailed : Error { using Error::Error; };

// densities
struct NonPositiveDensity : Error { using Error::Error; };
struct DiscontinuousDensity : Error { using Error::Error; };
struct NonConvexGauge : Error { using Error::Error; };
struct GBoundViolated : Error { using Error::Error; };
struct NoAdmissibleRadius : Error { using Error::Error; };

// verification
struct SequenceTooShort : Error { using Error::Error; };

} // namespace perimetry

#endif
