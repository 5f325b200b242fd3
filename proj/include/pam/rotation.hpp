#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "pam/core.hpp"
#include "pam/heckemahler.hpp"

namespace pam {

// Where delta sits relative to the step of a given rational rotation number.
enum class PlateauSide { Interior, LeftEndpoint, RightEndpoint, Outside };

// Outcome class of an exact rotation-number search.
enum class RhoBoundary { Interior, LeftEndpoint, RightEndpoint, NotRational };

struct RotationResult {
    RotationValue value;              // exact p/q, or bracket midpoint +- half-width
    std::optional<Plateau> plateau;   // engaged when rational
    RhoBoundary boundary = RhoBoundary::NotRational;

    // Engaged only for NotRational: the Farey bracket (lo, hi) proven to
    // contain rho and to contain no rational with denominator <= max_den,
    // plus an independent orbit-counting estimate.
    std::optional<std::pair<Fraction, Fraction>> bracket;
    std::optional<RotationValue> orbit_estimate;

    struct Evidence {
        std::uint64_t orbit_steps = 0;   // steps spent on the estimate (0 if none)
        std::uint64_t search_depth = 0;  // plateau probes during the search
    } evidence;
};

struct RhoOptions {
    BigInt max_den = 1'000'000;
    double endpoint_rel_tol = 0.0;       // extra relative slack for endpoint hits
    std::uint64_t estimate_steps = 100'000;  // orbit length for the NotRational estimate
};

// floor(x_n)/n for the lift orbit of 0 — counts branch-2 visits of the circle
// orbit, so no magnitude-dependent drift.  error_bound = 2/n.
RotationValue rho_orbit_estimate(const MapParams& p, std::uint64_t n);

// Exact rotation number by Stern-Brocot descent over staircase steps, with
// run acceleration and (for lambda*mu >= 1) pruning of mediants >= r_bound.
RotationResult rho_exact(const MapParams& p, const RhoOptions& opts = {});
RotationResult rho_exact(const MapParams& p, const BigInt& max_den);

// Classification of delta against the step of rot.  Endpoint comparisons are
// exact float equality plus the optional relative tolerance.
PlateauSide classify_boundary(const MapParams& p, const RationalRot& rot,
                              double endpoint_rel_tol = 0.0);

}  // namespace pam
