#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "pam/core.hpp"
#include "pam/heckemahler.hpp"
#include "pam/rotation.hpp"

namespace pam {

// The l-th removed gap [left, right) of the attracting Cantor set
// (irrational rotation number regime).
struct Gap {
    std::uint64_t index = 0;  // l >= 1
    double left = 0.0;        // xi_l^-
    double right = 0.0;       // xi_l; right - left = lambda^{l-1} mu^{floor(l rho)} w_1
};

// A periodic orbit: points sorted ascending.  f-cycles live in [0, 1);
// an f_left-cycle (right-endpoint regime) lives in (0, 1] and may contain 1.
struct Cycle {
    std::vector<double> points;
    RationalRot rot;
};

// Half-open circular interval [a, b) on R/Z; wraps through 0 when b <= a.
struct CircularInterval {
    double a = 0.0;
    double b = 0.0;
    double length() const noexcept;
    bool contains(double x) const noexcept;
};

// f^n([0,1)) as a disjoint union of circular intervals.
struct IntervalDecomposition {
    std::vector<CircularInterval> intervals;  // sorted by start point
    std::uint64_t n = 0;
    double measure = 0.0;
};

// Closed-form endpoints of gap l (pre: rho irrational and delta consistent
// with it, i.e. delta = delta_of_rho(lambda, mu, rho)).  l = 1 is exactly
// (mu(lambda+delta-1), delta), to which the general sum reduces algebraically.
Gap gap_endpoints(const MapParams& p, double rho, std::uint64_t l,
                  const SeriesTolerance& tol = {});

// Gaps 1..L sorted by left endpoint; throws PrecisionExhausted naming the
// offending pair if two of them overlap (they are pairwise disjoint exactly).
std::vector<Gap> gaps_up_to(const MapParams& p, double rho, std::uint64_t L,
                            const SeriesTolerance& tol = {});

// The attracting q-cycle zeta_m = phi(m/q), m = 0..q-1, sorted ascending.
// Requires delta interior to the step of rot or at its left endpoint
// (RangeError otherwise — at the right endpoint f has no cycle).
Cycle cycle_points(const MapParams& p, const RationalRot& rot,
                   const SeriesTolerance& tol = {});

struct ImageOptions {
    BigInt max_den = 1'000'000;  // rationality search depth for classification
    SeriesTolerance tol = {};
};

// f^n([0,1)): for rational rotation number p/q the complement of the last
// min(n, q) holes [f^l(1^-), f^l(0)) (earlier holes nest inside them); for the
// irrational regime the complement of the first n Cantor gaps.  Endpoints are
// iterated directly; lengths are tracked multiplicatively once arcs shrink.
IntervalDecomposition iterated_image(const MapParams& p, std::uint64_t n,
                                     const ImageOptions& opts = {});

// Approximation of a Cantor limit set by its first gaps.
struct CantorApprox {
    std::vector<Gap> gaps;
    double rho = 0.0;
};

// The f_left-cycle of the right-endpoint regime (contains 1).
struct FiniteSet {
    std::vector<double> points;
    RationalRot rot;
};

using OmegaSet = std::variant<Cycle, CantorApprox, FiniteSet>;

struct OmegaOptions {
    std::uint64_t orbit_steps = 10'000;
    std::uint64_t gap_depth = 60;
    double tol = 1e-9;
    SeriesTolerance series = {};
    BigInt max_den = 1'000'000;
};

// Classifies the forward limit set of x and verifies the orbit approaches it:
// the distance to the candidate set over the last 10% of steps must be
// non-increasing (slack 1e-15) and end below opts.tol, else ApproachNotObserved.
OmegaSet omega_limit(const MapParams& p, double x, const OmegaOptions& opts = {});

// The f_left q-cycle w_m = phi((m/q)^-), m = 1..q (ascending, w_q = phi(1^-)).
// Requires delta_left < delta <= delta_right for rot (RangeError otherwise).
Cycle fminus_cycle(const MapParams& p, const RationalRot& rot,
                   const SeriesTolerance& tol = {});

// Periodicity search with exact validation: proposes a period from the orbit
// tail, solves the affine cycle system for the proposed branch word and checks
// branch membership, containment in [0,1) and closure <= close_tol.  A
// candidate with a point within rounding distance of the branch corner eta is
// rejected as undecidable.  Returns nullopt when no genuine cycle exists
// (float pseudo-cycles through the corner are rejected).
std::optional<Cycle> find_orbit_cycle(const MapParams& p, double x0,
                                      std::uint64_t steps, std::uint64_t max_period,
                                      double close_tol = 1e-12);

}  // namespace pam
