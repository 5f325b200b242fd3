#pragma once

#include <cstdint>

#include "pam/core.hpp"

namespace pam {

// Truncation control for the lacunary series.  Summation stops once the
// rigorous tail bound drops below abs_tol; exceeding max_terms first raises
// SeriesError.
struct SeriesTolerance {
    double abs_tol = 1e-12;
    std::uint64_t max_terms = 1'000'000;
};

// Diagnostics of the last summation (optional out-param on the series calls).
struct SeriesStats {
    std::uint64_t terms = 0;    // terms actually summed
    double tail_bound = 0.0;    // rigorous bound on the discarded tail
};

// The closed staircase step at a rational rotation number:
// delta(lambda, mu, (p/q)^-) = delta_left < delta_right = delta(lambda, mu, p/q).
struct Plateau {
    RationalRot rot;
    double delta_left;
    double delta_right;
};

// sigma(lambda, mu, rho) = sum_{k>=1} (floor((k+1)rho) - floor(k rho)) *
// lambda^k mu^{floor(k rho)}.  Requires 0 < rho < r_bound(lambda, mu).
// prec_bits = 0 sums in doubles; prec_bits >= 16 sums with an MPFR scalar of
// that mantissa width (k*rho then exact w.r.t. the double rho, so the floor
// bits cannot be misrounded).
double sigma(double lambda, double mu, double rho, const SeriesTolerance& tol = {},
             SeriesStats* stats = nullptr, unsigned prec_bits = 0);

// Exact closed form of sigma at p/q (Side::AtPoint) or its left limit
// (Side::LeftLimit), via the finite sum s_sum and the geometric factor
// 1/(1 - lambda^q mu^p).
double sigma_rational(double lambda, double mu, const RationalRot& rot, Side side);

// S(lambda, mu, p/q) = sum_{k=1}^{q-2} (floor((k+1)p/q) - floor(kp/q)) *
// lambda^k mu^{floor(kp/q)}; 0 when q = 2.  Floors are exact integer arithmetic.
double s_sum(double lambda, double mu, const RationalRot& rot);

// psi(lambda, mu, rho) = (1/(1-lambda)) sum_{h>=1} lambda^{ceil(h/rho)} mu^h.
// Requires rho > 0 and lambda mu^rho < 1 (rho > 1 is allowed here).
double psi(double lambda, double mu, double rho, const SeriesTolerance& tol = {},
           SeriesStats* stats = nullptr, unsigned prec_bits = 0);

// phi_series(lambda, mu, rho, x) = sum_{k>=0} lambda^k (1 - mu^{c_k})/(1 - mu)
// with c_k = max(0, ceil(k rho + x.value)) (inner count of l in [0, k rho + x));
// the mu = 1 branch sums lambda^k c_k.  Left-limit side counts l < (k rho + x)^-,
// which coincides with the at-point value (the function is left continuous in x).
// Requires rho > 0 and lambda mu^rho < 1.
double phi_series(double lambda, double mu, double rho, SideReal x,
                  const SeriesTolerance& tol = {}, SeriesStats* stats = nullptr,
                  unsigned prec_bits = 0);

// The staircase delta(lambda, mu, rho) = (1-lambda)(1 + mu sigma)/(1 + (mu-1) sigma).
double delta_of_rho(double lambda, double mu, double rho, const SeriesTolerance& tol = {},
                    SeriesStats* stats = nullptr, unsigned prec_bits = 0);

// Both endpoints of the staircase step at p/q, in closed form.
// Requires p/q < r_bound(lambda, mu) (else RangeError).
Plateau delta_plateau(double lambda, double mu, const RationalRot& rot);

}  // namespace pam
