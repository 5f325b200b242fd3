#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pam/core.hpp"

namespace pam {

// One step of the interval map on [0, 1).  Branch choice is the raw float
// comparison x < eta against the cached eta; output is clamped into [0, 1)
// (rounding can graze the excluded endpoints).  Throws RangeError off-domain.
double f_apply(const MapParams& p, double x);

// Left-limit variant on (0, 1]: branch 1 on (0, eta], branch 2 on (eta, 1],
// so f_left(eta) = 1 and f_left(1) = mu(lambda + delta - 1).  Output in (0, 1].
double f_left(const MapParams& p, double x);

// The lift F(x) = floor(x) + f({x}) + [branch 2 taken], which satisfies
// F(x+1) = F(x) + 1 and {F(x)} = f({x}) exactly in floats by construction.
// Side::LeftLimit gives F(x^-): f_left on the fractional part, with the
// integer-x case handled per the definition (F(n^-) = n + mu(lambda+delta-1)).
double lift_F(const MapParams& p, double x, Side side = Side::AtPoint);

// Inverse where defined: nullopt exactly when x lies in the missed interval
// [mu(lambda+delta-1), delta).  Throws RangeError for x outside [0, 1).
std::optional<double> f_inverse(const MapParams& p, double x);

// Orbit of the lift from x0 in [0, 1): points x_0..x_n (lifted, so
// floor(x_k) counts accumulated branch-2 visits) and the n itinerary bits
// b_k = floor(x_{k+1}) - floor(x_k), recorded from the branch decisions.
struct OrbitTrace {
    double start = 0.0;
    std::vector<double> points;
    std::vector<unsigned char> itinerary;
};

OrbitTrace forward_orbit(const MapParams& p, double x0, std::uint64_t n);

// Closed form for x_{l+n} given x_l (lifted) and the itinerary window
// bits[l..l+n-1]:
//   x_{l+n} = floor(x_{l+n}) + (1-delta)/lambda
//           + lambda^n mu^{B_n} ({x_l} - (1-delta)/lambda)
//           + sum_{k=0}^{n-1} lambda^k mu^{B_k} ((lambda+delta-1)/lambda - b_{l+n-1-k})
// where B_k is the number of branch-2 visits in the last k steps.  Throws
// RangeError when the reconstructed fractional part leaves [0, 1) (the
// telltale of an itinerary inconsistent with the parameters) or when a bit
// is outside {0, 1}.
double orbit_closed_form(const MapParams& p, double x_l,
                         std::span<const unsigned char> itinerary,
                         std::size_t l, std::size_t n);

}  // namespace pam
