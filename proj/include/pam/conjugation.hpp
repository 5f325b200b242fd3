#pragma once

#include "pam/core.hpp"
#include "pam/dynamics.hpp"
#include "pam/heckemahler.hpp"

namespace pam {

// Bundle for evaluating the conjugation phi between the lift F and the
// translation y -> y + rho.  Construction checks lambda mu^rho < 1.
class ConjugationSpec {
public:
    ConjugationSpec(const MapParams& params, const RotationValue& rho,
                    const SeriesTolerance& tol = {});

    const MapParams& params() const noexcept { return params_; }
    const RotationValue& rho() const noexcept { return rho_; }
    const SeriesTolerance& tol() const noexcept { return tol_; }
    double rho_value() const noexcept { return rho_.approx; }

private:
    MapParams params_;
    RotationValue rho_;
    SeriesTolerance tol_;
};

// phi(y) (Side::AtPoint) or phi(y^-) (Side::LeftLimit).
//
// Rational rho = p/q: phi is constant on the cells [n + m/q, n + (m+1)/q)
// and is evaluated in closed form from the exact cell index (one q-term sum and
// the geometric factor 1/(1 - lambda^q mu^p)); no epsilon-shifted evaluation.
// The left limit at a grid point uses the ceiling-sum form.  A double y within
// 32*eps*q of a grid point is snapped onto it.
//
// Irrational rho (rho.exact() == false): the lacunary floor/ceiling series with
// float floors; the known caveat near the lattice y in rho Z + Z applies.
// stats reports terms/tail for the series path (0/0 for the closed form).
double phi_eval(const ConjugationSpec& spec, SideReal y, SeriesStats* stats = nullptr);

// phi at exactly y = y_floor + m/q (rational rho only, 0 <= m < q): the exact
// grid evaluator behind cycle extraction.  Side::LeftLimit gives phi(y^-).
double phi_grid(const ConjugationSpec& spec, long long y_floor, long long m,
                Side side = Side::AtPoint);

// Same value via the single-variable series route:
//   phi(y) = floor(y) + delta/(1-lambda)
//          - ((delta - mu(lambda+delta-1))/lambda) * phi_series(lambda, mu, rho, -{y}).
double phi_eval_via_hm(const ConjugationSpec& spec, double y, unsigned prec_bits = 0);

// |lift_F(phi(y)) - phi(y + rho)| — the conjugacy defect at y.
double conjugacy_residual(const ConjugationSpec& spec, double y);

}  // namespace pam
