#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "pam/errors.hpp"

namespace pam {

using BigInt = boost::multiprecision::cpp_int;

// Supremum of the admissible delta range: 1 when lambda*mu < 1,
// mu(1-lambda)/(mu-1) when lambda*mu >= 1 (mu = 1 forces lambda*mu < 1).
double d_bound(double lambda, double mu);

// Supremum of attainable rotation numbers: 1 when lambda*mu < 1,
// -log(lambda)/log(mu) otherwise.  Always in (0, 1].
double r_bound(double lambda, double mu);

// Validated parameter triple for the two-branch map
//   f(x) = lambda*x + delta            on [0, eta)
//   f(x) = mu*(lambda*x + delta - 1)   on [eta, 1),   eta = (1-delta)/lambda.
// Only constructible through validate_params, so holders are always admissible.
class MapParams {
public:
    double lambda() const noexcept { return lambda_; }
    double mu() const noexcept { return mu_; }
    double delta() const noexcept { return delta_; }
    double eta() const noexcept { return eta_; }  // cached (1 - delta) / lambda

private:
    MapParams(double lambda, double mu, double delta, double eta) noexcept
        : lambda_(lambda), mu_(mu), delta_(delta), eta_(eta) {}

    friend MapParams validate_params(double lambda, double mu, double delta);

    double lambda_, mu_, delta_, eta_;
};

// Checks 0 < lambda < 1, mu > 0, 1 - lambda < delta < d_bound(lambda, mu).
// delta == d_bound with lambda*mu > 1 raises the distinct BijectiveBoundary
// reason; every violation message names the offending bound.
MapParams validate_params(double lambda, double mu, double delta);

inline double eta(const MapParams& p) noexcept { return p.eta(); }

// Exact reduced fraction with positive denominator.  General-purpose (allows
// 0/1, 1/1, values outside (0,1)); used for Farey endpoints and brackets.
struct Fraction {
    BigInt num;
    BigInt den;  // always > 0 after construction

    Fraction() : num(0), den(1) {}
    Fraction(BigInt n, BigInt d);  // reduces; throws RangeError if d == 0

    double to_double() const;
    std::string str() const;  // "num/den"

    friend bool operator==(const Fraction& a, const Fraction& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Fraction& a, const Fraction& b) {
        return a.num * b.den < b.num * a.den;
    }
};

// Mediant (a.num + b.num) / (a.den + b.den), reduced (it already is when a, b
// are Farey neighbours).  The checked overload throws FareyOverflow when the
// mediant denominator exceeds max_den.
Fraction farey_mediant(const Fraction& a, const Fraction& b);
Fraction farey_mediant(const Fraction& a, const Fraction& b, const BigInt& max_den);

// Rotation number p/q in lowest terms, restricted to 0 < p/q < 1.
class RationalRot {
public:
    RationalRot(BigInt p, BigInt q);  // reduces; throws RangeError unless 0 < p/q < 1
    RationalRot(long long p, long long q) : RationalRot(BigInt(p), BigInt(q)) {}

    const BigInt& p() const noexcept { return p_; }
    const BigInt& q() const noexcept { return q_; }

    double to_double() const;
    Fraction frac() const { return Fraction(p_, q_); }
    std::string str() const;

    friend bool operator==(const RationalRot& a, const RationalRot& b) {
        return a.p_ == b.p_ && a.q_ == b.q_;
    }

private:
    BigInt p_, q_;
};

// Which one-sided value of a discontinuous quantity is requested.
enum class Side { AtPoint, LeftLimit };

struct SideReal {
    double value = 0.0;
    Side side = Side::AtPoint;
};

// A rotation number that is either exactly rational or a real approximation
// with an explicit error bound.
struct RotationValue {
    std::optional<RationalRot> rational;  // engaged <=> exact
    double approx = 0.0;                  // always set (p/q as double when exact)
    double error_bound = 0.0;             // 0 when exact

    bool exact() const noexcept { return rational.has_value(); }

    static RotationValue exact_rational(const RationalRot& r);
    static RotationValue real_approx(double value, double error_bound);
};

}  // namespace pam
