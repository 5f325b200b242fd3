#include "pam/core.hpp"

#include <cmath>
#include <cstdio>

namespace pam {

namespace {

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[192];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

}  // namespace

double d_bound(double lambda, double mu) {
    if (lambda * mu < 1.0) return 1.0;
    return mu * (1.0 - lambda) / (mu - 1.0);
}

double r_bound(double lambda, double mu) {
    if (lambda * mu < 1.0) return 1.0;
    return -std::log(lambda) / std::log(mu);
}

MapParams validate_params(double lambda, double mu, double delta) {
    if (!(lambda > 0.0) || !(lambda < 1.0) || !std::isfinite(lambda))
        throw InvalidParams(InvalidParams::Reason::LambdaRange,
                            fmt("lambda must lie in (0, 1), got %.17g", lambda));
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw InvalidParams(InvalidParams::Reason::MuRange,
                            fmt("mu must be positive, got %.17g", mu));
    if (!std::isfinite(delta) || !(delta > 1.0 - lambda))
        throw InvalidParams(InvalidParams::Reason::DeltaTooSmall,
                            fmt("delta must exceed 1 - lambda (delta > %.17g required, got %.17g)",
                                1.0 - lambda, delta));
    const double d = d_bound(lambda, mu);
    if (delta == d && lambda * mu > 1.0)
        throw InvalidParams(InvalidParams::Reason::BijectiveBoundary,
                            fmt("delta == d(lambda, mu) = %.17g makes the map a circle bijection; "
                                "this boundary case is out of scope", d));
    if (!(delta < d))
        throw InvalidParams(InvalidParams::Reason::DeltaTooLarge,
                            fmt("delta must stay below d(lambda, mu) = %.17g, got %.17g", d, delta));
    return MapParams(lambda, mu, delta, (1.0 - delta) / lambda);
}

Fraction::Fraction(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
    if (den == 0) throw RangeError("fraction denominator must be nonzero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

double Fraction::to_double() const {
    return num.convert_to<double>() / den.convert_to<double>();
}

std::string Fraction::str() const {
    return num.str() + "/" + den.str();
}

Fraction farey_mediant(const Fraction& a, const Fraction& b) {
    return Fraction(a.num + b.num, a.den + b.den);
}

Fraction farey_mediant(const Fraction& a, const Fraction& b, const BigInt& max_den) {
    if (a.den + b.den > max_den)
        throw FareyOverflow("integer overflow when denominators exceed the configured maximum (" +
                            max_den.str() + "): mediant of " + a.str() + " and " + b.str());
    return farey_mediant(a, b);
}

RationalRot::RationalRot(BigInt p, BigInt q) : p_(std::move(p)), q_(std::move(q)) {
    if (q_ <= 0) throw RangeError("rotation number denominator must be positive");
    if (p_ <= 0 || p_ >= q_)
        throw RangeError("rotation number must satisfy 0 < p/q < 1, got " + p_.str() + "/" + q_.str());
    BigInt g = boost::multiprecision::gcd(p_, q_);
    if (g > 1) {
        p_ /= g;
        q_ /= g;
    }
}

double RationalRot::to_double() const {
    return p_.convert_to<double>() / q_.convert_to<double>();
}

std::string RationalRot::str() const {
    return p_.str() + "/" + q_.str();
}

RotationValue RotationValue::exact_rational(const RationalRot& r) {
    RotationValue v;
    v.rational = r;
    v.approx = r.to_double();
    v.error_bound = 0.0;
    return v;
}

RotationValue RotationValue::real_approx(double value, double error_bound) {
    if (!(error_bound >= 0.0))
        throw RangeError("rotation error bound must be non-negative");
    RotationValue v;
    v.approx = value;
    v.error_bound = error_bound;
    return v;
}

}  // namespace pam
