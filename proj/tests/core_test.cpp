#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pam/core.hpp"
#include "pam/errors.hpp"

using namespace pam;

namespace {

InvalidParams::Reason reason_of(double lambda, double mu, double delta) {
    try {
        validate_params(lambda, mu, delta);
    } catch (const InvalidParams& e) {
        return e.reason();
    }
    FAIL("validate_params accepted an inadmissible triple");
    return InvalidParams::Reason::LambdaRange;  // unreachable
}

}  // namespace

TEST_CASE("admissible delta bound") {
    // contracting product: the full interval (1 - lambda, 1) is admissible
    CHECK(d_bound(0.5, 0.5) == 1.0);
    CHECK(d_bound(0.3, 1.0) == 1.0);  // mu = 1 must take the contracting branch
    // expanding product: bound shrinks to mu (1 - lambda) / (mu - 1)
    CHECK(d_bound(0.9, 2.0) == doctest::Approx(0.2).epsilon(1e-15));
    // the two expressions agree where the regimes meet (lambda mu = 1)
    CHECK(d_bound(0.5, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("admissible rotation-number bound") {
    CHECK(r_bound(0.5, 0.5) == 1.0);
    CHECK(r_bound(0.3, 1.0) == 1.0);
    CHECK(r_bound(0.9, 2.0) ==
          doctest::Approx(-std::log(0.9) / std::log(2.0)).epsilon(1e-15));
    // lambda * mu^r_bound = 1 by construction in the expanding regime
    const double rb = r_bound(0.9, 2.0);
    CHECK(0.9 * std::pow(2.0, rb) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("validate_params accepts the open admissible region and caches eta") {
    const MapParams p = validate_params(0.5, 0.5, 0.75);
    CHECK(p.lambda() == 0.5);
    CHECK(p.mu() == 0.5);
    CHECK(p.delta() == 0.75);
    CHECK(p.eta() == 0.5);  // (1 - 0.75) / 0.5, exact in binary
    CHECK(eta(p) == p.eta());

    // an expanding-regime triple close to its (smaller) delta bound
    const MapParams q = validate_params(0.9, 2.0, 0.19);
    CHECK(q.eta() == doctest::Approx((1.0 - 0.19) / 0.9).epsilon(1e-16));
}

TEST_CASE("validate_params reports the violated constraint") {
    CHECK(reason_of(1.0, 0.5, 0.75) == InvalidParams::Reason::LambdaRange);
    CHECK(reason_of(0.0, 0.5, 0.75) == InvalidParams::Reason::LambdaRange);
    CHECK(reason_of(-0.2, 0.5, 0.75) == InvalidParams::Reason::LambdaRange);
    CHECK(reason_of(0.5, 0.0, 0.75) == InvalidParams::Reason::MuRange);
    CHECK(reason_of(0.5, -1.0, 0.75) == InvalidParams::Reason::MuRange);
    // delta = 1 - lambda sits on the excluded lower boundary
    CHECK(reason_of(0.5, 0.5, 0.5) == InvalidParams::Reason::DeltaTooSmall);
    CHECK(reason_of(0.5, 0.5, 0.2) == InvalidParams::Reason::DeltaTooSmall);
    // contracting regime: upper bound is 1
    CHECK(reason_of(0.5, 0.5, 1.0) == InvalidParams::Reason::DeltaTooLarge);
    CHECK(reason_of(0.5, 0.5, 1.3) == InvalidParams::Reason::DeltaTooLarge);
    // expanding regime: above the bound vs exactly on it
    CHECK(reason_of(0.9, 2.0, 0.25) == InvalidParams::Reason::DeltaTooLarge);
    CHECK(reason_of(0.9, 2.0, d_bound(0.9, 2.0)) ==
          InvalidParams::Reason::BijectiveBoundary);
    CHECK_THROWS_AS(validate_params(0.5, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("Fraction reduces and normalises the sign") {
    const Fraction half(BigInt(2), BigInt(4));
    CHECK(half.num == 1);
    CHECK(half.den == 2);

    const Fraction neg(BigInt(1), BigInt(-2));
    CHECK(neg.num == -1);
    CHECK(neg.den == 2);

    CHECK(Fraction().num == 0);
    CHECK(Fraction().den == 1);
    CHECK_THROWS_AS(Fraction(BigInt(1), BigInt(0)), RangeError);

    CHECK(Fraction(BigInt(1), BigInt(2)) == Fraction(BigInt(3), BigInt(6)));
    CHECK(Fraction(BigInt(1), BigInt(3)) < Fraction(BigInt(1), BigInt(2)));
    CHECK_FALSE(Fraction(BigInt(1), BigInt(2)) < Fraction(BigInt(1), BigInt(2)));
    CHECK(Fraction(BigInt(1), BigInt(2)).to_double() == 0.5);
    CHECK(Fraction(BigInt(1), BigInt(2)).str() == "1/2");
}

TEST_CASE("farey_mediant adds numerators and denominators") {
    const Fraction a(BigInt(1), BigInt(3));
    const Fraction b(BigInt(1), BigInt(2));
    const Fraction m = farey_mediant(a, b);
    CHECK(m.num == 2);
    CHECK(m.den == 5);

    // neighbours stay unimodular through the mediant
    CHECK(a.num * m.den - m.num * a.den == -1);
    CHECK(m.num * b.den - b.num * m.den == -1);

    CHECK_NOTHROW(farey_mediant(a, b, BigInt(5)));
    CHECK_THROWS_AS(farey_mediant(a, b, BigInt(4)), FareyOverflow);
}

TEST_CASE("RationalRot is a reduced rational strictly inside (0, 1)") {
    const RationalRot r(2, 4);
    CHECK(r.p() == 1);
    CHECK(r.q() == 2);
    CHECK(r.to_double() == 0.5);
    CHECK(r.str() == "1/2");
    CHECK(r.frac() == Fraction(BigInt(1), BigInt(2)));
    CHECK(RationalRot(3, 6) == RationalRot(1, 2));

    CHECK_THROWS_AS(RationalRot(0, 5), RangeError);
    CHECK_THROWS_AS(RationalRot(5, 5), RangeError);
    CHECK_THROWS_AS(RationalRot(7, 5), RangeError);
    CHECK_THROWS_AS(RationalRot(-1, 5), RangeError);
}

TEST_CASE("RotationValue factories") {
    const RotationValue e = RotationValue::exact_rational(RationalRot(1, 3));
    CHECK(e.exact());
    CHECK(e.approx == doctest::Approx(1.0 / 3.0).epsilon(1e-16));
    CHECK(e.error_bound == 0.0);

    const RotationValue a = RotationValue::real_approx(0.618, 1e-3);
    CHECK_FALSE(a.exact());
    CHECK(a.approx == 0.618);
    CHECK(a.error_bound == 1e-3);
}
