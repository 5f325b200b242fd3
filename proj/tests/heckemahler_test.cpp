#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pam/core.hpp"
#include "pam/errors.hpp"
#include "pam/heckemahler.hpp"

using namespace pam;

namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

// Term-by-term reference sums, deliberately naive (std::pow everywhere).
double sigma_brute(double lambda, double mu, double rho, int terms) {
    double s = 0.0;
    for (int k = 1; k <= terms; ++k) {
        const double c = std::floor((k + 1) * rho) - std::floor(k * rho);
        s += c * std::pow(lambda, k) * std::pow(mu, std::floor(k * rho));
    }
    return s;
}

double psi_brute(double lambda, double mu, double rho, int terms) {
    double s = 0.0;
    for (int h = 1; h <= terms; ++h)
        s += std::pow(lambda, std::ceil(h / rho)) * std::pow(mu, h);
    return s / (1.0 - lambda);
}

double phi_brute(double lambda, double mu, double rho, double x, int terms) {
    double s = 0.0;
    for (int k = 0; k <= terms; ++k) {
        const double c = std::max(0.0, std::ceil(k * rho + x));
        const double inner = mu == 1.0 ? c : (1.0 - std::pow(mu, c)) / (1.0 - mu);
        s += std::pow(lambda, k) * inner;
    }
    return s;
}

}  // namespace

TEST_CASE("sigma matches a naive term-by-term sum") {
    struct Case {
        double lambda, mu, rho;
    };
    const Case cases[] = {
        {0.3, 0.5, 0.31830988618367},  // contracting, mu < 1
        {0.6, 1.0, 0.723},             // mu = 1 degenerate weights
        {0.9, 2.0, 0.1},               // expanding product, slow decay
        {0.5, 0.5, kGolden},
    };
    for (const Case& c : cases) {
        CAPTURE(c.lambda);
        CAPTURE(c.mu);
        CAPTURE(c.rho);
        const double fast = sigma(c.lambda, c.mu, c.rho);
        const double slow = sigma_brute(c.lambda, c.mu, c.rho, 4000);
        CHECK(fast == doctest::Approx(slow).epsilon(1e-11));
    }
}

TEST_CASE("sigma closed form at rationals") {
    // rho = 1/2: S = 0, geometric factor 1/(1 - lambda^2 mu)
    CHECK(sigma_rational(0.5, 0.5, RationalRot(1, 2), Side::AtPoint) ==
          doctest::Approx(4.0 / 7.0).epsilon(1e-15));
    CHECK(sigma_rational(0.5, 0.5, RationalRot(1, 2), Side::LeftLimit) ==
          doctest::Approx(2.0 / 7.0).epsilon(1e-15));
    // rho = 1/4: S = 0, A = lambda^3
    CHECK(sigma_rational(0.5, 0.5, RationalRot(1, 4), Side::AtPoint) ==
          doctest::Approx(4.0 / 31.0).epsilon(1e-15));

    // dyadic rationals are exact doubles, so the series path must agree with
    // the at-point closed form (the floor pattern is reproduced exactly)
    CHECK(sigma(0.5, 0.5, 0.5) == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
    CHECK(sigma(0.5, 0.5, 0.25) == doctest::Approx(4.0 / 31.0).epsilon(1e-12));

    // the left limit is strictly below the at-point value
    const RationalRot r(3, 7);
    CHECK(sigma_rational(0.6, 0.8, r, Side::LeftLimit) <
          sigma_rational(0.6, 0.8, r, Side::AtPoint));
}

TEST_CASE("finite prefix sum s_sum") {
    CHECK(s_sum(0.5, 0.5, RationalRot(1, 2)) == 0.0);  // empty range for q = 2
    CHECK(s_sum(0.5, 0.5, RationalRot(1, 4)) == 0.0);  // both inner floors vanish
    // 2/5: only k = 2 contributes, with floor(2 * 2/5) = 0
    CHECK(s_sum(0.7, 1.3, RationalRot(2, 5)) == doctest::Approx(0.49).epsilon(1e-15));
}

TEST_CASE("psi matches a naive sum, including rho > 1") {
    CHECK(psi(0.5, 0.5, kGolden) ==
          doctest::Approx(psi_brute(0.5, 0.5, kGolden, 600)).epsilon(1e-11));
    CHECK(psi(0.9, 2.0, 0.1) ==
          doctest::Approx(psi_brute(0.9, 2.0, 0.1, 600)).epsilon(1e-11));
    CHECK(psi(0.4, 0.8, 1.7) ==
          doctest::Approx(psi_brute(0.4, 0.8, 1.7, 600)).epsilon(1e-11));
}

TEST_CASE("sigma and psi satisfy the exchange identity") {
    // summing sigma by the integer h crossed at step k gives
    // sigma = (1 - lambda)/(lambda mu) psi for irrational rho in (0, 1)
    struct Case {
        double lambda, mu, rho;
    };
    const Case cases[] = {
        {0.3, 0.5, kGolden},          {0.6, 1.0, 0.3183098861837907},
        {0.9, 2.0, 0.11},             {0.5, 0.5, 0.707106781186547462},
        {0.9, 0.5, 0.577215664901533},{0.3, 2.0, 0.37},
    };
    for (const Case& c : cases) {
        CAPTURE(c.lambda);
        CAPTURE(c.mu);
        CAPTURE(c.rho);
        const double lhs = sigma(c.lambda, c.mu, c.rho);
        const double rhs =
            (1.0 - c.lambda) / (c.lambda * c.mu) * psi(c.lambda, c.mu, c.rho);
        CHECK(lhs == doctest::Approx(rhs).epsilon(5e-12));
    }
}

TEST_CASE("phi_series matches a naive sum in all mu regimes") {
    struct Case {
        double lambda, mu, rho, x;
    };
    const Case cases[] = {
        {0.5, 0.5, kGolden, 0.3},
        {0.5, 1.0, kGolden, 0.3},   // mu = 1 branch
        {0.9, 2.0, 0.1, 0.3},       // mu > 1 growth against lambda decay
        {0.5, 0.5, kGolden, -0.3},  // negative shift exercises the max(0, .) clamp
        {0.5, 0.5, kGolden, 0.0},
    };
    for (const Case& c : cases) {
        CAPTURE(c.mu);
        CAPTURE(c.x);
        const double fast = phi_series(c.lambda, c.mu, c.rho, SideReal{c.x, Side::AtPoint});
        const double slow = phi_brute(c.lambda, c.mu, c.rho, c.x, 4000);
        CHECK(fast == doctest::Approx(slow).epsilon(1e-11));
    }
    // the summand counts a half-open interval from the left, so the left
    // limit in x coincides with the at-point value
    CHECK(phi_series(0.5, 0.5, kGolden, SideReal{0.3, Side::LeftLimit}) ==
          phi_series(0.5, 0.5, kGolden, SideReal{0.3, Side::AtPoint}));
}

TEST_CASE("staircase values and monotonicity") {
    const double d = delta_of_rho(0.95, 0.9, kGolden);
    CHECK(std::fabs(d - 0.66172856241938693) < 1e-12);

    // at an exactly representable rational the series floors reproduce the
    // at-point pattern, i.e. the right end of the step
    CHECK(delta_of_rho(0.5, 0.5, 0.5) == doctest::Approx(0.9).epsilon(1e-12));

    CHECK(delta_of_rho(0.5, 0.5, 0.30) < delta_of_rho(0.5, 0.5, 0.31));

    // values stay inside the admissible delta interval
    const double dv = delta_of_rho(0.9, 2.0, 0.1);
    CHECK(dv > 1.0 - 0.9);
    CHECK(dv < d_bound(0.9, 2.0));
}

TEST_CASE("plateau endpoints of the staircase step") {
    const Plateau pl = delta_plateau(0.5, 0.5, RationalRot(1, 2));
    CHECK(pl.rot == RationalRot(1, 2));
    CHECK(pl.delta_left == 2.0 / 3.0);  // both sides correctly rounded from 2/3
    CHECK(pl.delta_right == 0.9);       // exact dyadic inputs, quotient rounds to 0.9
    CHECK(pl.delta_left < pl.delta_right);

    // steps are ordered like their rotation numbers and stay admissible
    const Plateau p13 = delta_plateau(0.5, 0.5, RationalRot(1, 3));
    CHECK(p13.delta_right < pl.delta_left);
    CHECK(p13.delta_left > 1.0 - 0.5);
    CHECK(pl.delta_right < d_bound(0.5, 0.5));

    // expanding regime: the step of 1/7 sits below r_bound(0.9, 2) ~ 0.152
    const Plateau p17 = delta_plateau(0.9, 2.0, RationalRot(1, 7));
    CHECK(p17.delta_left > 1.0 - 0.9);
    CHECK(p17.delta_right < d_bound(0.9, 2.0));
}

TEST_CASE("series domain errors") {
    CHECK_THROWS_AS(sigma(0.5, 0.5, 0.0), RangeError);
    CHECK_THROWS_AS(sigma(0.5, 0.5, -0.3), RangeError);
    CHECK_THROWS_AS(sigma(0.5, 0.5, 1.0), RangeError);
    CHECK_THROWS_AS(sigma(0.9, 2.0, 0.2), RangeError);  // above -log(lambda)/log(mu)
    CHECK_THROWS_AS(psi(0.5, 0.5, -1.0), RangeError);
    CHECK_THROWS_AS(psi(0.9, 2.0, 0.16), RangeError);  // lambda mu^rho >= 1
    CHECK_THROWS_AS(phi_series(0.9, 2.0, 0.2, SideReal{0.1, Side::AtPoint}), RangeError);
    CHECK_THROWS_AS(delta_of_rho(0.9, 2.0, 0.2), RangeError);
    CHECK_THROWS_AS(delta_plateau(0.9, 2.0, RationalRot(1, 2)), RangeError);
}

TEST_CASE("term cap produces SeriesError, not a silent wrong answer") {
    const SeriesTolerance tight{1e-12, 50};
    CHECK_THROWS_AS(sigma(0.999, 1.0, kGolden, tight), SeriesError);
    CHECK_THROWS_AS(delta_of_rho(0.999, 1.0, kGolden, tight), SeriesError);
}

TEST_CASE("series report their work and a rigorous tail bound") {
    SeriesStats st{};
    const SeriesTolerance tol{1e-12, 1'000'000};
    (void)sigma(0.5, 0.5, kGolden, tol, &st);
    CHECK(st.terms > 10);
    CHECK(st.terms < 200);
    CHECK(st.tail_bound >= 0.0);
    CHECK(st.tail_bound <= 1e-12);

    SeriesStats st2{};
    (void)delta_of_rho(0.95, 0.9, kGolden, tol, &st2);
    CHECK(st2.terms > 100);  // lambda = 0.95 needs a few hundred terms
    CHECK(st2.tail_bound <= 1e-12);
}

TEST_CASE("high-precision accumulation agrees with the double path") {
    const double a = sigma(0.6, 0.8, 0.37);
    const double b = sigma(0.6, 0.8, 0.37, {}, nullptr, 192);
    CHECK(std::fabs(a - b) < 5e-15);

    const double c = delta_of_rho(0.95, 0.9, kGolden);
    const double d = delta_of_rho(0.95, 0.9, kGolden, {}, nullptr, 256);
    CHECK(std::fabs(c - d) < 1e-13);

    // x = 0.312 keeps k*rho + x at least 0.012 from every integer over the
    // ~900 contributing terms, so both precisions make the same ceiling
    // decisions (at x = 0.3 the two paths legitimately disagree: 7*fl(0.1) +
    // fl(0.3) is 2.8e-17 above 1, which the double sum rounds down to 1.0).
    // The remaining difference is double accumulation noise over a sum of
    // magnitude ~30.
    const double e = phi_series(0.9, 2.0, 0.1, SideReal{0.312, Side::AtPoint});
    const double f = phi_series(0.9, 2.0, 0.1, SideReal{0.312, Side::AtPoint}, {}, nullptr, 192);
    CHECK(std::fabs(e - f) < 1e-10);

    const double g = phi_series(0.5, 0.5, 0.75, SideReal{0.3, Side::AtPoint});
    const double h = phi_series(0.5, 0.5, 0.75, SideReal{0.3, Side::AtPoint}, {}, nullptr, 192);
    CHECK(std::fabs(g - h) < 1e-14);
}
