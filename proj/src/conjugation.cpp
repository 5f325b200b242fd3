#include "pam/conjugation.hpp"

#include <cfloat>
#include <cmath>
#include <cstdio>

namespace pam {

namespace {

long long floor_div(long long j, long long q) {
    long long d = j / q;
    return (j % q != 0 && j < 0) ? d - 1 : d;
}

long long ceil_div(long long j, long long q) {
    long long d = j / q;
    return (j % q != 0 && j > 0) ? d + 1 : d;
}

long long to_ll_checked(const BigInt& v, const char* what) {
    if (v > BigInt(1) << 31)
        throw RangeError(std::string(what) + " too large for closed-form evaluation (limit 2^31)");
    return v.convert_to<long long>();
}

// phi on the cell [y_floor + m/q, y_floor + (m+1)/q): the series terms are
// q-periodic up to the factor lambda^q mu^p, so one period plus the geometric
// factor is exact.  Floors of y - k p/q are exact integer arithmetic.
double phi_cell_at(const MapParams& mp, long long p, long long q,
                   long long y_floor, long long m) {
    const double c = (mp.lambda() + mp.delta() - 1.0) / mp.lambda();
    double head = 0.0;
    double pw = 1.0;  // lambda^k mu^{e_k}
    long long Fk = floor_div(m, q);
    for (long long k = 0; k < q; ++k) {
        const long long Fk1 = floor_div(m - (k + 1) * p, q);
        const long long d = Fk1 - Fk;  // in {-1, 0}
        head += pw * (c + static_cast<double>(d));
        pw *= mp.lambda();
        if (d == -1) pw *= mp.mu();
        Fk = Fk1;
    }
    // after the loop pw = lambda^q mu^p exactly as accumulated
    return static_cast<double>(y_floor) + (1.0 - mp.delta()) / mp.lambda() + head / (1.0 - pw);
}

// Left limit at exactly y = y_floor + m/q: the ceiling-sum form.
double phi_grid_left(const MapParams& mp, long long p, long long q,
                     long long y_floor, long long m) {
    const double c = (mp.lambda() + mp.delta() - 1.0) / mp.lambda();
    const long long C0 = ceil_div(m, q);  // ceil(y) = y_floor + C0
    double head = 0.0;
    double pw = 1.0;  // lambda^k mu^{C0 - C_k}
    long long Ck = C0;
    for (long long k = 0; k < q; ++k) {
        const long long Ck1 = ceil_div(m - (k + 1) * p, q);
        const long long d = Ck1 - Ck;  // in {-1, 0}
        head += pw * (c + static_cast<double>(d));
        pw *= mp.lambda();
        if (d == -1) pw *= mp.mu();
        Ck = Ck1;
    }
    return static_cast<double>(y_floor + C0) - c + head / (1.0 - pw);
}

// Lacunary series for irrational rho (float floors; the lattice caveat from
// the header applies).  side selects the floor (at-point) or ceiling (left
// limit) variant.
double phi_irrational(const MapParams& mp, double rho, double y, Side side,
                      const SeriesTolerance& tol, SeriesStats* stats) {
    const double lambda = mp.lambda(), mu = mp.mu();
    const double c = (mp.lambda() + mp.delta() - 1.0) / mp.lambda();
    const double r = lambda * std::pow(mu, rho);
    if (!(r < 1.0))
        throw RangeError("lambda * mu^rho >= 1: conjugation series diverges");
    const double tail_c = std::max(mu, 1.0 / mu);

    const bool at = (side == Side::AtPoint);
    const double head0 = at ? std::floor(y) + (1.0 - mp.delta()) / mp.lambda()
                            : std::ceil(y) - c;
    double acc = 0.0;
    double pw = 1.0;
    double prev = at ? std::floor(y) : std::ceil(y);
    double rpow = 1.0;
    for (std::uint64_t k = 0;; ++k) {
        if (k >= tol.max_terms)
            throw SeriesError("conjugation series did not converge within max_terms");
        const double shifted = y - static_cast<double>(k + 1) * rho;
        const double next = at ? std::floor(shifted) : std::ceil(shifted);
        const double d = next - prev;  // in {-1, 0} (float noise handled below)
        acc += pw * (c + d);
        const double tail = tail_c * rpow * r / (1.0 - r);
        if (tail <= tol.abs_tol) {
            if (stats) {
                stats->terms = k + 1;
                stats->tail_bound = tail;
            }
            break;
        }
        pw *= lambda;
        for (double j = d; j < 0.0; ++j) pw *= mu;  // mu^{-d}
        prev = next;
        rpow *= r;
    }
    return head0 + acc;
}

}  // namespace

ConjugationSpec::ConjugationSpec(const MapParams& params, const RotationValue& rho,
                                 const SeriesTolerance& tol)
    : params_(params), rho_(rho), tol_(tol) {
    const double rv = rho.approx;
    if (!(rv > 0.0) || !(rv < 1.0))
        throw RangeError("conjugation requires a rotation number in (0, 1)");
    if (!(params.lambda() * std::pow(params.mu(), rv) < 1.0))
        throw RangeError("lambda * mu^rho >= 1: conjugation series diverges");
}

double phi_grid(const ConjugationSpec& spec, long long y_floor, long long m, Side side) {
    if (!spec.rho().exact())
        throw RangeError("phi_grid requires a rational rotation number");
    const long long p = to_ll_checked(spec.rho().rational->p(), "p");
    const long long q = to_ll_checked(spec.rho().rational->q(), "q");
    if (m < 0 || m >= q) throw RangeError("grid index m must satisfy 0 <= m < q");
    return side == Side::AtPoint ? phi_cell_at(spec.params(), p, q, y_floor, m)
                                 : phi_grid_left(spec.params(), p, q, y_floor, m);
}

double phi_eval(const ConjugationSpec& spec, SideReal y, SeriesStats* stats) {
    if (stats) *stats = SeriesStats{};
    if (!std::isfinite(y.value)) throw RangeError("phi argument must be finite");
    if (!spec.rho().exact())
        return phi_irrational(spec.params(), spec.rho().approx, y.value, y.side,
                              spec.tol(), stats);

    const long long p = to_ll_checked(spec.rho().rational->p(), "p");
    const long long q = to_ll_checked(spec.rho().rational->q(), "q");
    long long n = static_cast<long long>(std::floor(y.value));
    const double t = y.value - static_cast<double>(n);
    const double qt = static_cast<double>(q) * t;
    const double g = std::round(qt);
    // snap tolerance: accumulated rounding of q*{y} at the working magnitudes
    const double snap = 64.0 * DBL_EPSILON * static_cast<double>(q) * (std::fabs(y.value) + 1.0);
    long long m;
    bool on_grid = false;
    if (std::fabs(qt - g) <= snap) {
        on_grid = true;
        m = static_cast<long long>(g);
        if (m == q) {  // snapped up to the next integer
            ++n;
            m = 0;
        }
    } else {
        m = static_cast<long long>(std::floor(qt));
    }
    if (y.side == Side::LeftLimit && on_grid)
        return phi_grid_left(spec.params(), p, q, n, m);
    // interior of a cell: the left limit equals the value
    return phi_cell_at(spec.params(), p, q, n, m);
}

double phi_eval_via_hm(const ConjugationSpec& spec, double y, unsigned prec_bits) {
    const MapParams& mp = spec.params();
    const double frac = y - std::floor(y);
    const double factor =
        (mp.delta() - mp.mu() * (mp.lambda() + mp.delta() - 1.0)) / mp.lambda();
    const double series = phi_series(mp.lambda(), mp.mu(), spec.rho_value(),
                                     SideReal{-frac, Side::AtPoint}, spec.tol(),
                                     nullptr, prec_bits);
    return std::floor(y) + mp.delta() / (1.0 - mp.lambda()) - factor * series;
}

double conjugacy_residual(const ConjugationSpec& spec, double y) {
    const double lhs = lift_F(spec.params(), phi_eval(spec, SideReal{y, Side::AtPoint}));
    const double rhs = phi_eval(spec, SideReal{y + spec.rho_value(), Side::AtPoint});
    return std::fabs(lhs - rhs);
}

}  // namespace pam
