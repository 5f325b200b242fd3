#include "pam/heckemahler.hpp"

#include <cmath>
#include <cstdio>

#include "mpreal_wrap.hpp"

namespace pam {

namespace {

using detail::MpReal;

template <class... Args>
std::string fmt(const char* f, Args... args) {
    char buf[192];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

void check_series_domain(double lambda, double mu, double rho, double rho_sup) {
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw RangeError(fmt("series requires 0 < lambda < 1, got %.17g", lambda));
    if (!(mu > 0.0))
        throw RangeError(fmt("series requires mu > 0, got %.17g", mu));
    if (!(rho > 0.0) || !(rho < rho_sup))
        throw RangeError(fmt("rho must lie in (0, %.17g), got %.17g", rho_sup, rho));
    if (!(lambda * std::pow(mu, rho) < 1.0))
        throw RangeError(fmt("lambda * mu^rho = %.17g >= 1: series diverges",
                             lambda * std::pow(mu, rho)));
}

[[noreturn]] void throw_max_terms(const char* what, std::uint64_t max_terms, double tail) {
    throw SeriesError(fmt("%s did not reach tolerance within %llu terms (tail bound %.3g)",
                          what, static_cast<unsigned long long>(max_terms), tail));
}

// Scalar abstraction so the kernels instantiate for IEEE doubles and for
// MPFR reals (where k*rho is exact w.r.t. the double rho, making the
// floor/ceiling bit stream reliable).
template <class R>
struct Ops;

template <>
struct Ops<double> {
    static double from(double d, unsigned) { return d; }
    static long floor_of_mul(double rho, std::uint64_t k) {
        return static_cast<long>(std::floor(rho * static_cast<double>(k)));
    }
    static long ceil_of_mul_add(double rho, std::uint64_t k, double x) {
        return static_cast<long>(std::ceil(rho * static_cast<double>(k) + x));
    }
    static long ceil_of_div(std::uint64_t h, double rho) {
        return static_cast<long>(std::ceil(static_cast<double>(h) / rho));
    }
    static double pow_long(double a, long e) { return std::pow(a, static_cast<double>(e)); }
    static double dbl(double x) { return x; }
};

template <>
struct Ops<MpReal> {
    static MpReal from(double d, unsigned prec) { return MpReal(d, prec); }
    static long floor_of_mul(const MpReal& rho, std::uint64_t k) {
        return MpReal::mul_long(rho, static_cast<long>(k)).floor_long();
    }
    static long ceil_of_mul_add(const MpReal& rho, std::uint64_t k, const MpReal& x) {
        return (MpReal::mul_long(rho, static_cast<long>(k)) + x).ceil_long();
    }
    static long ceil_of_div(std::uint64_t h, const MpReal& rho) {
        return (MpReal(static_cast<double>(h), rho.prec()) / rho).ceil_long();
    }
    static MpReal pow_long(const MpReal& a, long e) {
        return MpReal::pow(a, MpReal(static_cast<double>(e), a.prec()));
    }
    static double dbl(const MpReal& x) { return x.to_double(); }
};

template <class R>
double sigma_kernel(double lambda_d, double mu_d, double rho_d,
                    const SeriesTolerance& tol, SeriesStats* stats, unsigned prec) {
    const R lambda = Ops<R>::from(lambda_d, prec);
    const R mu = Ops<R>::from(mu_d, prec);
    const R rho = Ops<R>::from(rho_d, prec);

    const double r = lambda_d * std::pow(mu_d, rho_d);  // tail ratio
    const double tail_c = std::max(1.0, 1.0 / mu_d);

    R acc = Ops<R>::from(0.0, prec);
    R pw = lambda;    // lambda^k mu^{floor(k rho)}, k = 1 (floor(rho) = 0)
    long m = 0;       // floor(k rho)
    double rpow = r;  // r^k
    for (std::uint64_t k = 1;; ++k) {
        if (k > tol.max_terms) throw_max_terms("sigma", tol.max_terms, tail_c * rpow / (1.0 - r));
        const long m_next = Ops<R>::floor_of_mul(rho, k + 1);
        if (m_next != m) acc += pw;
        const double tail = tail_c * rpow * r / (1.0 - r);  // covers all k' > k
        if (tail <= tol.abs_tol) {
            if (stats) {
                stats->terms = k;
                stats->tail_bound = tail;
            }
            break;
        }
        pw *= lambda;
        for (long j = m; j < m_next; ++j) pw *= mu;
        m = m_next;
        rpow *= r;
    }
    return Ops<R>::dbl(acc);
}

template <class R>
double psi_kernel(double lambda_d, double mu_d, double rho_d,
                  const SeriesTolerance& tol, SeriesStats* stats, unsigned prec) {
    const R lambda = Ops<R>::from(lambda_d, prec);
    const R mu = Ops<R>::from(mu_d, prec);
    const R rho = Ops<R>::from(rho_d, prec);

    const double rr = std::pow(lambda_d, 1.0 / rho_d) * mu_d;  // per-h term ratio bound
    const double inv1l = 1.0 / (1.0 - lambda_d);

    R acc = Ops<R>::from(0.0, prec);
    R mupw = Ops<R>::from(1.0, prec);  // mu^h
    double rrpow = 1.0;                // rr^h
    for (std::uint64_t h = 1;; ++h) {
        if (h > tol.max_terms) throw_max_terms("psi", tol.max_terms, rrpow * inv1l / (1.0 - rr));
        mupw *= mu;
        rrpow *= rr;
        acc += Ops<R>::pow_long(lambda, Ops<R>::ceil_of_div(h, rho)) * mupw;
        const double tail = rrpow * rr / (1.0 - rr) * inv1l;
        if (tail <= tol.abs_tol) {
            if (stats) {
                stats->terms = h;
                stats->tail_bound = tail;
            }
            break;
        }
    }
    acc *= Ops<R>::from(inv1l, prec);
    return Ops<R>::dbl(acc);
}

template <class R>
double phiF_kernel(double lambda_d, double mu_d, double rho_d, double x_d,
                   const SeriesTolerance& tol, SeriesStats* stats, unsigned prec) {
    const R lambda = Ops<R>::from(lambda_d, prec);
    const R mu = Ops<R>::from(mu_d, prec);
    const R rho = Ops<R>::from(rho_d, prec);
    const R x = Ops<R>::from(x_d, prec);
    const bool mu_is_one = (mu_d == 1.0);
    const R inv1mu = mu_is_one ? Ops<R>::from(0.0, prec)
                               : Ops<R>::from(1.0, prec) / (Ops<R>::from(1.0, prec) - mu);

    const double r = lambda_d * std::pow(mu_d, rho_d);

    R acc = Ops<R>::from(0.0, prec);
    R lampw = Ops<R>::from(1.0, prec);  // lambda^k
    R mupw = Ops<R>::from(1.0, prec);   // mu^{count}
    long count = 0;                     // max(0, ceil(k rho + x)), non-decreasing
    double lampw_d = 1.0;               // double shadows for the tail bounds
    double rpow = 1.0;
    for (std::uint64_t k = 0;; ++k) {
        if (k >= tol.max_terms) throw_max_terms("phi_series", tol.max_terms, lampw_d);
        const long c = std::max(0L, Ops<R>::ceil_of_mul_add(rho, k, x));
        for (long j = count; j < c; ++j) mupw *= mu;
        count = c;
        if (mu_is_one) {
            acc += lampw * Ops<R>::from(static_cast<double>(count), prec);
        } else {
            acc += lampw * (Ops<R>::from(1.0, prec) - mupw) * inv1mu;
        }
        // rigorous bounds on sum_{k' > k}
        double tail;
        if (mu_d < 1.0) {
            tail = lampw_d * lambda_d / ((1.0 - lambda_d) * (1.0 - mu_d));
        } else if (mu_is_one) {
            const double l1 = 1.0 - lambda_d;
            const double lk1 = lampw_d * lambda_d;  // lambda^{k+1}
            tail = rho_d * lk1 * ((k + 1) * l1 + lambda_d) / (l1 * l1) +
                   std::max(x_d + 1.0, 0.0) * lk1 / l1;
        } else {
            tail = std::pow(mu_d, x_d + 1.0) * rpow * r / ((mu_d - 1.0) * (1.0 - r));
        }
        if (tail <= tol.abs_tol) {
            if (stats) {
                stats->terms = k + 1;
                stats->tail_bound = tail;
            }
            break;
        }
        lampw *= lambda;
        lampw_d *= lambda_d;
        rpow *= r;
    }
    return Ops<R>::dbl(acc);
}

// Finite sum S plus the boundary power A = lambda^{q-1} mu^{p-1}, one pass,
// floors by running remainder (exact).
struct SsumParts {
    double S = 0.0;
    double A = 0.0;
};

long long to_ll_checked(const BigInt& v, const char* what) {
    if (v > BigInt(1) << 31)
        throw RangeError(std::string(what) + " too large for closed-form evaluation (limit 2^31)");
    return v.convert_to<long long>();
}

SsumParts s_sum_parts(double lambda, double mu, const RationalRot& rot) {
    const long long p = to_ll_checked(rot.p(), "p");
    const long long q = to_ll_checked(rot.q(), "q");
    SsumParts out;
    double pw = 1.0;    // lambda^k mu^{floor(k p/q)}
    long long rem = 0;  // k p mod q
    for (long long k = 1; k <= q - 1; ++k) {
        pw *= lambda;
        rem += p;
        if (rem >= q) {
            rem -= q;
            pw *= mu;
        }
        if (pw == 0.0) break;  // underflow: every later term is 0 too
        if (k <= q - 2 && rem + p >= q) out.S += pw;  // bit_k = 1
        if (k == q - 1) out.A = pw;                   // lambda^{q-1} mu^{p-1}
    }
    return out;
}

void check_rational_convergent(double lambda, double mu, const RationalRot& rot) {
    const double p = rot.p().convert_to<double>();
    const double q = rot.q().convert_to<double>();
    if (!(q * std::log(lambda) + p * std::log(mu) < 0.0))
        throw RangeError("p/q = " + rot.str() + " is not below r_bound(lambda, mu): lambda^q mu^p >= 1");
}

}  // namespace

double sigma(double lambda, double mu, double rho, const SeriesTolerance& tol,
             SeriesStats* stats, unsigned prec_bits) {
    check_series_domain(lambda, mu, rho, r_bound(lambda, mu));
    if (prec_bits == 0) return sigma_kernel<double>(lambda, mu, rho, tol, stats, 0);
    return sigma_kernel<MpReal>(lambda, mu, rho, tol, stats, prec_bits);
}

double psi(double lambda, double mu, double rho, const SeriesTolerance& tol,
           SeriesStats* stats, unsigned prec_bits) {
    // rho > 1 is meaningful here; only convergence matters.
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw RangeError(fmt("series requires 0 < lambda < 1, got %.17g", lambda));
    if (!(mu > 0.0)) throw RangeError(fmt("series requires mu > 0, got %.17g", mu));
    if (!(rho > 0.0)) throw RangeError(fmt("psi requires rho > 0, got %.17g", rho));
    if (!(lambda * std::pow(mu, rho) < 1.0))
        throw RangeError(fmt("lambda * mu^rho = %.17g >= 1: series diverges",
                             lambda * std::pow(mu, rho)));
    if (prec_bits == 0) return psi_kernel<double>(lambda, mu, rho, tol, stats, 0);
    return psi_kernel<MpReal>(lambda, mu, rho, tol, stats, prec_bits);
}

double phi_series(double lambda, double mu, double rho, SideReal x,
                  const SeriesTolerance& tol, SeriesStats* stats, unsigned prec_bits) {
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw RangeError(fmt("series requires 0 < lambda < 1, got %.17g", lambda));
    if (!(mu > 0.0)) throw RangeError(fmt("series requires mu > 0, got %.17g", mu));
    if (!(rho > 0.0)) throw RangeError(fmt("phi_series requires rho > 0, got %.17g", rho));
    if (!(lambda * std::pow(mu, rho) < 1.0))
        throw RangeError(fmt("lambda * mu^rho = %.17g >= 1: series diverges",
                             lambda * std::pow(mu, rho)));
    // The inner count l < k rho + x and its left limit agree for every k
    // (left continuity in x), so x.side needs no separate path.
    if (prec_bits == 0) return phiF_kernel<double>(lambda, mu, rho, x.value, tol, stats, 0);
    return phiF_kernel<MpReal>(lambda, mu, rho, x.value, tol, stats, prec_bits);
}

double s_sum(double lambda, double mu, const RationalRot& rot) {
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw RangeError(fmt("s_sum requires 0 < lambda < 1, got %.17g", lambda));
    if (!(mu > 0.0)) throw RangeError(fmt("s_sum requires mu > 0, got %.17g", mu));
    return s_sum_parts(lambda, mu, rot).S;
}

double sigma_rational(double lambda, double mu, const RationalRot& rot, Side side) {
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw RangeError(fmt("sigma_rational requires 0 < lambda < 1, got %.17g", lambda));
    if (!(mu > 0.0)) throw RangeError(fmt("sigma_rational requires mu > 0, got %.17g", mu));
    check_rational_convergent(lambda, mu, rot);
    const auto [S, A] = s_sum_parts(lambda, mu, rot);
    const double geo = 1.0 - A * lambda * mu;  // 1 - lambda^q mu^p
    return side == Side::AtPoint ? (S + A) / geo : (S + A * lambda) / geo;
}

double delta_of_rho(double lambda, double mu, double rho, const SeriesTolerance& tol,
                    SeriesStats* stats, unsigned prec_bits) {
    const double s = sigma(lambda, mu, rho, tol, stats, prec_bits);
    return (1.0 - lambda) * (1.0 + mu * s) / (1.0 + (mu - 1.0) * s);
}

Plateau delta_plateau(double lambda, double mu, const RationalRot& rot) {
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw RangeError(fmt("delta_plateau requires 0 < lambda < 1, got %.17g", lambda));
    if (!(mu > 0.0)) throw RangeError(fmt("delta_plateau requires mu > 0, got %.17g", mu));
    check_rational_convergent(lambda, mu, rot);
    const auto [S, A] = s_sum_parts(lambda, mu, rot);
    const double l1 = 1.0 - lambda;
    const double right = l1 * (1.0 + mu * S + A * mu * l1) /
                         (1.0 + (mu - 1.0) * S + A * (mu - lambda * mu - 1.0));
    const double left = l1 * (1.0 + mu * S) / (1.0 + (mu - 1.0) * S - A * lambda);
    return Plateau{rot, left, right};
}

}  // namespace pam
