#include "pam/rotation.hpp"

#include <cmath>

#include "pam/dynamics.hpp"

namespace pam {

namespace {

struct Probe {
    int rel;  // -1: delta below the step (recurse left), +1: above (right), 0: inside
    std::optional<Plateau> plateau;
    PlateauSide side;  // meaningful when rel == 0
};

struct SearchCtx {
    const MapParams& mp;
    double log_lambda;
    double log_mu;
    bool prune;  // lambda*mu >= 1: mediants at/above r_bound carry no step
    double rel_tol;
    std::uint64_t probes = 0;
};

bool below_r_bound(const SearchCtx& c, const Fraction& f) {
    if (!c.prune) return true;  // r_bound = 1 and every mediant is < 1
    return f.den.convert_to<double>() * c.log_lambda +
               f.num.convert_to<double>() * c.log_mu < 0.0;
}

bool endpoint_eq(double delta, double e, double rel_tol) {
    return delta == e || std::fabs(delta - e) <= rel_tol * std::fabs(e);
}

Probe probe(SearchCtx& c, const Fraction& f) {
    ++c.probes;
    if (!below_r_bound(c, f))
        return {-1, std::nullopt, PlateauSide::Outside};  // rho < f is forced
    const Plateau pl = delta_plateau(c.mp.lambda(), c.mp.mu(), RationalRot(f.num, f.den));
    const double d = c.mp.delta();
    if (endpoint_eq(d, pl.delta_left, c.rel_tol)) return {0, pl, PlateauSide::LeftEndpoint};
    if (endpoint_eq(d, pl.delta_right, c.rel_tol)) return {0, pl, PlateauSide::RightEndpoint};
    if (d > pl.delta_right) return {1, pl, PlateauSide::Outside};
    if (d < pl.delta_left) return {-1, pl, PlateauSide::Outside};
    return {0, pl, PlateauSide::Interior};
}

RhoBoundary to_boundary(PlateauSide s) {
    switch (s) {
        case PlateauSide::LeftEndpoint: return RhoBoundary::LeftEndpoint;
        case PlateauSide::RightEndpoint: return RhoBoundary::RightEndpoint;
        default: return RhoBoundary::Interior;
    }
}

}  // namespace

RotationValue rho_orbit_estimate(const MapParams& p, std::uint64_t n) {
    if (n == 0) throw RangeError("orbit estimate needs at least one step");
    double x = 0.0;
    std::uint64_t count = 0;  // branch-2 visits = floor of the lifted endpoint
    for (std::uint64_t k = 0; k < n; ++k) {
        if (!(x < p.eta())) ++count;
        x = f_apply(p, x);
    }
    return RotationValue::real_approx(static_cast<double>(count) / static_cast<double>(n),
                                      2.0 / static_cast<double>(n));
}

PlateauSide classify_boundary(const MapParams& p, const RationalRot& rot,
                              double endpoint_rel_tol) {
    SearchCtx c{p, std::log(p.lambda()), std::log(p.mu()),
                p.lambda() * p.mu() >= 1.0, endpoint_rel_tol};
    return probe(c, rot.frac()).side;
}

RotationResult rho_exact(const MapParams& p, const BigInt& max_den) {
    RhoOptions o;
    o.max_den = max_den;
    return rho_exact(p, o);
}

RotationResult rho_exact(const MapParams& p, const RhoOptions& opts) {
    if (opts.max_den < 1) throw RangeError("max_den must be at least 1");
    SearchCtx c{p, std::log(p.lambda()), std::log(p.mu()),
                p.lambda() * p.mu() >= 1.0, opts.endpoint_rel_tol};

    auto exact_result = [&](const Fraction& f, const Probe& pr) {
        RotationResult res;
        res.value = RotationValue::exact_rational(RationalRot(f.num, f.den));
        res.plateau = pr.plateau;
        res.boundary = to_boundary(pr.side);
        res.evidence.search_depth = c.probes;
        return res;
    };

    auto open_result = [&](const Fraction& lo, const Fraction& hi) {
        RotationResult res;
        const double a = lo.to_double(), b = hi.to_double();
        res.value = RotationValue::real_approx(0.5 * (a + b), 0.5 * (b - a));
        res.boundary = RhoBoundary::NotRational;
        res.bracket = std::make_pair(lo, hi);
        if (opts.estimate_steps > 0) {
            res.orbit_estimate = rho_orbit_estimate(p, opts.estimate_steps);
            res.evidence.orbit_steps = opts.estimate_steps;
        }
        res.evidence.search_depth = c.probes;
        return res;
    };

    Fraction lo(0, 1), hi(1, 1);
    for (;;) {
        if (lo.den + hi.den > opts.max_den) return open_result(lo, hi);
        const Fraction med = farey_mediant(lo, hi);
        const Probe first = probe(c, med);
        if (first.rel == 0) return exact_result(med, first);

        // Accelerated run in the indicated direction: right-run mediants are
        // m_k = lo + k*hi, left-run mediants are m_k = k*lo + hi (k >= 1), and
        // the probe outcome is monotone along the run.
        const bool right = first.rel > 0;
        auto mk = [&](const BigInt& k) {
            return right ? Fraction(lo.num + k * hi.num, lo.den + k * hi.den)
                         : Fraction(k * lo.num + hi.num, k * lo.den + hi.den);
        };
        const BigInt kcap = right ? (opts.max_den - lo.den) / hi.den
                                  : (opts.max_den - hi.den) / lo.den;  // >= 1 here
        BigInt k_in = 1;   // largest k known to continue the run
        BigInt k_out = 0;  // smallest k known to stop it (0 = none yet)
        BigInt k = 2;
        while (k_out == 0) {
            if (k > kcap) k = kcap;
            if (k == k_in) {
                // run still going at the denominator cap: bracket and stop
                return right ? open_result(mk(kcap), hi) : open_result(lo, mk(kcap));
            }
            const Probe pr = probe(c, mk(k));
            if (pr.rel == 0) return exact_result(mk(k), pr);
            if ((pr.rel > 0) == right) {
                k_in = k;
                k *= 2;
            } else {
                k_out = k;
            }
        }
        while (k_out - k_in > 1) {
            const BigInt km = (k_in + k_out) / 2;
            const Probe pr = probe(c, mk(km));
            if (pr.rel == 0) return exact_result(mk(km), pr);
            ((pr.rel > 0) == right ? k_in : k_out) = km;
        }
        // evaluate both before assigning: mk reads lo and hi
        const Fraction f_in = mk(k_in), f_out = mk(k_out);
        if (right) {
            lo = f_in;
            hi = f_out;
        } else {
            lo = f_out;
            hi = f_in;
        }
    }
}

}  // namespace pam
