#include "pam/dynamics.hpp"

#include <cmath>
#include <cstdio>

namespace pam {

namespace {

[[noreturn]] void domain_throw(const char* fn, const char* dom, double x) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s requires x in %s, got %.17g", fn, dom, x);
    throw RangeError(buf);
}

// Rounding can graze an excluded endpoint (branch 1 near the sup rounds to 1,
// branch 2 near eta rounds to -0); clamp back into the half-open domain.
double clamp_lo(double v) { return v < 0.0 ? 0.0 : v; }
double clamp_hi_open(double v) { return v >= 1.0 ? std::nextafter(1.0, 0.0) : v; }
double clamp_hi_closed(double v) { return v > 1.0 ? 1.0 : v; }

}  // namespace

double f_apply(const MapParams& p, double x) {
    if (!(x >= 0.0) || !(x < 1.0)) domain_throw("f_apply", "[0, 1)", x);
    if (x < p.eta()) return clamp_hi_open(p.lambda() * x + p.delta());
    return clamp_lo(p.mu() * (p.lambda() * x + p.delta() - 1.0));
}

double f_left(const MapParams& p, double x) {
    if (!(x > 0.0) || !(x <= 1.0)) domain_throw("f_left", "(0, 1]", x);
    if (x <= p.eta()) return clamp_hi_closed(p.lambda() * x + p.delta());
    double v = p.mu() * (p.lambda() * x + p.delta() - 1.0);
    // branch 2 output lives in (0, mu(lambda+delta-1)]; rounding below 0 means
    // x grazed eta from above, where the true value is positive but tiny
    return v <= 0.0 ? std::nextafter(0.0, 1.0) : clamp_hi_closed(v);
}

double lift_F(const MapParams& p, double x, Side side) {
    if (!std::isfinite(x)) domain_throw("lift_F", "(-inf, inf)", x);
    const double n = std::floor(x);
    const double frac = x - n;
    if (side == Side::AtPoint) {
        const bool branch2 = !(frac < p.eta());
        return n + f_apply(p, frac) + (branch2 ? 1.0 : 0.0);
    }
    // left limit: F(n^-) = n + mu(lambda + delta - 1) on integers, else f_left
    // on the fractional part (branch 2 counted for frac > eta only)
    if (frac == 0.0) return n + p.mu() * (p.lambda() + p.delta() - 1.0);
    const bool branch2 = frac > p.eta();
    return n + f_left(p, frac) + (branch2 ? 1.0 : 0.0);
}

std::optional<double> f_inverse(const MapParams& p, double x) {
    if (!(x >= 0.0) || !(x < 1.0)) domain_throw("f_inverse", "[0, 1)", x);
    if (x >= p.delta()) return (x - p.delta()) / p.lambda();
    const double gap_lo = p.mu() * (p.lambda() + p.delta() - 1.0);
    if (x < gap_lo) return (x / p.mu() + 1.0 - p.delta()) / p.lambda();
    return std::nullopt;  // [mu(lambda+delta-1), delta) is never attained
}

OrbitTrace forward_orbit(const MapParams& p, double x0, std::uint64_t n) {
    if (!(x0 >= 0.0) || !(x0 < 1.0)) domain_throw("forward_orbit", "[0, 1)", x0);
    OrbitTrace t;
    t.start = x0;
    t.points.reserve(n + 1);
    t.itinerary.reserve(n);
    double frac = x0;
    double base = 0.0;  // accumulated branch-2 count = floor of the lifted point
    t.points.push_back(x0);
    for (std::uint64_t k = 0; k < n; ++k) {
        const unsigned char bit = frac < p.eta() ? 0 : 1;
        frac = f_apply(p, frac);
        base += bit;
        t.itinerary.push_back(bit);
        t.points.push_back(base + frac);
    }
    return t;
}

double orbit_closed_form(const MapParams& p, double x_l,
                         std::span<const unsigned char> itinerary,
                         std::size_t l, std::size_t n) {
    if (l > itinerary.size() || n > itinerary.size() - l)
        throw RangeError("itinerary window [l, l+n) out of range");
    if (n == 0) return x_l;
    const double c = (p.lambda() + p.delta() - 1.0) / p.lambda();
    const double eta0 = (1.0 - p.delta()) / p.lambda();
    const double frac_l = x_l - std::floor(x_l);

    // sum over the window read backwards; pw = lambda^k mu^{B_k} with B_k the
    // number of branch-2 steps among the last k
    double acc = 0.0;
    double pw = 1.0;
    long b_total = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const unsigned char bit = itinerary[l + n - 1 - k];
        if (bit > 1) throw RangeError("itinerary bits must be 0 or 1");
        acc += pw * (c - static_cast<double>(bit));
        pw *= p.lambda();
        if (bit) pw *= p.mu();
        b_total += bit;
    }
    const double base = std::floor(x_l) + static_cast<double>(b_total);
    const double value = base + eta0 + pw * (frac_l - eta0) + acc;
    const double frac = value - base;
    if (!(frac >= 0.0) || !(frac < 1.0)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "itinerary inconsistent with parameters: reconstructed fractional "
                      "part %.17g leaves [0, 1)", frac);
        throw RangeError(buf);
    }
    return value;
}

}  // namespace pam
