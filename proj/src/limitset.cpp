#include "pam/limitset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "pam/conjugation.hpp"
#include "pam/dynamics.hpp"

namespace pam {

namespace {

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double pow_u64(double b, std::uint64_t e) {
    double r = 1.0;
    while (e != 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

long long mod_inverse(long long a, long long m) {  // gcd(a, m) == 1
    long long t = 0, nt = 1, r = m, nr = a % m;
    while (nr != 0) {
        const long long q = r / nr;
        long long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    return t < 0 ? t + m : t;
}

// Smallest residual of one cycle step w -> target over the branches plausible
// at w.  Cycles through an endpoint regime pass exactly through the corner
// eta, where the float branch test is ambiguous within a few ulp; both branch
// images are admitted there, and only there.
double step_residual(const MapParams& p, double w, double target) {
    const double slack = 64.0 * std::numeric_limits<double>::epsilon();
    const double y = p.lambda() * w + p.delta();
    double best = std::numeric_limits<double>::infinity();
    if (w <= p.eta() + slack) best = std::min(best, std::fabs(y - target));
    if (w >= p.eta() - slack) best = std::min(best, std::fabs(p.mu() * (y - 1.0) - target));
    return best;
}

long long q_as_ll(const RationalRot& rot) {
    if (rot.q() > (BigInt(1) << 31))
        throw RangeError("cycle extraction needs q < 2^31, got " + rot.str());
    return rot.q().convert_to<long long>();
}

void check_cycle_shape(const std::vector<double>& pts, double lo, double hi,
                       const char* what) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!(pts[i] >= lo && pts[i] <= hi))
            throw PrecisionExhausted(std::string(what) + " point " + num(pts[i]) +
                                     " escaped [" + num(lo) + ", " + num(hi) + "]");
        if (i + 1 < pts.size() && !(pts[i] < pts[i + 1]))
            throw PrecisionExhausted(std::string(what) +
                                     " points came out non-increasing at index " +
                                     std::to_string(i));
    }
}

void check_cycle_closure(const MapParams& p, const std::vector<double>& pts,
                         long long shift, double thresh, const char* what) {
    const std::size_t q = pts.size();
    for (std::size_t m = 0; m < q; ++m) {
        const std::size_t im = (m + static_cast<std::size_t>(shift)) % q;
        const double r = step_residual(p, pts[m], pts[im]);
        if (!(r <= thresh))
            throw PrecisionExhausted(std::string(what) + " closure residual " + num(r) +
                                     " at point " + num(pts[m]) + " exceeds " + num(thresh));
    }
}

struct Hole {
    double a, b;  // [a, b), never wrapping
};

// Complement of disjoint holes inside [0,1), glued across 0 on the circle.
std::vector<CircularInterval> complement_arcs(const std::vector<Hole>& holes) {
    std::vector<CircularInterval> arcs;
    arcs.reserve(holes.size());
    for (std::size_t i = 0; i < holes.size(); ++i) {
        const std::size_t j = (i + 1) % holes.size();
        arcs.push_back(CircularInterval{holes[i].b, holes[j].a});
    }
    std::sort(arcs.begin(), arcs.end(),
              [](const CircularInterval& x, const CircularInterval& y) { return x.a < y.a; });
    return arcs;
}

}  // namespace

double CircularInterval::length() const noexcept {
    return b > a ? b - a : 1.0 - (a - b);
}

bool CircularInterval::contains(double x) const noexcept {
    return b > a ? (x >= a && x < b) : (x >= a || x < b);
}

Gap gap_endpoints(const MapParams& p, double rho, std::uint64_t l,
                  const SeriesTolerance&) {
    if (l == 0) throw RangeError("gap indices start at 1");
    if (!(rho > 0.0 && rho < 1.0))
        throw RangeError("gap endpoints need 0 < rho < 1, got " + num(rho));
    const double w1 = p.delta() - p.mu() * (p.lambda() + p.delta() - 1.0);
    if (l == 1) return Gap{1, p.mu() * (p.lambda() + p.delta() - 1.0), p.delta()};

    // right endpoint: (1-delta)/lambda
    //   + sum_{k=0..l} lambda^{l-k} mu^{floor(l rho)-floor(k rho)} (c + floor((k-1)rho) - floor(k rho))
    // summed from k = l downward so the weight updates stay incremental.
    const double c = (p.lambda() + p.delta() - 1.0) / p.lambda();
    double pw = 1.0;
    double acc = 0.0;
    double fl_k = std::floor(static_cast<double>(l) * rho);
    const double fl_l = fl_k;
    for (std::uint64_t k = l;; --k) {
        const double fl_km1 = std::floor((static_cast<double>(k) - 1.0) * rho);
        acc += pw * (c + (fl_km1 - fl_k));
        if (k == 0) break;
        pw *= p.lambda();
        for (double j = fl_km1; j < fl_k; ++j) pw *= p.mu();
        fl_k = fl_km1;
    }
    const double right = (1.0 - p.delta()) / p.lambda() + acc;
    const double width =
        std::pow(p.lambda(), static_cast<double>(l) - 1.0) * std::pow(p.mu(), fl_l) * w1;
    return Gap{l, right - width, right};
}

std::vector<Gap> gaps_up_to(const MapParams& p, double rho, std::uint64_t L,
                            const SeriesTolerance& tol) {
    std::vector<Gap> out;
    out.reserve(static_cast<std::size_t>(L));
    for (std::uint64_t l = 1; l <= L; ++l) out.push_back(gap_endpoints(p, rho, l, tol));
    std::sort(out.begin(), out.end(), [](const Gap& a, const Gap& b) { return a.left < b.left; });
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        if (out[i].right > out[i + 1].left)
            throw PrecisionExhausted("gaps " + std::to_string(out[i].index) + " and " +
                                     std::to_string(out[i + 1].index) +
                                     " overlap at double precision (" + num(out[i].right) +
                                     " > " + num(out[i + 1].left) + ")");
    }
    return out;
}

Cycle cycle_points(const MapParams& p, const RationalRot& rot, const SeriesTolerance& tol) {
    switch (classify_boundary(p, rot)) {
        case PlateauSide::Interior:
        case PlateauSide::LeftEndpoint:
            break;
        case PlateauSide::RightEndpoint:
            throw RangeError("delta sits at the right endpoint of the step of " + rot.str() +
                             ": the map has no cycle there (its left-limit version does)");
        case PlateauSide::Outside:
            throw RangeError("delta lies outside the step of " + rot.str() +
                             ": no cycle with that rotation number");
    }
    const ConjugationSpec spec(p, RotationValue::exact_rational(rot), tol);
    const long long q = q_as_ll(rot);
    const long long pp = rot.p().convert_to<long long>();
    std::vector<double> pts(static_cast<std::size_t>(q));
    for (long long m = 0; m < q; ++m) {
        double z = phi_grid(spec, 0, m);
        if (z < 0.0 && z > -1e-12) z = 0.0;  // phi(0) = 0 exactly at the left endpoint
        pts[static_cast<std::size_t>(m)] = z;
    }
    check_cycle_shape(pts, 0.0, std::nextafter(1.0, 0.0), "cycle");
    check_cycle_closure(p, pts, pp, std::max(1e-10, 100.0 * tol.abs_tol), "cycle");
    return Cycle{std::move(pts), rot};
}

Cycle fminus_cycle(const MapParams& p, const RationalRot& rot, const SeriesTolerance& tol) {
    const Plateau pl = delta_plateau(p.lambda(), p.mu(), rot);
    if (!(p.delta() > pl.delta_left && p.delta() <= pl.delta_right))
        throw RangeError("the left-limit cycle of " + rot.str() + " needs delta in (" +
                         num(pl.delta_left) + ", " + num(pl.delta_right) + "], got " +
                         num(p.delta()));
    const ConjugationSpec spec(p, RotationValue::exact_rational(rot), tol);
    const long long q = q_as_ll(rot);
    const long long pp = rot.p().convert_to<long long>();
    std::vector<double> pts(static_cast<std::size_t>(q));
    for (long long m = 1; m <= q; ++m) {
        double w = (m < q) ? phi_grid(spec, 0, m, Side::LeftLimit)
                           : phi_grid(spec, 1, 0, Side::LeftLimit);
        if (w > 1.0 && w < 1.0 + 1e-12) w = 1.0;  // phi(1^-) = 1 at the right endpoint
        pts[static_cast<std::size_t>(m - 1)] = w;
    }
    check_cycle_shape(pts, std::numeric_limits<double>::min(), 1.0, "left-limit cycle");
    check_cycle_closure(p, pts, pp, std::max(1e-10, 100.0 * tol.abs_tol), "left-limit cycle");
    return Cycle{std::move(pts), rot};
}

IntervalDecomposition iterated_image(const MapParams& p, std::uint64_t n,
                                     const ImageOptions& opts) {
    IntervalDecomposition out;
    out.n = n;
    if (n == 0) {
        out.intervals = {CircularInterval{0.0, 1.0}};
        out.measure = 1.0;
        return out;
    }
    if (n > 10'000'000) throw RangeError("iterated image depth is capped at 1e7");

    RhoOptions ro;
    ro.max_den = opts.max_den;
    ro.estimate_steps = 0;
    const RotationResult rr = rho_exact(p, ro);

    if (rr.boundary == RhoBoundary::NotRational) {
        // Complement of the first n Cantor gaps; widths re-accumulated in
        // closed form so the measure does not suffer endpoint cancellation.
        const double rho = rr.value.approx;
        const std::vector<Gap> gaps = gaps_up_to(p, rho, n, opts.tol);
        std::vector<Hole> holes;
        holes.reserve(gaps.size());
        for (const Gap& g : gaps) holes.push_back(Hole{g.left, g.right});
        const double w1 = p.delta() - p.mu() * (p.lambda() + p.delta() - 1.0);
        double width = w1, width_sum = 0.0, fl = 0.0;
        for (std::uint64_t l = 1; l <= n; ++l) {
            if (l > 1) {
                width *= p.lambda();
                const double fl_next = std::floor(static_cast<double>(l) * rho);
                for (double j = fl; j < fl_next; ++j) width *= p.mu();
                fl = fl_next;
            } else {
                fl = std::floor(rho);
            }
            width_sum += width;
        }
        out.intervals = complement_arcs(holes);
        out.measure = 1.0 - width_sum;
        return out;
    }

    const RationalRot& rot = *rr.value.rational;
    const long long q = q_as_ll(rot);
    const long long pp = rot.p().convert_to<long long>();
    const std::size_t Q = static_cast<std::size_t>(q);

    if (n < static_cast<std::uint64_t>(q)) {
        // n disjoint proper holes [u_l, v_l); their complement has n arcs.
        std::vector<Hole> holes;
        holes.reserve(static_cast<std::size_t>(n));
        double u = 1.0, v = 0.0, width_sum = 0.0;
        for (std::uint64_t l = 1; l <= n; ++l) {
            u = f_left(p, u);
            v = f_apply(p, v);
            if (!(u < v))
                throw PrecisionExhausted("hole " + std::to_string(l) +
                                         " collapsed at double precision");
            holes.push_back(Hole{u, v});
            width_sum += v - u;
        }
        std::sort(holes.begin(), holes.end(),
                  [](const Hole& x, const Hole& y) { return x.a < y.a; });
        for (std::size_t i = 0; i + 1 < holes.size(); ++i)
            if (holes[i].b > holes[i + 1].a)
                throw PrecisionExhausted("holes overlap at double precision");
        out.intervals = complement_arcs(holes);
        out.measure = 1.0 - width_sum;
        return out;
    }

    // n >= q: the image is q arcs [v_l, u_m), l in the window [n-q+1, n],
    // m == l + inv(p) (mod q) taken inside the window.  Endpoints come from the
    // orbits of 0 (under the map) and 1 (under its left-limit); lengths are
    // tracked multiplicatively — every arc contracts by the branch slope at its
    // left endpoint each step, and any q consecutive steps contract by exactly
    // lambda^q mu^p.
    const long long pbar = mod_inverse(pp, q);
    std::vector<double> u_ring(Q), v_ring(Q), u_q(Q + 1), v_q(Q + 1), len(Q, 0.0);
    double u = 1.0, v = 0.0;
    u_q[0] = u;
    v_q[0] = v;
    u_ring[0] = u;
    v_ring[0] = v;
    for (std::size_t l = 1; l <= Q; ++l) {
        u = f_left(p, u);
        v = f_apply(p, v);
        u_q[l] = u;
        v_q[l] = v;
        u_ring[l % Q] = u;
        v_ring[l % Q] = v;
    }
    for (std::size_t l = 1; l <= Q; ++l) {
        const std::size_t m =
            1 + static_cast<std::size_t>((l + static_cast<std::size_t>(pbar) - 1) % Q);
        len[l % Q] = CircularInterval{v_q[l], u_q[m]}.length();
    }

    const std::uint64_t T = n - static_cast<std::uint64_t>(q);
    const std::uint64_t K = T / static_cast<std::uint64_t>(q);
    const std::uint64_t r = T % static_cast<std::uint64_t>(q);
    std::uint64_t w = static_cast<std::uint64_t>(q);
    for (std::uint64_t s = 0; s < r; ++s) {
        for (std::size_t j = 0; j < Q; ++j)
            len[j] *= (v_ring[j] < p.eta()) ? p.lambda() : p.lambda() * p.mu();
        u = f_left(p, u);
        v = f_apply(p, v);
        ++w;
        u_ring[w % Q] = u;
        v_ring[w % Q] = v;
    }
    if (K > 0) {
        double scale_q = 1.0;
        for (long long i = 0; i < q; ++i) scale_q *= p.lambda();
        for (long long i = 0; i < pp; ++i) scale_q *= p.mu();
        const double scale_K = pow_u64(scale_q, K);
        for (double& L : len) L *= scale_K;
        for (std::uint64_t s = 0; s < K * static_cast<std::uint64_t>(q); ++s) {
            u = f_left(p, u);
            v = f_apply(p, v);
            ++w;
            u_ring[w % Q] = u;
            v_ring[w % Q] = v;
        }
    }

    const std::uint64_t base = n - static_cast<std::uint64_t>(q) + 1;
    out.intervals.reserve(Q);
    double measure = 0.0;
    for (std::uint64_t l = base; l <= n; ++l) {
        const std::uint64_t m = base + (l + static_cast<std::uint64_t>(pbar) - base) % Q;
        out.intervals.push_back(CircularInterval{v_ring[l % Q], u_ring[m % Q]});
        measure += len[l % Q];
    }
    std::sort(out.intervals.begin(), out.intervals.end(),
              [](const CircularInterval& x, const CircularInterval& y) { return x.a < y.a; });
    out.measure = measure;
    return out;
}

OmegaSet omega_limit(const MapParams& p, double x, const OmegaOptions& opts) {
    if (!(x >= 0.0 && x < 1.0))
        throw RangeError("omega_limit needs x in [0, 1), got " + num(x));
    if (opts.orbit_steps < 10) throw RangeError("omega_limit needs at least 10 orbit steps");

    RhoOptions ro;
    ro.max_den = opts.max_den;
    ro.estimate_steps = 0;
    const RotationResult rr = rho_exact(p, ro);

    std::optional<OmegaSet> result;
    std::function<double(double)> dist;
    bool left_map = false;
    switch (rr.boundary) {
        case RhoBoundary::Interior:
        case RhoBoundary::LeftEndpoint: {
            Cycle c = cycle_points(p, *rr.value.rational, opts.series);
            dist = [pts = c.points](double z) {
                double d = std::numeric_limits<double>::infinity();
                for (double pt : pts) d = std::min(d, std::fabs(z - pt));
                return d;
            };
            result.emplace(std::move(c));
            break;
        }
        case RhoBoundary::RightEndpoint: {
            Cycle c = fminus_cycle(p, *rr.value.rational, opts.series);
            left_map = true;
            dist = [pts = c.points](double z) {
                double d = std::numeric_limits<double>::infinity();
                for (double pt : pts) d = std::min(d, std::fabs(z - pt));
                return d;
            };
            result.emplace(FiniteSet{std::move(c.points), c.rot});
            break;
        }
        case RhoBoundary::NotRational: {
            CantorApprox ca{gaps_up_to(p, rr.value.approx, opts.gap_depth, opts.series),
                            rr.value.approx};
            dist = [gaps = ca.gaps](double z) {
                for (const Gap& g : gaps)
                    if (z > g.left && z < g.right) return std::min(z - g.left, g.right - z);
                return 0.0;
            };
            result.emplace(std::move(ca));
            break;
        }
    }

    double z = x;
    double d_prev = dist(z);
    const std::uint64_t k0 =
        opts.orbit_steps - std::max<std::uint64_t>(1, opts.orbit_steps / 10);
    for (std::uint64_t k = 0; k < opts.orbit_steps; ++k) {
        z = (left_map && z != 0.0) ? f_left(p, z) : f_apply(p, z);
        const double d = dist(z);
        if (k >= k0 && d > d_prev + 1e-15)
            throw ApproachNotObserved("distance to the candidate limit set rose from " +
                                      num(d_prev) + " to " + num(d) + " at step " +
                                      std::to_string(k + 1) + " of " +
                                      std::to_string(opts.orbit_steps));
        d_prev = d;
    }
    if (!(d_prev <= opts.tol))
        throw ApproachNotObserved("orbit is still " + num(d_prev) +
                                  " from the candidate limit set after " +
                                  std::to_string(opts.orbit_steps) + " steps (tol " +
                                  num(opts.tol) + ")");
    return std::move(*result);
}

std::optional<Cycle> find_orbit_cycle(const MapParams& p, double x0, std::uint64_t steps,
                                      std::uint64_t max_period, double close_tol) {
    if (!(x0 >= 0.0 && x0 < 1.0))
        throw RangeError("cycle search needs x0 in [0, 1), got " + num(x0));
    if (max_period == 0 || steps < max_period + 1)
        throw RangeError("cycle search needs steps >= max_period + 1 >= 2");

    const std::size_t W = static_cast<std::size_t>(max_period) + 1;
    std::vector<double> ring(W);
    double z = x0;
    for (std::uint64_t k = 0; k < steps; ++k) {
        z = f_apply(p, z);
        ring[static_cast<std::size_t>(k % W)] = z;
    }
    // x_j lives at slot (j-1) % W, so x_{steps-W+1+i} is at slot (steps-W+i) % W
    std::vector<double> tail(W);  // chronological: tail[W-1] = x_steps
    for (std::size_t i = 0; i < W; ++i)
        tail[i] = ring[static_cast<std::size_t>((steps - W + i) % W)];

    const double eta0 = p.eta();
    for (std::uint64_t kper = 1; kper <= max_period; ++kper) {
        const std::size_t k = static_cast<std::size_t>(kper);
        if (std::fabs(tail[W - 1] - tail[W - 1 - k]) > 1e-9) continue;

        // branch word of the last kper steps, then the affine composition
        // z -> a z + b over that word; its fixed point is the only candidate.
        std::vector<unsigned char> bits(k);
        double a = 1.0, b = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            bits[j] = tail[W - 1 - k + j] < eta0 ? 0 : 1;
            const double s = bits[j] ? p.lambda() * p.mu() : p.lambda();
            const double t = bits[j] ? p.mu() * (p.delta() - 1.0) : p.delta();
            a *= s;
            b = s * b + t;
        }
        if (!(a < 1.0)) continue;
        const double z0 = b / (1.0 - a);

        // validate: stay in [0,1), keep clear of the branch corner (a point
        // within rounding distance of eta has an undecidable branch, and the
        // float orbit of a boundary-parameter map can lock onto a spurious
        // exactly-periodic path through the corner), honour the branch word,
        // and close up.
        const double corner = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + eta0);
        std::vector<double> cyc;
        cyc.reserve(k);
        bool ok = true;
        double y = z0;
        for (std::size_t j = 0; j < k && ok; ++j) {
            if (!(y >= 0.0 && y < 1.0) || std::fabs(y - eta0) <= corner ||
                (y < eta0 ? 0 : 1) != bits[j]) {
                ok = false;
                break;
            }
            cyc.push_back(y);
            y = bits[j] ? p.mu() * (p.lambda() * y + p.delta() - 1.0)
                        : p.lambda() * y + p.delta();
        }
        if (!ok || cyc.size() != k || std::fabs(y - z0) > close_tol) continue;

        // minimal period
        std::size_t per = k;
        for (std::size_t d = 1; d < k; ++d) {
            if (k % d != 0) continue;
            bool periodic = true;
            for (std::size_t j = d; j < k && periodic; ++j)
                periodic = std::fabs(cyc[j] - cyc[j - d]) <= close_tol && bits[j] == bits[j - d];
            if (periodic) {
                per = d;
                break;
            }
        }
        cyc.resize(per);
        long long ones = 0;
        for (std::size_t j = 0; j < per; ++j) ones += bits[j];
        if (ones == 0 || ones == static_cast<long long>(per)) continue;

        std::sort(cyc.begin(), cyc.end());
        bool distinct = true;
        for (std::size_t j = 0; j + 1 < cyc.size() && distinct; ++j)
            distinct = cyc[j] < cyc[j + 1];
        if (!distinct) continue;
        RationalRot rot(ones, static_cast<long long>(per));
        if (rot.q() != static_cast<long long>(per)) continue;  // word was not primitive
        return Cycle{std::move(cyc), rot};
    }
    return std::nullopt;
}

}  // namespace pam
