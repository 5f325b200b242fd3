#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pam/conjugation.hpp"
#include "pam/core.hpp"
#include "pam/dynamics.hpp"
#include "pam/errors.hpp"
#include "pam/heckemahler.hpp"
#include "pam/limitset.hpp"
#include "pam/rotation.hpp"

namespace {

using namespace pam;

std::string jd(double x) {
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", x);
    return b;
}

// Ordered JSON object writer: keys appear exactly in insertion order, doubles
// carry 17 significant digits, so identical inputs give byte-identical output.
class Obj {
public:
    Obj& raw(const char* k, const std::string& v) {
        if (!first_) s_ += ',';
        first_ = false;
        s_ += '"';
        s_ += k;
        s_ += "\":";
        s_ += v;
        return *this;
    }
    Obj& str(const char* k, const std::string& v) { return raw(k, "\"" + v + "\""); }
    Obj& num(const char* k, double x) { return raw(k, jd(x)); }
    Obj& uint(const char* k, std::uint64_t v) { return raw(k, std::to_string(v)); }
    Obj& boolean(const char* k, bool v) { return raw(k, v ? "true" : "false"); }
    std::string done() const { return "{" + s_ + "}"; }

private:
    std::string s_;
    bool first_ = true;
};

struct Flags {
    double lambda = 0.0, mu = 0.0, delta = 0.0;
    std::string rho_real;  // decimal or a named constant
    std::string rho_rational;
    std::string side = "point";
    double x0 = 0.0;
    std::uint64_t steps = 1000;
    std::uint64_t orbit_steps = 100000;
    std::uint64_t depth = 20;
    std::uint64_t n = 1;
    std::uint64_t samples = 200;
    std::uint64_t max_den = 1000000;
    double tol = 1e-12;
    std::uint64_t max_terms = 1000000;
    std::string format = "json";
    unsigned precision = 0;
    bool timing = false;
    bool sweep = false;
};

double parse_real(const std::string& s) {
    if (s == "sqrt5m1over2") return (std::sqrt(5.0) - 1.0) / 2.0;
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw RangeError("cannot parse real number '" + s + "'");
    return v;
}

RationalRot parse_rational(const std::string& s) {
    const std::size_t slash = s.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == s.size())
        throw RangeError("rationals are written p/q, got '" + s + "'");
    std::size_t pa = 0, pb = 0;
    const long long p = std::stoll(s.substr(0, slash), &pa);
    const long long q = std::stoll(s.substr(slash + 1), &pb);
    if (pa != slash || pb != s.size() - slash - 1)
        throw RangeError("rationals are written p/q, got '" + s + "'");
    return RationalRot(p, q);
}

Side parse_side(const std::string& s) {
    if (s == "point") return Side::AtPoint;
    if (s == "left") return Side::LeftLimit;
    throw RangeError("--side must be 'point' or 'left', got '" + s + "'");
}

SeriesTolerance series_of(const Flags& f) { return SeriesTolerance{f.tol, f.max_terms}; }

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void emit(const char* command, const Obj& params, const std::string& result,
          const Flags& f, const SeriesStats& st, const Timer& tm) {
    Obj diag;
    diag.num("abs_tol", f.tol)
        .uint("max_terms", f.max_terms)
        .uint("terms", st.terms)
        .num("tail_bound", st.tail_bound);
    if (f.timing) {
        char b[40];
        std::snprintf(b, sizeof b, "%.3f", tm.ms());
        diag.raw("elapsed_ms", b);
    }
    Obj env;
    env.str("command", command)
        .raw("params", params.done())
        .raw("result", result)
        .raw("diagnostics", diag.done());
    std::cout << env.done() << "\n";
}

std::string rot_json(const RationalRot& r) {
    return Obj().raw("p", r.p().str()).raw("q", r.q().str()).done();
}

const char* boundary_name(RhoBoundary b) {
    switch (b) {
        case RhoBoundary::Interior: return "interior";
        case RhoBoundary::LeftEndpoint: return "left_endpoint";
        case RhoBoundary::RightEndpoint: return "right_endpoint";
        default: return "not_rational";
    }
}

// Rotation number for commands that accept an explicit --rho-real /
// --rho-rational or fall back to the exact search.
RotationValue resolve_rho(const MapParams& p, const Flags& f) {
    if (!f.rho_real.empty() && !f.rho_rational.empty())
        throw RangeError("give at most one of --rho-real and --rho-rational");
    if (!f.rho_rational.empty())
        return RotationValue::exact_rational(parse_rational(f.rho_rational));
    if (!f.rho_real.empty()) return RotationValue::real_approx(parse_real(f.rho_real), 0.0);
    RhoOptions o;
    o.max_den = f.max_den;
    o.estimate_steps = 0;
    return rho_exact(p, o).value;
}

void run_rho(const Flags& f) {
    const Timer tm;
    const MapParams p = validate_params(f.lambda, f.mu, f.delta);
    RhoOptions o;
    o.max_den = f.max_den;
    o.estimate_steps = f.orbit_steps;
    const RotationResult rr = rho_exact(p, o);

    Obj params;
    params.num("lambda", f.lambda)
        .num("mu", f.mu)
        .num("delta", f.delta)
        .uint("max_den", f.max_den)
        .uint("orbit_steps", f.orbit_steps);

    Obj res;
    res.boolean("exact", rr.value.exact());
    if (rr.value.exact()) res.raw("rotation", rot_json(*rr.value.rational));
    res.num("value", rr.value.approx).num("error_bound", rr.value.error_bound);
    res.str("boundary", boundary_name(rr.boundary));
    if (rr.plateau)
        res.raw("plateau", "[" + jd(rr.plateau->delta_left) + "," + jd(rr.plateau->delta_right) + "]");
    if (rr.bracket) {
        Obj br;
        br.raw("lo_num", rr.bracket->first.num.str())
            .raw("lo_den", rr.bracket->first.den.str())
            .raw("hi_num", rr.bracket->second.num.str())
            .raw("hi_den", rr.bracket->second.den.str());
        res.raw("bracket", br.done());
    }
    if (rr.orbit_estimate) {
        Obj est;
        est.num("value", rr.orbit_estimate->approx)
            .num("error_bound", rr.orbit_estimate->error_bound);
        res.raw("orbit_estimate", est.done());
    }
    res.uint("search_probes", rr.evidence.search_depth)
        .uint("estimate_steps", rr.evidence.orbit_steps);
    emit("rho", params, res.done(), f, SeriesStats{}, tm);
}

void run_delta(const Flags& f) {
    const Timer tm;
    if (f.rho_real.empty() == f.rho_rational.empty())
        throw RangeError("delta needs exactly one of --rho-real and --rho-rational");
    Obj params;
    params.num("lambda", f.lambda).num("mu", f.mu);

    if (!f.rho_rational.empty()) {
        const RationalRot rot = parse_rational(f.rho_rational);
        const Side side = parse_side(f.side);
        const Plateau pl = delta_plateau(f.lambda, f.mu, rot);
        params.str("rho_rational", rot.str()).str("side", f.side);
        Obj res;
        res.raw("rotation", rot_json(rot))
            .num("delta_left", pl.delta_left)
            .num("delta_right", pl.delta_right)
            .num("delta", side == Side::LeftLimit ? pl.delta_left : pl.delta_right);
        emit("delta", params, res.done(), f, SeriesStats{}, tm);
        return;
    }
    if (f.side != "point")
        throw RangeError("--side requires --rho-rational (the staircase is continuous "
                         "off the rationals)");
    const double rho = parse_real(f.rho_real);
    params.num("rho_real", rho);
    SeriesStats st;
    const double d = delta_of_rho(f.lambda, f.mu, rho, series_of(f), &st, f.precision);
    Obj res;
    res.num("rho", rho).num("delta", d);
    emit("delta", params, res.done(), f, st, tm);
}

void run_phi(const Flags& f) {
    const Timer tm;
    const MapParams p = validate_params(f.lambda, f.mu, f.delta);
    const RotationValue rv = resolve_rho(p, f);
    const Side side = parse_side(f.side);
    const ConjugationSpec spec(p, rv, series_of(f));
    SeriesStats st{};
    const double value = (f.precision > 0 && !rv.exact())
                             ? phi_eval_via_hm(spec, f.x0, f.precision)
                             : phi_eval(spec, SideReal{f.x0, side}, &st);
    const double resid = conjugacy_residual(spec, f.x0);

    if (f.format == "csv") {
        std::cout << "y,phi\n" << jd(f.x0) << "," << jd(value) << "\n";
        return;
    }
    Obj params;
    params.num("lambda", f.lambda)
        .num("mu", f.mu)
        .num("delta", f.delta)
        .num("y", f.x0)
        .str("side", f.side);
    Obj res;
    res.num("y", f.x0).str("side", f.side);
    if (rv.exact()) res.raw("rotation", rot_json(*rv.rational));
    res.num("rho", rv.approx).num("phi", value).num("residual", resid);
    emit("phi", params, res.done(), f, st, tm);
}

void run_orbit(const Flags& f) {
    const Timer tm;
    const MapParams p = validate_params(f.lambda, f.mu, f.delta);
    const OrbitTrace tr = forward_orbit(p, f.x0, f.steps);
    std::uint64_t branch2 = 0;
    for (unsigned char b : tr.itinerary) branch2 += b;

    if (f.format == "csv") {
        std::cout << "k,x,bit\n";
        for (std::size_t k = 0; k < tr.points.size(); ++k) {
            std::cout << k << "," << jd(tr.points[k]) << ",";
            if (k < tr.itinerary.size()) std::cout << static_cast<int>(tr.itinerary[k]);
            std::cout << "\n";
        }
        return;
    }
    const double final_lifted = tr.points.back();
    Obj params;
    params.num("lambda", f.lambda)
        .num("mu", f.mu)
        .num("delta", f.delta)
        .num("x0", f.x0)
        .uint("steps", f.steps);
    Obj res;
    res.num("x0", f.x0)
        .uint("steps", f.steps)
        .uint("branch2_count", branch2)
        .num("rho_estimate", f.steps == 0 ? 0.0
                                          : static_cast<double>(branch2) /
                                                static_cast<double>(f.steps))
        .num("final", final_lifted)
        .num("final_frac", final_lifted - std::floor(final_lifted));
    emit("orbit", params, res.done(), f, SeriesStats{}, tm);
}

void run_gaps(const Flags& f) {
    const Timer tm;
    const MapParams p = validate_params(f.lambda, f.mu, f.delta);
    if (!f.rho_rational.empty())
        throw RangeError("gaps need an irrational rotation number; --rho-rational "
                         "parameters have a cycle instead (see the cycle command)");
    double rho;
    if (!f.rho_real.empty()) {
        rho = parse_real(f.rho_real);
    } else {
        RhoOptions o;
        o.max_den = f.max_den;
        o.estimate_steps = 0;
        const RotationResult rr = rho_exact(p, o);
        if (rr.boundary != RhoBoundary::NotRational)
            throw RangeError("rotation number is " + rr.value.rational->str() +
                             ": the limit set is a cycle, not a Cantor set "
                             "(pass --rho-real to force gap formulas)");
        rho = rr.value.approx;
    }
    std::vector<Gap> gaps = gaps_up_to(p, rho, f.depth, series_of(f));

    if (f.format == "csv") {
        std::sort(gaps.begin(), gaps.end(),
                  [](const Gap& a, const Gap& b) { return a.index < b.index; });
        std::cout << "l,xi_left,xi_right\n";
        for (const Gap& g : gaps)
            std::cout << g.index << "," << jd(g.left) << "," << jd(g.right) << "\n";
        return;
    }
    double total = 0.0;
    std::string arr = "[";
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        const Gap& g = gaps[i];
        total += g.right - g.left;
        if (i) arr += ',';
        arr += Obj()
                   .uint("index", g.index)
                   .num("left", g.left)
                   .num("right", g.right)
                   .num("width", g.right - g.left)
                   .done();
    }
    arr += ']';
    Obj params;
    params.num("lambda", f.lambda)
        .num("mu", f.mu)
        .num("delta", f.delta)
        .num("rho", rho)
        .uint("depth", f.depth);
    Obj res;
    res.num("rho", rho).uint("depth", f.depth).num("total_width", total).raw("gaps", arr);
    emit("gaps", params, res.done(), f, SeriesStats{}, tm);
}

void run_cycle(const Flags& f) {
    const Timer tm;
    const MapParams p = validate_params(f.lambda, f.mu, f.delta);
    if (!f.rho_real.empty())
        throw RangeError("cycles need a rational rotation number; use --rho-rational");
    std::optional<RationalRot> rot;
    if (!f.rho_rational.empty()) {
        rot = parse_rational(f.rho_rational);
    } else {
        RhoOptions o;
        o.max_den = f.max_den;
        o.estimate_steps = 0;
        const RotationResult rr = rho_exact(p, o);
        if (!rr.value.exact())
            throw RangeError("rotation number is not rational up to denominator " +
                             std::to_string(f.max_den) +
                             ": no cycle (see the gaps command)");
        rot = *rr.value.rational;
    }
    const Side side = parse_side(f.side);
    const Cycle c = (side == Side::LeftLimit) ? fminus_cycle(p, *rot, series_of(f))
                                              : cycle_points(p, *rot, series_of(f));

    if (f.format == "csv") {
        std::cout << "m,zeta\n";
        for (std::size_t m = 0; m < c.points.size(); ++m)
            std::cout << m << "," << jd(c.points[m]) << "\n";
        return;
    }
    std::string arr = "[";
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        if (i) arr += ',';
        arr += jd(c.points[i]);
    }
    arr += ']';
    Obj params;
    params.num("lambda", f.lambda)
        .num("mu", f.mu)
        .num("delta", f.delta)
        .str("rho_rational", rot->str())
        .str("side", f.side);
    Obj res;
    res.raw("rotation", rot_json(c.rot)).str("side", f.side).raw("points", arr);
    emit("cycle", params, res.done(), f, SeriesStats{}, tm);
}

void run_images(const Flags& f) {
    const Timer tm;
    const MapParams p = validate_params(f.lambda, f.mu, f.delta);
    ImageOptions o;
    o.max_den = f.max_den;
    o.tol = series_of(f);
    const IntervalDecomposition dec = iterated_image(p, f.n, o);

    if (f.format == "csv") {
        std::cout << "a,b,length\n";
        for (const CircularInterval& iv : dec.intervals)
            std::cout << jd(iv.a) << "," << jd(iv.b) << "," << jd(iv.length()) << "\n";
        return;
    }
    std::string arr = "[";
    for (std::size_t i = 0; i < dec.intervals.size(); ++i) {
        const CircularInterval& iv = dec.intervals[i];
        if (i) arr += ',';
        arr += Obj().num("a", iv.a).num("b", iv.b).num("length", iv.length()).done();
    }
    arr += ']';
    Obj params;
    params.num("lambda", f.lambda).num("mu", f.mu).num("delta", f.delta).uint("n", f.n);
    Obj res;
    res.uint("n", dec.n)
        .uint("count", dec.intervals.size())
        .num("measure", dec.measure)
        .raw("intervals", arr);
    emit("images", params, res.done(), f, SeriesStats{}, tm);
}

void run_plot_delta(const Flags& f) {
    if (f.samples == 0) throw RangeError("--samples must be at least 1");
    const double rb = r_bound(f.lambda, f.mu);
    const SeriesTolerance tol = series_of(f);
    const auto row = [&](std::uint64_t i) {
        const double rho =
            rb * (static_cast<double>(i) + 0.5) / static_cast<double>(f.samples);
        const double d = delta_of_rho(f.lambda, f.mu, rho, tol, nullptr, f.precision);
        return jd(rho) + "," + jd(d);
    };
    std::cout << "rho,delta\n";
    if (!f.sweep) {
        for (std::uint64_t i = 0; i < f.samples; ++i) std::cout << row(i) << "\n";
        return;
    }
    // fixed chunk count so the split (and therefore the output) never depends
    // on the host; chunks are concatenated in grid order
    const std::uint64_t chunks = std::min<std::uint64_t>(8, f.samples);
    std::vector<std::future<std::vector<std::string>>> futs;
    futs.reserve(static_cast<std::size_t>(chunks));
    for (std::uint64_t c = 0; c < chunks; ++c) {
        const std::uint64_t lo = f.samples * c / chunks;
        const std::uint64_t hi = f.samples * (c + 1) / chunks;
        futs.push_back(std::async(std::launch::async, [&row, lo, hi] {
            std::vector<std::string> rows;
            rows.reserve(static_cast<std::size_t>(hi - lo));
            for (std::uint64_t i = lo; i < hi; ++i) rows.push_back(row(i));
            return rows;
        }));
    }
    for (auto& fu : futs)
        for (const std::string& r : fu.get()) std::cout << r << "\n";
}

void run_plot_phi(const Flags& f, bool delta_given) {
    if (f.samples == 0) throw RangeError("--samples must be at least 1");
    std::optional<MapParams> p;
    std::optional<RotationValue> rv;
    if (delta_given) {
        p = validate_params(f.lambda, f.mu, f.delta);
        rv = resolve_rho(*p, f);
    } else if (!f.rho_rational.empty()) {
        const RationalRot rot = parse_rational(f.rho_rational);
        const Plateau pl = delta_plateau(f.lambda, f.mu, rot);
        p = validate_params(f.lambda, f.mu, 0.5 * (pl.delta_left + pl.delta_right));
        rv = RotationValue::exact_rational(rot);
    } else if (!f.rho_real.empty()) {
        const double rho = parse_real(f.rho_real);
        const double d = delta_of_rho(f.lambda, f.mu, rho, series_of(f), nullptr, f.precision);
        p = validate_params(f.lambda, f.mu, d);
        rv = RotationValue::real_approx(rho, 0.0);
    } else {
        throw RangeError("plot-phi needs --delta, --rho-real or --rho-rational");
    }
    const ConjugationSpec spec(*p, *rv, series_of(f));
    std::cout << "y,phi\n";
    for (std::uint64_t i = 0; i < f.samples; ++i) {
        const double y = static_cast<double>(i) / static_cast<double>(f.samples);
        std::cout << jd(y) << "," << jd(phi_eval(spec, SideReal{y, Side::AtPoint})) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-branch piecewise affine circle dynamics: rotation numbers, "
                 "the delta staircase, conjugations, cycles, gaps and images"};
    app.require_subcommand(1);
    Flags f;
    std::function<void()> runner;

    const auto add_params = [&f](CLI::App* sub) {
        sub->add_option("--lambda,-l", f.lambda, "contraction of the first branch (0,1)")
            ->required();
        sub->add_option("--mu,-m", f.mu, "slope ratio of the second branch (> 0)")->required();
    };
    const auto add_delta = [&f](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--delta,-d", f.delta, "offset parameter");
        if (required) o->required();
        return o;
    };
    const auto add_rho = [&f](CLI::App* sub) {
        sub->add_option("--rho-real,--rho", f.rho_real,
                        "real rotation number (decimal or sqrt5m1over2)");
        sub->add_option("--rho-rational", f.rho_rational, "rational rotation number p/q");
    };
    const auto add_series = [&f](CLI::App* sub) {
        sub->add_option("--tol", f.tol, "series tail tolerance");
        sub->add_option("--max-terms", f.max_terms, "series term cap");
        sub->add_option("--precision", f.precision, "MPFR bits (0 = double arithmetic)");
    };
    const auto add_common = [&f](CLI::App* sub) {
        sub->add_flag("--timing", f.timing, "add elapsed_ms to diagnostics");
    };
    const auto add_format = [&f](CLI::App* sub) {
        sub->add_option("--format", f.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };
    // the plot subcommands emit CSV unconditionally; the flag is accepted for
    // uniformity but only csv is a valid value
    const auto add_format_csv = [&f](CLI::App* sub) {
        sub->add_option("--format", f.format, "csv (plots are always CSV)")
            ->check(CLI::IsMember({"csv"}));
    };

    {
        auto* sub = app.add_subcommand("rho", "exact rotation number of (lambda, mu, delta)");
        add_params(sub);
        add_delta(sub, true);
        sub->add_option("--max-den", f.max_den, "rationality search denominator cap");
        sub->add_option("--orbit-steps,--steps", f.orbit_steps,
                        "orbit length for the irrational-case estimate");
        add_common(sub);
        sub->callback([&] { runner = [&] { run_rho(f); }; });
    }
    {
        auto* sub = app.add_subcommand("delta", "staircase value delta(lambda, mu, rho)");
        add_params(sub);
        add_rho(sub);
        sub->add_option("--side", f.side, "point (default) or left for the left limit");
        add_series(sub);
        add_common(sub);
        sub->callback([&] { runner = [&] { run_delta(f); }; });
    }
    {
        auto* sub = app.add_subcommand("phi", "conjugation value phi(y)");
        add_params(sub);
        add_delta(sub, true);
        sub->add_option("--y,--x0", f.x0, "evaluation point y")->required();
        sub->add_option("--side", f.side, "point (default) or left for phi(y^-)");
        add_rho(sub);
        sub->add_option("--max-den", f.max_den, "denominator cap for the rho search");
        add_series(sub);
        add_format(sub);
        add_common(sub);
        sub->callback([&] { runner = [&] { run_phi(f); }; });
    }
    {
        auto* sub = app.add_subcommand("orbit", "forward orbit of the lift");
        add_params(sub);
        add_delta(sub, true);
        sub->add_option("--x0", f.x0, "starting point in [0,1)");
        sub->add_option("--steps", f.steps, "number of iterations");
        add_format(sub);
        add_common(sub);
        sub->callback([&] { runner = [&] { run_orbit(f); }; });
    }
    {
        auto* sub = app.add_subcommand("gaps", "Cantor gaps of the limit set");
        add_params(sub);
        add_delta(sub, true);
        add_rho(sub);
        sub->add_option("--depth", f.depth, "number of gaps");
        sub->add_option("--max-den", f.max_den, "denominator cap for the rho search");
        add_series(sub);
        add_format(sub);
        add_common(sub);
        sub->callback([&] { runner = [&] { run_gaps(f); }; });
    }
    {
        auto* sub = app.add_subcommand("cycle", "attracting cycle for a rational rotation number");
        add_params(sub);
        add_delta(sub, true);
        add_rho(sub);
        sub->add_option("--side", f.side, "point (default) or left for the left-limit cycle");
        sub->add_option("--max-den", f.max_den, "denominator cap for the rho search");
        add_series(sub);
        add_format(sub);
        add_common(sub);
        sub->callback([&] { runner = [&] { run_cycle(f); }; });
    }
    {
        auto* sub = app.add_subcommand("images", "f^n([0,1)) as disjoint circular intervals");
        add_params(sub);
        add_delta(sub, true);
        sub->add_option("--n,-n", f.n, "iteration depth")->required();
        sub->add_option("--max-den", f.max_den, "denominator cap for the rho search");
        add_series(sub);
        add_format(sub);
        add_common(sub);
        sub->callback([&] { runner = [&] { run_images(f); }; });
    }
    {
        auto* sub = app.add_subcommand("plot-delta", "CSV sweep of the delta staircase");
        add_params(sub);
        sub->add_option("--samples", f.samples, "number of rho samples")->required();
        sub->add_flag("--sweep", f.sweep, "evaluate the grid concurrently");
        add_series(sub);
        add_format_csv(sub);
        sub->callback([&] { runner = [&] { run_plot_delta(f); }; });
    }
    {
        auto* sub = app.add_subcommand("plot-phi", "CSV sweep of the conjugation phi");
        add_params(sub);
        auto* dopt = add_delta(sub, false);
        add_rho(sub);
        sub->add_option("--samples", f.samples, "number of y samples")->required();
        sub->add_option("--max-den", f.max_den, "denominator cap for the rho search");
        add_series(sub);
        add_format_csv(sub);
        sub->callback([&, dopt] {
            const bool delta_given = dopt->count() > 0;
            runner = [&, delta_given] { run_plot_phi(f, delta_given); };
        });
    }

    try {
        app.parse(argc, argv);
        if (runner) runner();
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InvalidParams& e) {
        std::fprintf(stderr, "error (invalid parameters): %s\n", e.what());
        return 2;
    } catch (const RangeError& e) {
        std::fprintf(stderr, "error (invalid parameters): %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error (invalid parameters): %s\n", e.what());
        return 2;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error (invalid parameters): %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error (computation failed): %s\n", e.what());
        return 3;
    }
}
