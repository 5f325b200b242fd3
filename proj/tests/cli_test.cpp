#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
    int status = -1;
    std::string out;  // stdout and stderr merged
};

RunResult run_cli(const std::string& args) {
    const char* bin = std::getenv("PAMDYN_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "PAMDYN_BIN must point at the CLI binary");
    const std::string cmd = std::string(bin) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

json run_json(const std::string& args) {
    const RunResult r = run_cli(args);
    CAPTURE(args);
    CAPTURE(r.out);
    REQUIRE(r.status == 0);
    return json::parse(r.out);
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string f;
    while (std::getline(in, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;
const char* kGoldenDelta = "0.66172856241938693";

}  // namespace

TEST_CASE("rho: exact plateau answer with full envelope") {
    const json j = run_json("rho --lambda 0.5 --mu 0.5 --delta 0.75");
    CHECK(j["command"] == "rho");
    CHECK(j["params"]["lambda"] == 0.5);
    CHECK(j["params"]["delta"] == 0.75);
    const json& r = j["result"];
    CHECK(r["exact"] == true);
    CHECK(r["rotation"]["p"] == 1);
    CHECK(r["rotation"]["q"] == 2);
    CHECK(r["value"] == 0.5);
    CHECK(r["error_bound"] == 0.0);
    CHECK(r["boundary"] == "interior");
    REQUIRE(r["plateau"].is_array());
    CHECK(r["plateau"][0].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(r["plateau"][1].get<double>() == 0.9);
    CHECK_FALSE(r.contains("bracket"));
    CHECK(j["diagnostics"].contains("abs_tol"));
    CHECK_FALSE(j["diagnostics"].contains("elapsed_ms"));
}

TEST_CASE("rho: byte-identical across runs, timing only on request") {
    const std::string args = "rho --lambda 0.5 --mu 0.5 --delta 0.75";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);

    const json timed = run_json(args + " --timing");
    CHECK(timed["diagnostics"].contains("elapsed_ms"));
}

TEST_CASE("rho: capped search reports the Farey bracket and an orbit estimate") {
    const json j = run_json(std::string("rho --lambda 0.95 --mu 0.9 --delta ") +
                            kGoldenDelta + " --max-den 80");
    const json& r = j["result"];
    CHECK(r["exact"] == false);
    CHECK(r["boundary"] == "not_rational");
    CHECK(r["bracket"]["lo_num"] == 21);
    CHECK(r["bracket"]["lo_den"] == 34);
    CHECK(r["bracket"]["hi_num"] == 34);
    CHECK(r["bracket"]["hi_den"] == 55);
    const double lo = 21.0 / 34.0, hi = 34.0 / 55.0;
    CHECK(r["value"].get<double>() == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-15));
    // the float delta lies inside the step of 55/89 (see the uncapped case
    // below), so that is where the orbit estimate converges
    CHECK(std::fabs(r["orbit_estimate"]["value"].get<double>() - 55.0 / 89.0) <= 2e-5);
    CHECK(r["search_probes"].get<int>() > 0);
}

TEST_CASE("rho: uncapped search resolves the plateau containing the float delta") {
    const json j = run_json(std::string("rho --lambda 0.95 --mu 0.9 --delta ") +
                            kGoldenDelta);
    CHECK(j["result"]["exact"] == true);
    CHECK(j["result"]["rotation"]["p"] == 55);
    CHECK(j["result"]["rotation"]["q"] == 89);
    CHECK(j["result"]["boundary"] == "interior");
}

TEST_CASE("exit codes: invalid parameters, series failure, bad usage") {
    const RunResult bad_delta = run_cli("rho --lambda 0.5 --mu 0.5 --delta 0.4");
    CHECK(bad_delta.status == 2);
    CHECK(bad_delta.out.find("invalid parameters") != std::string::npos);
    CHECK(bad_delta.out.find("delta") != std::string::npos);

    CHECK(run_cli("rho --lambda 0.5 --mu 0.5").status == 2);     // missing --delta
    CHECK(run_cli("rho --lambda 0.5 --mu 0.5 --delta 0.75 --bogus 1").status == 2);
    CHECK(run_cli("nonsense").status == 2);

    const RunResult both = run_cli(
        "delta --lambda 0.5 --mu 0.5 --rho-real 0.3 --rho-rational 1/3");
    CHECK(both.status == 2);

    const RunResult capped = run_cli(
        "delta --lambda 0.95 --mu 0.9 --rho-real sqrt5m1over2 --max-terms 3");
    CHECK(capped.status == 3);
    CHECK(capped.out.find("computation failed") != std::string::npos);
}

TEST_CASE("delta: plateau endpoints for a rational rotation number") {
    const json j = run_json("delta --lambda 0.5 --mu 0.5 --rho-rational 1/2");
    const json& r = j["result"];
    CHECK(r["rotation"]["p"] == 1);
    CHECK(r["rotation"]["q"] == 2);
    CHECK(r["delta_left"].get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(r["delta_right"].get<double>() == 0.9);
    CHECK(r["delta"] == r["delta_right"]);

    const json l = run_json("delta --lambda 0.5 --mu 0.5 --rho-rational 1/2 --side left");
    CHECK(l["result"]["delta"] == l["result"]["delta_left"]);
}

TEST_CASE("delta: staircase value at the golden rotation number by name") {
    const json j = run_json("delta --lambda 0.95 --mu 0.9 --rho-real sqrt5m1over2");
    CHECK(std::fabs(j["result"]["delta"].get<double>() - 0.66172856241938693) <= 1e-12);
    CHECK(j["diagnostics"]["terms"].get<int>() > 100);

    // --side is meaningless off the rationals
    CHECK(run_cli("delta --lambda 0.95 --mu 0.9 --rho-real 0.61 --side left").status == 2);
}

TEST_CASE("phi: values, left limits and the conjugacy residual") {
    const json j = run_json("phi --lambda 0.5 --mu 0.5 --delta 0.75 --y 0");
    CHECK(j["result"]["phi"].get<double>() ==
          doctest::Approx(1.0 / 14.0).epsilon(1e-13));
    CHECK(j["result"]["residual"].get<double>() <= 1e-12);

    const json l = run_json("phi --lambda 0.5 --mu 0.5 --delta 0.75 --y 0 --side left");
    CHECK(l["result"]["phi"].get<double>() ==
          doctest::Approx(-3.0 / 14.0).epsilon(1e-13));

    const json g = run_json(std::string("phi --lambda 0.95 --mu 0.9 --delta ") +
                            kGoldenDelta + " --y 0.37 --max-den 80");
    CHECK(g["result"]["residual"].get<double>() <= 1e-8);

    const json hp = run_json(std::string("phi --lambda 0.95 --mu 0.9 --delta ") +
                             kGoldenDelta + " --y 0.37 --max-den 80 --precision 256");
    CHECK(hp["result"]["phi"].get<double>() ==
          doctest::Approx(g["result"]["phi"].get<double>()).epsilon(1e-9));
}

TEST_CASE("cycle: both one-sided cycles with the right rejections") {
    const json j = run_json("cycle --lambda 0.5 --mu 0.5 --delta 0.75");
    CHECK(j["result"]["rotation"]["q"] == 2);
    REQUIRE(j["result"]["points"].size() == 2);
    CHECK(std::fabs(j["result"]["points"][0].get<double>() - 1.0 / 14.0) <= 1e-12);
    CHECK(std::fabs(j["result"]["points"][1].get<double>() - 11.0 / 14.0) <= 1e-12);

    const json fm = run_json("cycle --lambda 0.5 --mu 0.5 --delta 0.9 --side left");
    REQUIRE(fm["result"]["points"].size() == 2);
    CHECK(std::fabs(fm["result"]["points"][0].get<double>() - 0.2) <= 1e-12);
    CHECK(std::fabs(fm["result"]["points"][1].get<double>() - 1.0) <= 1e-12);

    // at the right endpoint the right-continuous map has no cycle
    CHECK(run_cli("cycle --lambda 0.5 --mu 0.5 --delta 0.9").status == 2);
    // and --rho-real makes no sense for a cycle query
    CHECK(run_cli("cycle --lambda 0.5 --mu 0.5 --delta 0.75 --rho-real 0.5").status == 2);
}

TEST_CASE("images: arc decomposition with exact dyadic measures") {
    const json j = run_json("images --lambda 0.5 --mu 0.5 --delta 0.75 --n 4");
    CHECK(j["result"]["n"] == 4);
    CHECK(j["result"]["count"] == 2);
    CHECK(j["result"]["measure"] == 0.015625);
    CHECK(j["result"]["intervals"][0]["a"] == 0.0703125);
    CHECK(j["result"]["intervals"][0]["b"] == 0.078125);

    const json csv_check = run_json("images --lambda 0.5 --mu 0.5 --delta 0.75 --n 2");
    CHECK(csv_check["result"]["measure"] == 0.125);
}

TEST_CASE("gaps: CSV rows indexed 1..depth with the exact first gap") {
    const RunResult r = run_cli(std::string("gaps --lambda 0.95 --mu 0.9 --delta ") +
                                kGoldenDelta +
                                " --rho-real sqrt5m1over2 --depth 8 --format csv");
    REQUIRE(r.status == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 9);
    CHECK(lines[0] == "l,xi_left,xi_right");
    const double delta = 0.66172856241938693;
    long long prev = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = fields_of(lines[i]);
        REQUIRE(f.size() == 3);
        const long long l = std::stoll(f[0]);
        CHECK(l == prev + 1);
        prev = l;
        CHECK(std::stod(f[1]) < std::stod(f[2]));
    }
    const auto first = fields_of(lines[1]);
    CHECK(std::stod(first[1]) == doctest::Approx(0.9 * (0.95 + delta - 1.0)).epsilon(1e-15));
    CHECK(std::stod(first[2]) == delta);

    // a rational rotation number has no Cantor gap ladder
    CHECK(run_cli("gaps --lambda 0.5 --mu 0.5 --delta 0.75 --rho-rational 1/2").status == 2);
    // without --rho-real the search finds the plateau of the float delta and says so
    const RunResult rat = run_cli(std::string("gaps --lambda 0.95 --mu 0.9 --delta ") +
                                  kGoldenDelta + " --depth 5");
    CHECK(rat.status == 2);
    CHECK(rat.out.find("55/89") != std::string::npos);
}

TEST_CASE("orbit: CSV itinerary with a blank bit on the final row") {
    const RunResult r = run_cli(
        "orbit --lambda 0.5 --mu 0.5 --delta 0.75 --x0 0 --steps 6 --format csv");
    REQUIRE(r.status == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 8);
    CHECK(lines[0] == "k,x,bit");
    // x is the lift orbit: the integer part counts accumulated second-branch
    // visits, the fractional part is the circle point (all dyadic, so exact)
    const double expect_x[] = {0.0, 0.75, 1.0625, 1.78125, 2.0703125, 2.78515625,
                               3.0712890625};
    for (int k = 0; k <= 6; ++k) {
        const auto f = fields_of(lines[static_cast<std::size_t>(k) + 1]);
        REQUIRE(f.size() == 3);
        CHECK(std::stoll(f[0]) == k);
        CHECK(std::stod(f[1]) == expect_x[k]);
        if (k < 6)
            CHECK((f[2] == "0" || f[2] == "1"));
        else
            CHECK(f[2].empty());
    }

    const json j = run_json("orbit --lambda 0.5 --mu 0.5 --delta 0.75 --x0 0 --steps 6");
    CHECK(j["result"]["branch2_count"] == 3);
    CHECK(j["result"]["rho_estimate"] == 0.5);
}

TEST_CASE("plot-delta: monotone staircase samples, concurrent run identical") {
    const std::string args = "plot-delta --lambda 0.5 --mu 0.5 --samples 16 --format csv";
    const RunResult r = run_cli(args);
    REQUIRE(r.status == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 17);
    CHECK(lines[0] == "rho,delta");
    double prev_rho = 0.0, prev_delta = 0.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = fields_of(lines[i]);
        REQUIRE(f.size() == 2);
        const double rho = std::stod(f[0]);
        const double delta = std::stod(f[1]);
        CHECK(rho > prev_rho);
        CHECK(delta >= prev_delta);
        CHECK(delta > 0.5);
        CHECK(delta < 1.0);
        prev_rho = rho;
        prev_delta = delta;
    }

    const RunResult sweep = run_cli(args + " --sweep");
    REQUIRE(sweep.status == 0);
    CHECK(sweep.out == r.out);

    CHECK(run_cli("plot-delta --lambda 0.5 --mu 0.5 --samples 1 --format csv").status == 0);
}

TEST_CASE("plot-phi: nondecreasing conjugation samples from phi(0) ~ 0") {
    const RunResult r = run_cli(
        "plot-phi --lambda 0.95 --mu 0.9 --rho-real sqrt5m1over2 --samples 8 --format csv");
    REQUIRE(r.status == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 9);
    CHECK(lines[0] == "y,phi");
    double prev_phi = -1.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = fields_of(lines[i]);
        REQUIRE(f.size() == 2);
        const double y = std::stod(f[0]);
        const double phi = std::stod(f[1]);
        CHECK(y == doctest::Approx((i - 1) / 8.0).epsilon(1e-15));
        CHECK(phi >= prev_phi);
        prev_phi = phi;
    }
    const auto first = fields_of(lines[1]);
    CHECK(std::fabs(std::stod(first[1])) <= 1e-9);
}
