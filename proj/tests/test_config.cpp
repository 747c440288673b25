#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "contagion/config.hpp"
#include "doctest.h"

using namespace contagion;
using config::parse_config;
using config::render;
using config::RunSpec;

namespace {

std::vector<std::string> lines(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string l;
    while (std::getline(ss, l))
        if (!l.empty()) out.push_back(l);
    return out;
}

std::vector<std::string> fields(const std::string& row) {
    std::vector<std::string> out;
    std::stringstream ss(row);
    std::string f;
    while (std::getline(ss, f, ',')) out.push_back(f);
    return out;
}

std::string what(const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

// Cheap resolution knobs shared by the command tests.
const char* kFast =
    "theta_nodes = 32\nr_nodes = 64\ntime_nodes = 32\nseries_tol = 1e-9\n"
    "paths = 10000\nsteps_per_year = 50\n";

}  // namespace

TEST_SUITE("config") {

TEST_CASE("empty text yields the standard defaults") {
    RunSpec s = parse_config("");
    CHECK(s == RunSpec{});
    CHECK(s.sigma1 == 0.2);
    CHECK(s.gamma1 == 0.03);
    CHECK(s.quality1 == 2.0);
    CHECK(s.rf == 0.05);
    CHECK(s.omega == 0.7);
    CHECK(s.recovery == 0.5);
    CHECK(s.maturity == 5.0);
    CHECK(s.face == 100.0);
    RunSpec b = parse_config("command = bond\n");
    b.command = config::Command::survival;
    CHECK(b == RunSpec{});
}

TEST_CASE("comments, aliases and the quality-to-v0 conversion") {
    RunSpec s = parse_config("# base case\nsigma = 0.25 # both firms\nR = 0.4\n");
    CHECK(s.sigma1 == 0.25);
    CHECK(s.sigma2 == 0.25);
    CHECK(s.recovery == 0.4);
    PairModel m = parse_config("").model();
    CHECK(m.firm1.v0 == doctest::Approx(2.0 * 100.0 * std::exp(-0.15)).epsilon(1e-15));
    CHECK(m.B1() == doctest::Approx(-std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("diagnostics name the key and line") {
    std::string e1 = what([] { parse_config("rho = 1.5\n"); });
    CHECK(e1.find("rho") != std::string::npos);
    CHECK(e1.find("[-0.99, 0.99]") != std::string::npos);

    std::string e2 = what([] { parse_config("sigma = 0.2\nfrobnicate = 1\n"); });
    CHECK(e2.find("frobnicate") != std::string::npos);
    CHECK(e2.find("line 2") != std::string::npos);

    std::string e3 = what([] { parse_config("rho = zero\n"); });
    CHECK(e3.find("rho") != std::string::npos);
    CHECK(e3.find("malformed") != std::string::npos);
}

TEST_CASE("sweep axis parsing") {
    RunSpec s = parse_config("command = sweep\nsweep = rho: 0,0.2,0.4,0.6,0.8\n");
    CHECK(s.sweep_key == "rho");
    CHECK(s.sweep_values == std::vector<double>{0.0, 0.2, 0.4, 0.6, 0.8});
    CHECK_THROWS_AS(parse_config("command = sweep\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("sweep = rho: 0,0.5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("command = sweep\nsweep = shoe: 1,2\n"),
                    std::invalid_argument);
}

TEST_CASE("render round trip") {
    RunSpec s = parse_config("");
    s.command = config::Command::sweep;
    s.target = config::Command::cds;
    s.sigma2 = 0.27;
    s.rho = -0.3;
    s.recovery = 0.35;
    s.flavor = cds::Flavor::second;
    s.numerics.grid_kind = GridKind::sparse;
    s.numerics.series_tol = 2.5e-11;
    s.mc.bridge = false;
    s.mc.seed = 987654321;
    s.sweep_key = "T";
    s.sweep_values = {1.0, 2.5, 5.0};
    s.out = "rows.csv";
    CHECK(parse_config(render(s)) == s);
    CHECK(parse_config(render(RunSpec{})) == RunSpec{});
}

TEST_CASE("survival and cds command schemas") {
    std::string csv = config::run(parse_config(std::string(kFast) + "command = survival\n"));
    auto ls = lines(csv);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "t,rho,P");
    auto fs = fields(ls[1]);
    REQUIRE(fs.size() == 3);
    double P = std::stod(fs[2]);
    CHECK(P > 0.0);
    CHECK(P < 1.0);

    std::string cds_csv = config::run(
        parse_config(std::string(kFast) + "command = cds\nrecovery = 1\n"));
    auto cl = lines(cds_csv);
    REQUIRE(cl.size() == 2);
    CHECK(cl[0] == "flavor,rho,T,R,spread_bp");
    CHECK(fields(cl[1])[0] == "first");
    CHECK(std::stod(fields(cl[1])[4]) == 0.0);
}

TEST_CASE("bond sweep over correlation declines and survives bad points") {
    std::string text = std::string(kFast) +
                       "command = sweep\ntarget = bond\nsweep = rho: 0,0.2,0.4,0.6,0.8\n";
    auto ls = lines(config::run(parse_config(text)));
    REQUIRE(ls.size() == 6);
    CHECK(ls[0] == "rho,T,omega,yield_bp_over_rf,yield");
    double prev = 1.0;
    for (std::size_t i = 1; i < ls.size(); ++i) {
        double y = std::stod(fields(ls[i])[4]);
        CHECK(y < prev);
        prev = y;
    }

    // negative rho is invalid for the contagion bond: the row is kept, marked failed
    std::string bad = std::string(kFast) +
                      "command = sweep\ntarget = bond\nsweep = rho: 0.4,-0.4\n";
    auto bl = lines(config::run(parse_config(bad)));
    REQUIRE(bl.size() == 3);
    CHECK(fields(bl[1])[4] != "failed");
    CHECK(fields(bl[2])[4] == "failed");
}

TEST_CASE("validate command emits oracle comparisons with small z-scores") {
    std::string csv = config::run(
        parse_config(std::string(kFast) + "command = validate\nrho = 0.4\nseed = 42\n"));
    auto ls = lines(csv);
    REQUIRE(ls.size() == 7);
    CHECK(ls[0] == "quantity,analytic,mc_mean,mc_se,z_score");
    for (std::size_t i = 1; i < ls.size(); ++i) {
        auto fs = fields(ls[i]);
        REQUIRE(fs.size() == 5);
        CAPTURE(fs[0]);
        CHECK(std::abs(std::stod(fs[4])) <= 3.0);
    }
}

}  // TEST_SUITE
