#include <doctest.h>

#include <cfloat>
#include <cstdlib>
#include <filesystem>
#include <random>

#include "autocat/io.hpp"
#include "autocat/run_config.hpp"

using namespace autocat;
using namespace autocat::config;

namespace {

const char* kText = R"(# Case I branch
[problem]
m = 0.5
n = 0.25
lambda = 0.02
lambda_min = -0.5
lambda_max = 0.6

[domain]
kind = interval
a = 0
b = 2
cells = 150

[solver]
method = minimize
tol = 1e-9
ds_max = 0.05

[output]
directory = out
stem = caseI
)";

}  // namespace

TEST_SUITE("config") {

TEST_CASE("numbers round-trip at 17 significant digits") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int k = 0; k < 1000; ++k) {
        const double x = u(rng) * std::pow(10.0, static_cast<int>(u(rng)) % 300);
        CHECK(io::parse_double(io::num(x)) == x);
    }
    CHECK(io::num(0.1) == "0.10000000000000001");
    CHECK(io::parse_double(io::num(4.9e-324)) == 4.9e-324);
    CHECK(io::parse_double(io::num(DBL_MAX)) == DBL_MAX);
    CHECK(io::parse_double(" 2.5 ") == 2.5);
    CHECK_THROWS(io::parse_double("2.5x"));
    CHECK_THROWS(io::parse_double(""));
}

TEST_CASE("output directory override") {
    const std::filesystem::path fallback = "fallback";
    unsetenv(io::kOutputDirEnv);
    CHECK(io::output_directory(fallback) == fallback);
    setenv(io::kOutputDirEnv, "/tmp/override", 1);
    CHECK(io::output_directory(fallback) == std::filesystem::path("/tmp/override"));
    RunConfig c;
    CHECK(c.output_directory() == std::filesystem::path("/tmp/override"));
    unsetenv(io::kOutputDirEnv);
    CHECK(c.output_directory() == std::filesystem::path("autocat-out"));
}

TEST_CASE("text blocks parse into the run configuration") {
    const RunConfig c = parse(kText);
    CHECK(c.problem.m == 0.5);
    CHECK(c.problem.lambda == 0.02);
    CHECK(*c.problem.lambda_min == -0.5);
    CHECK(c.domain.b == 2.0);
    CHECK(c.domain.cells == 150);
    CHECK(c.solver.method == solvers::Method::minimize);
    CHECK(c.solver.solver.tol == 1e-9);
    CHECK(c.output.stem == "caseI");
    CHECK(c.mesh().size() == 149);
    CHECK(c.branch_config().ds_max == 0.05);
    CHECK(c.branch_config().lambda_max == 0.6);
}

TEST_CASE("text and JSON forms are interchangeable") {
    const RunConfig c = parse(kText);
    const RunConfig t = parse(c.to_text());
    const RunConfig j = parse(c.to_json());
    CHECK(t.to_text() == c.to_text());
    CHECK(j.to_text() == c.to_text());
    CHECK(parse_json(c.to_json()).to_json() == c.to_json());
    RunConfig v;
    v.set("problem", "lambda_values", "0, 0.5, 1e-3");
    CHECK(v.problem.lambda_values == std::vector<double>{0.0, 0.5, 1e-3});
    CHECK(parse(v.to_text()).problem.lambda_values == v.problem.lambda_values);
    CHECK(parse(v.to_json()).problem.lambda_values == v.problem.lambda_values);
}

TEST_CASE("unknown keys, blocks and malformed lines are rejected") {
    CHECK_THROWS_AS(parse("[problem]\nmu = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[physics]\nm = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("m = 0.5\n"), ConfigError);
    CHECK_THROWS_AS(parse("[problem]\nm 0.5\n"), ConfigError);
    CHECK_THROWS_AS(parse("[problem]\nm = 0.5\nm = 0.6\n"), ConfigError);
    CHECK_THROWS_AS(parse("[problem]\nm = half\n"), ConfigError);
    CHECK_THROWS_AS(parse(R"({"problem": {"mu": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse(R"({"problem": {"m": 0.5}, "extra": {}})"), ConfigError);
    CHECK_THROWS_AS(parse("{not json"), ConfigError);
    try {
        parse("[problem]\nm = 0.5\n\nbogus = 1\n");
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("4") != std::string::npos);
    }
}

TEST_CASE("preconditions are validated") {
    auto bad = [](const std::string& block, const std::string& key, const std::string& value) {
        RunConfig c;
        c.set(block, key, value);
        return c;
    };
    CHECK_THROWS_AS(bad("problem", "m", "1.5").validate(), ConfigError);
    CHECK_THROWS_AS(bad("problem", "n", "0").validate(), ConfigError);
    CHECK_THROWS_AS(bad("domain", "cells", "1").validate(), ConfigError);
    CHECK_THROWS_AS(bad("solver", "tol", "2").validate(), ConfigError);
    CHECK_THROWS_AS(bad("problem", "dim", "3").validate(), ConfigError);
    CHECK_THROWS_AS(bad("output", "stem", "a/b").validate(), ConfigError);
    CHECK_THROWS_AS(bad("solver", "method", "simplex"), ConfigError);
    CHECK_THROWS_AS(bad("domain", "kind", "torus"), ConfigError);
    RunConfig lim;
    lim.set("problem", "lambda_min", "1");
    lim.set("problem", "lambda_max", "0");
    CHECK_THROWS_AS(lim.validate(), ConfigError);
    RunConfig ball;
    ball.set("domain", "kind", "ball");
    ball.set("problem", "dim", "3");
    ball.set("domain", "radius", "2");
    CHECK_NOTHROW(ball.validate());
    CHECK(ball.domain_spec().kind == grid::DomainKind::radial_ball);
    CHECK(ball.params().dim == 3);
}

TEST_CASE("config files load from disk") {
    const auto dir = std::filesystem::temp_directory_path() / "autocat_unit_config";
    std::filesystem::create_directories(dir);
    io::write_text(dir / "run.conf", kText);
    io::write_text(dir / "run.json", parse(kText).to_json());
    CHECK(load(dir / "run.conf").to_text() == load(dir / "run.json").to_text());
    CHECK_THROWS(load(dir / "missing.conf"));
}

}  // TEST_SUITE
