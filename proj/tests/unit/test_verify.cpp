#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>

#include "autocat/io.hpp"
#include "autocat/verify.hpp"

using namespace autocat;
using namespace autocat::verify;
using grid::Domain;

TEST_SUITE("verify") {

TEST_CASE("scenario ids are well formed and unique") {
    CHECK(well_formed_id("caseII-equal-exponents/no-solution-from-one"));
    CHECK_FALSE(well_formed_id("caseII-equal-exponents"));
    CHECK_FALSE(well_formed_id("caseII/No-Solution"));
    CHECK_FALSE(well_formed_id("a/b/c"));
    std::set<std::string> seen;
    for (const Scenario& s : all_scenarios()) {
        CHECK(well_formed_id(s.id));
        CHECK(seen.insert(s.id).second);
        CHECK(s.id.substr(0, s.id.find('/')) == s.citation);
    }
}

TEST_CASE("every result belongs to exactly one suite") {
    std::map<std::string, std::set<model::Case>> suites;
    for (model::Case c : {model::Case::C1, model::Case::C2, model::Case::C3, model::Case::C4, model::Case::C5,
                          model::Case::C6, model::Case::C7})
        for (const Scenario& s : scenario_suite(c)) {
            CHECK(s.suite == c);
            suites[s.citation].insert(c);
        }
    for (const std::string& id : model::all_result_ids()) {
        CAPTURE(id);
        CHECK(suites[id].size() == 1);
    }
    CHECK(suites.size() == model::all_result_ids().size());
}

TEST_CASE("positivity classification") {
    const Mesh mesh = grid::build_mesh(Domain::interval(0.0, 1.0), 100);
    GridFunction sine(mesh.size()), dead(mesh.size()), flat(mesh.size());
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        const double x = mesh.nodes[i];
        sine[i] = std::sin(M_PI * x);
        dead[i] = std::max(0.0, std::abs(x - 0.5) - 0.2);
        flat[i] = std::max(0.0, 0.3 - std::abs(x - 0.5));
    }
    CHECK(positivity_profile(mesh, sine) == PositivityClass::strictly_positive);
    CHECK(positivity_profile(mesh, dead) == PositivityClass::interior_dead_core);
    CHECK(positivity_profile(mesh, flat) == PositivityClass::boundary_flat);
    CHECK(positivity_profile(mesh, GridFunction(mesh.size())) == PositivityClass::zero);
    CHECK(default_delta(sine, 1e-12) == doctest::Approx(2e-11));
}

TEST_CASE("nonexistence probes use many starts and three methods") {
    const Mesh mesh = grid::build_mesh(Domain::interval(0.0, 1.0), 100);
    const ProbeResult r = probe_nonexistence(ProblemParams(0.5, 0.5, 1.2), mesh, 20);
    CHECK(r.nontrivial == 0);
    CHECK(r.attempts >= 60);
    CHECK(std::set<std::string>(r.methods.begin(), r.methods.end()).size() >= 3);
    const ProbeResult s = probe_nonexistence(ProblemParams(0.5, 0.5, 0.5), mesh, 20);
    CHECK(s.nontrivial > 0);
    CHECK(s.witness.has_value());
}

TEST_CASE("multi-start spread in a uniqueness regime") {
    const Mesh mesh = grid::build_mesh(Domain::interval(0.0, 1.0), 100);
    const MultiStart ms = multi_start(ProblemParams(0.5, 0.75, -1.0), mesh, 8);
    CHECK(ms.solutions.size() >= 2);
    CHECK(ms.max_spread <= 1e-6);
}

TEST_CASE("scenario runs persist reports and are deterministic") {
    const auto dir = std::filesystem::temp_directory_path() / "autocat_unit_verify";
    std::filesystem::remove_all(dir);
    const std::string id = "caseII-equal-exponents/no-solution-from-one";
    const VerifyReport a = run_scenario(id, dir / "a");
    const VerifyReport b = run_scenario(id, dir / "b");
    CHECK(a.passed);
    CHECK_FALSE(a.infrastructure_error);
    CHECK(a.suite == "C2");
    REQUIRE(a.measured.size() == b.measured.size());
    for (std::size_t i = 0; i < a.measured.size(); ++i) {
        CHECK(a.measured[i].name == b.measured[i].name);
        CHECK(a.measured[i].value == b.measured[i].value);
    }
    CHECK(a.evidence == b.evidence);
    const auto report = dir / "a" / "C2" / "caseII-equal-exponents_no-solution-from-one" / "report.json";
    REQUIRE(std::filesystem::exists(report));
    const std::string json = io::read_text(report);
    for (const char* key : {"\"scenario\"", "\"citation\"", "\"passed\"", "\"measured\"", "\"relation\""})
        CHECK(json.find(key) != std::string::npos);
    for (const std::string& f : a.evidence)
        CHECK(std::filesystem::exists(report.parent_path() / f));
}

TEST_CASE("malformed and unknown ids are infrastructure errors") {
    const auto dir = std::filesystem::temp_directory_path() / "autocat_unit_verify_bad";
    const VerifyReport bad = run_scenario("Not An Id", dir);
    CHECK(bad.infrastructure_error);
    CHECK_FALSE(bad.passed);
    const VerifyReport unknown = run_scenario("caseII-equal-exponents/does-not-exist", dir);
    CHECK(unknown.infrastructure_error);
}

TEST_CASE("summary tables") {
    SuiteSummary s;
    VerifyReport r;
    r.scenario_id = "x-y/z";
    r.citation = "x-y";
    r.suite = "C1";
    r.passed = true;
    r.measured.push_back({"value", 1.0 / 3.0, 1.0, "<="});
    s.reports.push_back(r);
    CHECK(s.all_passed());
    const auto dir = std::filesystem::temp_directory_path() / "autocat_unit_summary";
    write_summary(s, dir, "summary");
    CHECK(io::read_text(dir / "summary.md").find("x-y/z") != std::string::npos);
    CHECK(io::read_text(dir / "summary.csv").find("x-y/z") != std::string::npos);
    const std::string json = report_json(r);
    const auto at = json.find("\"value\": ") + 9;
    CHECK(std::strtod(json.c_str() + at, nullptr) == 1.0 / 3.0);
    s.reports.back().passed = false;
    CHECK_FALSE(s.all_passed());
}

}  // TEST_SUITE
