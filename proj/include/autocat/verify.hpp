#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "autocat/continuation.hpp"
#include "autocat/grid.hpp"
#include "autocat/model.hpp"
#include "autocat/solvers.hpp"

namespace autocat::verify {

using grid::GridFunction;
using grid::Mesh;
using model::ProblemParams;

enum class PositivityClass { strictly_positive, boundary_flat, interior_dead_core, zero };
std::string to_string(PositivityClass c);

/// Default dead-core threshold 10·eps_reg·(1 + ‖u‖_∞).
double default_delta(const GridFunction& u, double eps_reg = 1e-12);

/// Classifies a converged state by its interior minimum and boundary slopes.
PositivityClass positivity_profile(const Mesh& mesh, const GridFunction& u, std::optional<double> delta = {});

/// A measured value and, when asserted, the limit it is compared against.
struct Measurement {
    std::string name;
    double value = 0.0;
    std::optional<double> limit;
    std::string relation = "<=";  // value <relation> limit: "<=", ">=", "<", ">" or "=="
};

/// What a scenario body hands back to the harness.
struct Outcome {
    bool passed = false;
    std::vector<Measurement> measured;
    std::vector<std::string> notes;
    std::vector<std::string> evidence;  // file names relative to the scenario directory
};

/// Shared services for scenario bodies.
class Context {
public:
    explicit Context(std::filesystem::path dir) : dir_(std::move(dir)) {}
    const std::filesystem::path& dir() const { return dir_; }
    /// Writes a solution CSV into the scenario directory and returns its name.
    std::string save(const std::string& name, const Mesh& mesh, const GridFunction& u);
    std::string save_branch(const std::string& stem, const continuation::Branch& br, const Mesh& mesh);

private:
    std::filesystem::path dir_;
};

struct Scenario {
    std::string id;        // "<result-id>/<claim>"
    std::string citation;  // result id
    model::Case suite = model::Case::C1;
    std::string description;
    std::function<Outcome(Context&)> body;
};

struct VerifyReport {
    std::string scenario_id;
    std::string citation;
    std::string suite;
    bool passed = false;
    bool infrastructure_error = false;
    std::string message;
    std::vector<Measurement> measured;
    std::vector<std::string> notes;
    std::vector<std::string> evidence;
    double runtime_seconds = 0.0;
};

/// Scenario ids are "<result-id>/<claim>" with lower-case words joined by '-'.
bool well_formed_id(const std::string& id);

std::vector<Scenario> scenario_suite(model::Case c);
std::vector<Scenario> all_scenarios();

/// Runs the body, persists a JSON report under dir/<suite>/<id>/.
VerifyReport run_scenario(const Scenario& s, const std::filesystem::path& dir);
/// Looks the id up in the registry; malformed or unknown ids give an
/// infrastructure error report.
VerifyReport run_scenario(const std::string& id, const std::filesystem::path& dir);

struct SuiteSummary {
    std::vector<VerifyReport> reports;
    bool all_passed() const;
};

/// Runs every scenario of a suite and writes summary.md / summary.csv.
SuiteSummary run_suite(model::Case c, const std::filesystem::path& dir);
void write_summary(const SuiteSummary& s, const std::filesystem::path& dir, const std::string& stem);
std::string report_json(const VerifyReport& r);

// probing helpers shared by scenarios, tests and the acceptance runner --------

struct ProbeResult {
    int attempts = 0;
    int nontrivial = 0;
    double largest_sup = 0.0;
    std::vector<std::string> methods;
    std::optional<GridFunction> witness;
};

/// Tries `starts` varied initial states with Newton, energy descent and a
/// third method (monotone iteration under a constant supersolution, else a
/// mountain pass from a scaled start). Nonexistence is only ever the absence
/// of a converged nontrivial state.
ProbeResult probe_nonexistence(const ProblemParams& p, const Mesh& mesh, int starts = 20,
                               const solvers::SolverConfig& cfg = {});

/// Converged nontrivial solutions from `starts` varied initial states, using
/// Newton then energy descent; returns the largest pairwise sup distance.
struct MultiStart {
    std::vector<GridFunction> solutions;
    double max_spread = 0.0;
};
MultiStart multi_start(const ProblemParams& p, const Mesh& mesh, int starts = 8, const solvers::SolverConfig& cfg = {});

}  // namespace autocat::verify
