#pragma once

#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "autocat/grid.hpp"
#include "autocat/model.hpp"
#include "autocat/solvers.hpp"

namespace autocat::continuation {

using grid::GridFunction;
using grid::Mesh;
using model::ProblemParams;

struct BranchConfig {
    solvers::SolverConfig solver;
    double ds = 0.02;
    double ds_min = 1e-8;
    double ds_max = 0.2;
    double lambda_min = -std::numeric_limits<double>::infinity();
    double lambda_max = std::numeric_limits<double>::infinity();
    /// Sign of the initial λ increment.
    int direction = +1;
    int max_points = 2000;
    int max_corrector = 12;
    /// Nodes at or below this value count as off-support in the stability indicator.
    double support_floor = 1e-8;

    void validate() const;
};

enum class Termination { left_bound, right_bound, step_failure, trivial_collapse, point_cap, completed };
std::string to_string(Termination t);

struct Stability {
    std::optional<double> mu1;
    bool truncated = false;
};

/// Smallest eigenvalue of -Δ_h - f'(u) with f' := 0 where u <= floor.
Stability stability_indicator(const ProblemParams& p, const Mesh& mesh, const GridFunction& u,
                              double floor = 1e-8);

struct BranchPoint {
    double lambda = 0.0;
    double sup_norm = 0.0;
    double l2_norm = 0.0;
    double energy = 0.0;
    double residual = 0.0;
    double arclength = 0.0;
    Stability stability;
    GridFunction solution;
};

struct Fold {
    double lambda_star = 0.0;
    std::size_t index_before = 0;
    std::size_t index_after = 0;
};

struct Gap {
    double lambda = 0.0;
    std::string reason;
};

struct Branch {
    std::vector<BranchPoint> points;
    std::vector<Fold> folds;
    std::vector<Gap> gaps;
    Termination termination = Termination::completed;
    std::string message;
};

BranchPoint make_point(const ProblemParams& p, const Mesh& mesh, const GridFunction& u, double floor);

/// Pseudo-arclength continuation in λ from a converged solution.
Branch continue_branch(const ProblemParams& p0, const Mesh& mesh, const GridFunction& u0,
                       const BranchConfig& cfg = {});

/// Turning points from sign changes of successive λ increments, refined by a
/// quadratic fit of λ against arclength.
std::vector<Fold> detect_fold(const Branch& branch);

/// Largest λ among nontrivial branch points with negative energy.
std::optional<double> last_negative_energy_lambda(const Branch& branch, double floor = 1e-7);

enum class SweepStrategy { warm_start, fresh_start, warm_then_fresh };
std::string to_string(SweepStrategy s);
SweepStrategy parse_strategy(const std::string& s);

/// Natural-parameter continuation over ordered λ values; failures become gaps.
Branch sweep_lambda(const ProblemParams& p_template, const Mesh& mesh, const std::vector<double>& lambdas,
                    SweepStrategy strategy = SweepStrategy::warm_then_fresh,
                    const solvers::SolverConfig& cfg = {});

/// Positive starts used for fresh solves: sub/supersolution limits and scaled
/// eigenfunctions across several amplitudes.
std::vector<GridFunction> fresh_starts(const ProblemParams& p, const Mesh& mesh, int count);

/// Branch CSV (lambda, sup_norm, l2_norm, energy, stability_indicator,
/// truncated_flag, solution_file), optional per-point solution CSVs, and a
/// folds JSON sidecar. Returns the CSV path.
std::filesystem::path write_branch(const std::filesystem::path& dir, const std::string& stem, const Branch& branch,
                                   const Mesh& mesh, bool write_solutions = true);

}  // namespace autocat::continuation
