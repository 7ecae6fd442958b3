#pragma once

#include <optional>
#include <string>
#include <vector>

#include "autocat/grid.hpp"
#include "autocat/model.hpp"

namespace autocat::solvers {

using grid::GridFunction;
using grid::Mesh;
using model::ProblemParams;

struct SolverConfig {
    double tol = 1e-10;
    int max_iter = 200;
    double eps_reg = 1e-12;
    double damping = 1.0;

    void validate() const;
};

enum class Method { monotone, newton, minimize, mountain_pass };
std::string to_string(Method m);

struct SolveReport {
    bool converged = false;
    int iterations = 0;
    double residual_norm = 0.0;
    GridFunction solution;
    Method method = Method::newton;
    double energy_value = 0.0;
    bool trivial = false;
    std::string message;
    std::vector<std::string> warnings;
    /// Monotone iteration only: the limit reached from the supersolution.
    std::optional<GridFunction> upper_limit;
};

/// Snaps |u| < eps_reg (and negative values) to zero, then refreshes the
/// residual, energy and trivial flag. converged is re-evaluated against tol.
void finalize_report(SolveReport& rep, const ProblemParams& p, const Mesh& mesh, const SolverConfig& cfg);

/// True when the report is a converged state with sup-norm above `floor`.
bool is_nontrivial(const SolveReport& rep, double floor = 1e-7);

// sub- and supersolutions ------------------------------------------------------

/// Constant M >= every solution with M^m - M^{m+1} - λM^n <= 0, rounded up 10%.
double build_supersolution(const ProblemParams& p);

struct Subsolution {
    GridFunction u;
    bool valid = false;
    double c = 0.0;
    int halvings = 0;
};

/// c φ₁ together with its validity; halves c until valid when `search` is set.
Subsolution build_subsolution(const ProblemParams& p, const grid::EigenPair& eig, double c,
                              bool search = true, int max_halvings = 60);

SolveReport monotone_iteration(const ProblemParams& p, const Mesh& mesh, const GridFunction& sub,
                               const GridFunction& super, const SolverConfig& cfg = {});

SolveReport newton_solve(const ProblemParams& p, const Mesh& mesh, const GridFunction& u0,
                         const SolverConfig& cfg = {});

SolveReport global_minimize(const ProblemParams& p, const Mesh& mesh, const GridFunction& u0,
                            const SolverConfig& cfg = {});

struct MountainPassOptions {
    int nodes = 41;
    /// Path fraction of the first interior node; interior fractions are geometric.
    double first_fraction = 1e-8;
    int deform_iter = 200;
    int climb_iter = 60000;
    double climb_step = 0.05;
    /// Newton polish is attempted every this many climbing steps.
    int polish_every = 500;
};

SolveReport mountain_pass(const ProblemParams& p, const Mesh& mesh, const GridFunction& u_end,
                          const SolverConfig& cfg = {}, const MountainPassOptions& opt = {});

// radial shooting ----------------------------------------------------------------

struct OdeConfig {
    double rtol = 1e-12;
    double atol = 1e-22;
    double r_max = 50.0;
    double max_step = 1e-3;
    double event_tol = 1e-12;
    long max_steps = 5000000;
};

struct ProfileSample {
    double r, u, du;
};

struct DenseSegment {
    double r0 = 0.0, h = 0.0;
    double c[5][2] = {};
};

struct ShootResult {
    double a = 0.0;
    std::optional<double> R;
    double slope_at_zero = 0.0;
    /// Radius where u' returned to zero with u > 0, when the orbit turned back.
    std::optional<double> turning_radius;
    std::vector<ProfileSample> profile;
    std::vector<DenseSegment> segments;
    long steps = 0;

    /// Continuous extension of (u, u') at r inside the integrated range.
    std::pair<double, double> evaluate(double r) const;
};

ShootResult radial_shoot(const ProblemParams& p, double a, const OdeConfig& cfg = {});

struct FlatProfileResult {
    bool found = false;
    ShootResult profile;
    int iterations = 0;
    std::string message;
};

/// Bisection in a on the shooting discriminant until |u'(R)| <= slope_tol.
FlatProfileResult find_flat_profile(const ProblemParams& p, double a_lo, double a_hi,
                                    const OdeConfig& cfg = {}, double slope_tol = 1e-8);

/// Scans `samples` log-spaced heights and returns the first bracket where the
/// discriminant changes sign.
std::optional<std::pair<double, double>> flat_profile_bracket(const ProblemParams& p, double a_min,
                                                              double a_max, int samples = 40,
                                                              const OdeConfig& cfg = {});

/// Flat profile resampled on the mesh of its support (interval (-R,R) or ball(N,R)).
struct ResampledProfile {
    Mesh mesh;
    GridFunction u;
};
ResampledProfile resample_on_support(const ShootResult& shot, int dim, int cells);

// functional constants -------------------------------------------------------------

struct ApResult {
    double value = 0.0;          // Euler-Lagrange route
    double ascent_value = 0.0;   // direct ascent on the quotient
    double relative_gap = 0.0;
    bool converged = false;
    std::string message;
};

/// A = (1/q) sup ∫|v|^q / (∫|∇v|²)^{q/2}.
ApResult compute_Ap(const Mesh& mesh, double q, const SolverConfig& cfg = {});

}  // namespace autocat::solvers
