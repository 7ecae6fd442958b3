#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "autocat/solvers.hpp"

namespace autocat::solvers {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// Smallest eigenvalue of W^{-1/2} J W^{-1/2}.
double lowest_mode(const linalg::Tridiagonal& J, const Mesh& mesh) {
    std::vector<double> d(J.size()), o(J.size() > 0 ? J.size() - 1 : 0);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = J.diag[i] / mesh.weights[i];
    for (std::size_t i = 0; i < o.size(); ++i)
        o[i] = J.upper[i] / std::sqrt(mesh.weights[i] * mesh.weights[i + 1]);
    return linalg::smallest_eigenvalue(d, o, 1e-10);
}

}  // namespace

SolveReport global_minimize(const ProblemParams& p, const Mesh& mesh, const GridFunction& u0,
                            const SolverConfig& cfg) {
    cfg.validate();
    if (u0.size() != mesh.size()) throw std::invalid_argument("initial guess does not match mesh");
    SolveReport rep;
    rep.method = Method::minimize;
    if (!model::energy_coercive(p)) rep.warnings.push_back("energy is not known to be coercive for these parameters");

    GridFunction u = u0.positive_part();
    double E = grid::energy(p, mesh, u);
    const std::size_t n = u.size();
    int it = 0;
    int stalls = 0;
    for (; it < cfg.max_iter; ++it) {
        if (grid::residual_norm(p, mesh, u) <= cfg.tol) break;
        GridFunction g = grid::energy_gradient(p, mesh, u);
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = -g[i];

        // shifted Newton: J + μW positive definite gives a descent direction
        linalg::Tridiagonal J = grid::jacobian(p, mesh, u, cfg.eps_reg);
        const double lmin = lowest_mode(J, mesh);
        std::optional<std::vector<double>> d;
        if (std::isfinite(lmin)) {
            const double mu = lmin > 0.0 ? 0.0 : -1.1 * lmin + 1e-8 * (1.0 + std::abs(lmin));
            linalg::Tridiagonal Js = J;
            for (std::size_t i = 0; i < n; ++i) Js.diag[i] += mu * mesh.weights[i];
            d = linalg::solve(Js, rhs);
        }
        if (!d || !(dot(*d, g.values) < 0.0)) d = linalg::solve(mesh.stiffness(), rhs);
        if (!d) {
            rep.message = "no descent direction";
            break;
        }
        const double slope = dot(*d, g.values);
        double t = 1.0;
        bool accepted = false;
        while (t >= 1e-12) {
            GridFunction trial(n);
            for (std::size_t i = 0; i < n; ++i) trial[i] = std::max(u[i] + t * (*d)[i], 0.0);
            if (trial.is_zero() && !u.is_zero()) {
                t *= 0.5;
                continue;
            }
            const double Et = grid::energy(p, mesh, trial);
            if (std::isfinite(Et) && Et <= E + 1e-4 * t * slope) {
                accepted = Et < E;
                stalls = accepted ? 0 : stalls + 1;
                u = std::move(trial);
                E = Et;
                break;
            }
            t *= 0.5;
        }
        if (!accepted && ++stalls > 3) {
            rep.message = "energy descent stalled";
            break;
        }
    }
    rep.iterations = it;
    rep.solution = u;
    finalize_report(rep, p, mesh, cfg);
    if (!rep.converged) {
        SolveReport polish = newton_solve(p, mesh, u, cfg);
        if (polish.converged && polish.energy_value <= E + 1e-10 * (1.0 + std::abs(E))) {
            rep.solution = polish.solution;
            rep.iterations += polish.iterations;
            finalize_report(rep, p, mesh, cfg);
        }
    }
    if (rep.converged) rep.message = rep.trivial ? "converged to the trivial solution" : "converged";
    else if (rep.message.empty()) rep.message = "iteration cap reached";
    return rep;
}

}  // namespace autocat::solvers
