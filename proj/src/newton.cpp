#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "autocat/solvers.hpp"

namespace autocat::solvers {

void SolverConfig::validate() const {
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("tol must lie in (0,1)");
    if (max_iter <= 0) throw std::invalid_argument("max_iter must be positive");
    if (!(eps_reg > 0.0)) throw std::invalid_argument("eps_reg must be positive");
    if (!(damping > 0.0 && damping <= 1.0)) throw std::invalid_argument("damping must lie in (0,1]");
}

std::string to_string(Method m) {
    switch (m) {
        case Method::monotone: return "monotone";
        case Method::newton: return "newton";
        case Method::minimize: return "minimize";
        case Method::mountain_pass: return "mountain_pass";
    }
    return "?";
}

void finalize_report(SolveReport& rep, const ProblemParams& p, const Mesh& mesh, const SolverConfig& cfg) {
    for (double& v : rep.solution.values)
        if (v < 0.0) v = 0.0;
    GridFunction snapped = rep.solution;
    for (double& v : snapped.values)
        if (v < cfg.eps_reg) v = 0.0;
    const double r_raw = grid::residual_norm(p, mesh, rep.solution);
    const double r_snap = grid::residual_norm(p, mesh, snapped);
    // a compact-support tail below eps_reg is kept when snapping it would break convergence
    if (r_snap <= cfg.tol || !(r_raw <= cfg.tol)) rep.solution = std::move(snapped);
    rep.residual_norm = grid::residual_norm(p, mesh, rep.solution);
    rep.energy_value = grid::energy(p, mesh, rep.solution);
    rep.trivial = rep.solution.sup_norm() < cfg.eps_reg;
    rep.converged = std::isfinite(rep.residual_norm) && rep.residual_norm <= cfg.tol;
}

bool is_nontrivial(const SolveReport& rep, double floor) {
    return rep.converged && rep.solution.sup_norm() > floor;
}

namespace {

GridFunction lift(const GridFunction& v, double q) {
    GridFunction u(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) u[i] = q == 1.0 ? v[i] : std::pow(v[i], q);
    return u;
}

}  // namespace

SolveReport newton_solve(const ProblemParams& p, const Mesh& mesh, const GridFunction& u0,
                         const SolverConfig& cfg) {
    cfg.validate();
    if (u0.size() != mesh.size()) throw std::invalid_argument("initial guess does not match mesh");
    SolveReport rep;
    rep.method = Method::newton;
    // Newton runs on v with u = v^q so the reaction stays Lipschitz at dead nodes
    const double q = grid::lifting_exponent(p);
    const std::size_t n = mesh.size();
    GridFunction v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::pow(std::max(u0[i], 0.0), 1.0 / q);
    GridFunction u = lift(v, q);
    double rn = grid::residual_norm(p, mesh, u);
    std::vector<double> history{rn};
    int it = 0;
    for (; it < cfg.max_iter; ++it) {
        if (!std::isfinite(rn)) {
            rep.message = "non-finite residual";
            break;
        }
        if (rn <= cfg.tol) break;
        GridFunction g = grid::energy_gradient(p, mesh, u);
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = -g[i];
        linalg::Tridiagonal J = grid::lifted_jacobian(p, mesh, v, q);
        auto d = linalg::solve(J, rhs);
        if (!d) {
            // Levenberg-type retries with a growing mass shift
            double mu = 1e-8 * (std::abs(J.diag[0]) / mesh.weights[0] + 1.0);
            for (int k = 0; k < 8 && !d; ++k, mu *= 100.0) {
                linalg::Tridiagonal Js = J;
                for (std::size_t i = 0; i < n; ++i) Js.diag[i] += mu * mesh.weights[i];
                d = linalg::solve(Js, rhs);
            }
            if (!d) {
                rep.message = "singular linearization";
                break;
            }
        }
        double t = cfg.damping;
        bool accepted = false;
        while (t >= 1e-10) {
            GridFunction vt(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double x = v[i] + t * (*d)[i];
                vt[i] = x >= 0.0 ? x : 0.01 * v[i];
            }
            GridFunction ut = lift(vt, q);
            const double rt = grid::residual_norm(p, mesh, ut);
            if (std::isfinite(rt) && rt <= (1.0 - 1e-4 * t) * rn) {
                v = std::move(vt);
                u = std::move(ut);
                rn = rt;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            rep.message = "line search stalled";
            break;
        }
        history.push_back(rn);
        if (history.size() > 5 && rn > 10.0 * history[history.size() - 6]) {
            rep.message = "residual diverged";
            break;
        }
    }
    rep.iterations = it;
    rep.solution = std::move(u);
    finalize_report(rep, p, mesh, cfg);
    if (!rep.converged && rep.message.empty()) rep.message = "iteration cap reached";
    if (rep.converged) rep.message = rep.trivial ? "converged to the trivial solution" : "converged";
    return rep;
}

}  // namespace autocat::solvers
