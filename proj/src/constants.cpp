#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "autocat/solvers.hpp"

namespace autocat::solvers {

namespace {

double power_integral(const Mesh& mesh, const std::vector<double>& v, double q) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += mesh.weights[i] * std::pow(std::abs(v[i]), q);
    return s;
}

double quotient(const Mesh& mesh, const std::vector<double>& v, double q) {
    const double D = grid::dirichlet_integral(mesh, GridFunction(v));
    return power_integral(mesh, v, q) / std::pow(D, 0.5 * q) / q;
}

/// Residual K w - W w^{q-1}, weighted back to strong form.
double el_residual(const Mesh& mesh, const std::vector<double>& w, double q) {
    const std::vector<double> Kw = mesh.stiffness().apply(w);
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double r = Kw[i] / mesh.weights[i] - std::pow(std::max(w[i], 0.0), q - 1.0);
        s += mesh.weights[i] * r * r;
    }
    return std::sqrt(s);
}

}  // namespace

ApResult compute_Ap(const Mesh& mesh, double q, const SolverConfig& cfg) {
    cfg.validate();
    if (!(q > 1.0)) throw std::invalid_argument("exponent must exceed 1");
    if (mesh.domain.kind == grid::DomainKind::radial_ball && mesh.domain.dim > 2) {
        const double N = mesh.domain.dim;
        if (!(q < 2.0 * N / (N - 2.0))) throw std::invalid_argument("exponent must be Sobolev-subcritical");
    }
    ApResult out;
    const grid::EigenPair eig = grid::principal_eigenpair(mesh);
    if (std::abs(q - 2.0) < 1e-14) {
        out.value = out.ascent_value = 0.5 / eig.lambda1;
        out.converged = eig.converged;
        out.message = "quadratic case reduces to the principal eigenvalue";
        return out;
    }
    const std::size_t n = mesh.size();
    const std::vector<double>& phi = eig.phi1.values;

    // Euler-Lagrange route: -Δw = w^{q-1} by Newton from a scaled eigenfunction
    const double c = std::pow(eig.lambda1 * power_integral(mesh, phi, 2.0) / power_integral(mesh, phi, q),
                              1.0 / (q - 2.0));
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = c * phi[i];
    double rn = el_residual(mesh, w, q);
    const double scale = std::max(1.0, std::sqrt(power_integral(mesh, w, 2.0 * (q - 1.0))));
    bool el_ok = false;
    for (int it = 0; it < cfg.max_iter; ++it) {
        if (rn <= cfg.tol * scale) {
            el_ok = true;
            break;
        }
        linalg::Tridiagonal J = mesh.stiffness();
        std::vector<double> rhs = J.apply(w);
        for (std::size_t i = 0; i < n; ++i) {
            const double wi = std::max(w[i], cfg.eps_reg);
            J.diag[i] -= mesh.weights[i] * (q - 1.0) * std::pow(wi, q - 2.0);
            rhs[i] = -(rhs[i] - mesh.weights[i] * std::pow(std::max(w[i], 0.0), q - 1.0));
        }
        auto d = linalg::solve(J, rhs);
        if (!d) break;
        double t = 1.0;
        bool accepted = false;
        while (t >= 1e-10) {
            std::vector<double> trial(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double v = w[i] + t * (*d)[i];
                trial[i] = v > 0.0 ? v : 0.01 * w[i];
            }
            const double rt = el_residual(mesh, trial, q);
            if (std::isfinite(rt) && rt <= (1.0 - 1e-4 * t) * rn) {
                w = std::move(trial);
                rn = rt;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            el_ok = rn <= 1e3 * cfg.tol * scale;
            break;
        }
    }
    out.value = quotient(mesh, w, q);

    // direct ascent: v <- K^{-1} W v^{q-1}, normalized in the Dirichlet norm
    std::vector<double> v = phi;
    double Q = quotient(mesh, v, q);
    for (int it = 0; it < 20000; ++it) {
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) rhs[i] = mesh.weights[i] * std::pow(std::max(v[i], 0.0), q - 1.0);
        auto next = linalg::solve(mesh.stiffness(), rhs);
        if (!next) break;
        const double D = grid::dirichlet_integral(mesh, GridFunction(*next));
        for (double& x : *next) x /= std::sqrt(D);
        const double Qn = quotient(mesh, *next, q);
        v = std::move(*next);
        const bool done = std::abs(Qn - Q) <= 1e-15 * Qn;
        Q = Qn;
        if (done) break;
    }
    out.ascent_value = Q;
    out.relative_gap = std::abs(out.value - out.ascent_value) / out.value;
    out.converged = el_ok && out.relative_gap <= 1e-5;
    out.message = !el_ok ? "Euler-Lagrange Newton did not converge"
                 : out.converged ? "converged" : "routes disagree";
    return out;
}

}  // namespace autocat::solvers
