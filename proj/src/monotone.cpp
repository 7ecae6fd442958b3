#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "autocat/solvers.hpp"

namespace autocat::solvers {

double build_supersolution(const ProblemParams& p) {
    if (!model::constant_supersolution_exists(p))
        throw std::invalid_argument("no constant supersolution in this regime");
    // φ(M) = M^m (1 - M - λ M^{n-m}); the largest zero of ψ = 1 - M - λM^{n-m}.
    auto psi = [&](double M) { return 1.0 - M - p.lambda * std::pow(M, p.n - p.m); };
    double root = 0.0;
    // scan downward from a point where ψ < 0 holds for good
    double hi = 1.0;
    while (psi(hi) >= 0.0) hi *= 2.0;
    double lo = hi;
    const double floor = 1e-300;
    while (lo > floor && psi(lo) < 0.0) lo *= 0.5;
    if (psi(lo) >= 0.0) {
        // find the last sign change in [lo, hi] on a log grid before bisecting
        const int samples = 2000;
        double a = lo, b = hi;
        for (int i = samples; i > 0; --i) {
            const double s0 = lo * std::pow(hi / lo, double(i - 1) / samples);
            const double s1 = lo * std::pow(hi / lo, double(i) / samples);
            if (psi(s0) >= 0.0 && psi(s1) < 0.0) {
                a = s0;
                b = s1;
                break;
            }
        }
        for (int it = 0; it < 200 && b - a > 1e-16 * b; ++it) {
            const double mid = 0.5 * (a + b);
            (psi(mid) >= 0.0 ? a : b) = mid;
        }
        root = b;
    }
    double M = root;
    if (M <= 0.0) M = model::apriori_bound(p).value_or(1.0);
    return 1.1 * M;
}

Subsolution build_subsolution(const ProblemParams& p, const grid::EigenPair& eig, double c, bool search,
                              int max_halvings) {
    if (!(c > 0.0)) throw std::invalid_argument("subsolution scale must be positive");
    Subsolution out;
    out.c = c;
    auto valid_at = [&](double cc) {
        for (double ph : eig.phi1.values) {
            const double s = cc * ph;
            if (s <= 0.0) continue;
            if (eig.lambda1 * s > model::reaction(p, s)) return false;
        }
        return true;
    };
    out.valid = valid_at(c);
    while (!out.valid && search && out.halvings < max_halvings) {
        out.c *= 0.5;
        ++out.halvings;
        out.valid = valid_at(out.c);
    }
    out.u = GridFunction(eig.phi1.size());
    for (std::size_t i = 0; i < out.u.size(); ++i) out.u[i] = out.c * eig.phi1[i];
    return out;
}

namespace {

struct Sweep {
    GridFunction u;
    int iterations = 0;
    bool converged = false;
    std::string message;
};

Sweep run_sweep(const ProblemParams& p, const Mesh& mesh, const linalg::Tridiagonal& A, double K,
                GridFunction u, int direction, const SolverConfig& cfg) {
    Sweep s;
    const std::size_t n = u.size();
    for (int it = 1; it <= cfg.max_iter; ++it) {
        std::vector<double> rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double v = std::max(u[i], 0.0);
            rhs[i] = mesh.weights[i] * (model::reaction(p, v) + K * u[i]);
        }
        auto next = linalg::solve(A, rhs);
        if (!next) {
            s.message = "shifted operator is singular";
            break;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double step = direction * ((*next)[i] - u[i]);
            if (step < -1e-12 * (1.0 + std::abs(u[i]))) {
                s.message = "non-monotone step: shift too small";
                s.iterations = it;
                s.u = u;
                return s;
            }
        }
        u.values = std::move(*next);
        s.iterations = it;
        if (grid::residual_norm(p, mesh, u) <= cfg.tol) {
            s.converged = true;
            break;
        }
    }
    if (!s.converged && s.message.empty()) s.message = "iteration cap reached";
    s.u = std::move(u);
    return s;
}

}  // namespace

SolveReport monotone_iteration(const ProblemParams& p, const Mesh& mesh, const GridFunction& sub,
                               const GridFunction& super, const SolverConfig& cfg) {
    cfg.validate();
    if (sub.size() != mesh.size() || super.size() != mesh.size())
        throw std::invalid_argument("sub/supersolution do not match mesh");
    for (std::size_t i = 0; i < sub.size(); ++i)
        if (sub[i] > super[i] + 1e-14 * (1.0 + std::abs(super[i])))
            throw std::invalid_argument("subsolution exceeds supersolution");

    SolveReport rep;
    rep.method = Method::monotone;

    double lo = std::numeric_limits<double>::infinity();
    for (double v : sub.values)
        if (v > 0.0) lo = std::min(lo, v);
    lo = std::max(std::isfinite(lo) ? lo : cfg.eps_reg, cfg.eps_reg);
    const double hi = std::max(super.sup_norm(), lo);

    double fmin = std::numeric_limits<double>::infinity();
    const int samples = 400;
    for (int i = 0; i <= samples; ++i) {
        const double t = double(i) / samples;
        const double s_log = lo * std::pow(hi / lo, t);
        const double s_lin = lo + (hi - lo) * t;
        fmin = std::min({fmin, model::reaction_derivative(p, s_log), model::reaction_derivative(p, s_lin)});
    }
    const double K = std::max(0.0, -fmin) * 1.05;
    if (!std::isfinite(K) || K > 1e12) {
        rep.solution = sub;
        rep.message = "no usable one-sided Lipschitz shift on the iteration range";
        finalize_report(rep, p, mesh, cfg);
        rep.converged = false;
        return rep;
    }

    linalg::Tridiagonal A = mesh.stiffness();
    for (std::size_t i = 0; i < A.size(); ++i) A.diag[i] += K * mesh.weights[i];

    Sweep below = run_sweep(p, mesh, A, K, sub, +1, cfg);
    Sweep above = run_sweep(p, mesh, A, K, super, -1, cfg);

    rep.iterations = below.iterations;
    rep.solution = below.u;
    GridFunction up = above.u;
    for (double& v : up.values)
        if (v < cfg.eps_reg) v = 0.0;
    rep.upper_limit = up;
    finalize_report(rep, p, mesh, cfg);
    rep.converged = rep.converged && below.converged;
    if (!below.converged) rep.message = "from below: " + below.message;
    else if (!above.converged) rep.message = "from above: " + above.message;
    else rep.message = "converged";
    return rep;
}

}  // namespace autocat::solvers
