#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "autocat/solvers.hpp"

namespace autocat::solvers {

namespace {

using Vec = std::vector<double>;

double h1_dot(const Mesh& mesh, const Vec& a, const Vec& b) {
    const Vec Kb = mesh.stiffness().apply(b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Kb[i];
    return s;
}

Vec diff(const Vec& a, const Vec& b) {
    Vec d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

/// Redistributes interior nodes so cumulative H¹ arclength follows `fractions`.
void reparametrize(const Mesh& mesh, std::vector<GridFunction>& path, const Vec& fractions) {
    const std::size_t P = path.size();
    Vec cum(P, 0.0);
    for (std::size_t k = 1; k < P; ++k) {
        const Vec d = diff(path[k].values, path[k - 1].values);
        cum[k] = cum[k - 1] + std::sqrt(std::max(h1_dot(mesh, d, d), 0.0));
    }
    const double total = cum.back();
    if (!(total > 0.0)) return;
    std::vector<GridFunction> out(path);
    std::size_t seg = 1;
    for (std::size_t k = 1; k + 1 < P; ++k) {
        const double target = fractions[k] * total;
        while (seg + 1 < P && cum[seg] < target) ++seg;
        const double span = cum[seg] - cum[seg - 1];
        const double w = span > 0.0 ? std::clamp((target - cum[seg - 1]) / span, 0.0, 1.0) : 0.0;
        for (std::size_t i = 0; i < out[k].size(); ++i)
            out[k][i] = (1.0 - w) * path[seg - 1][i] + w * path[seg][i];
    }
    path = std::move(out);
}

}  // namespace

SolveReport mountain_pass(const ProblemParams& p, const Mesh& mesh, const GridFunction& u_end,
                          const SolverConfig& cfg, const MountainPassOptions& opt) {
    cfg.validate();
    if (u_end.size() != mesh.size()) throw std::invalid_argument("path endpoint does not match mesh");
    if (u_end.positive_part().is_zero()) throw std::invalid_argument("path endpoints coincide");
    if (opt.nodes < 5) throw std::invalid_argument("mountain pass needs at least 5 path nodes");
    if (!(opt.first_fraction > 0.0 && opt.first_fraction < 1.0))
        throw std::invalid_argument("first_fraction must lie in (0,1)");

    SolveReport rep;
    rep.method = Method::mountain_pass;
    const std::size_t P = static_cast<std::size_t>(opt.nodes);
    const std::size_t n = mesh.size();
    const GridFunction zero(n);
    const double E_end = grid::energy(p, mesh, u_end);
    const double E_floor = std::max(0.0, E_end);
    if (E_end >= 0.0) rep.warnings.push_back("path endpoint does not lie below the zero level");

    Vec fractions(P);
    fractions[0] = 0.0;
    fractions[P - 1] = 1.0;
    for (std::size_t k = 1; k + 1 < P; ++k)
        fractions[k] = opt.first_fraction * std::pow(1.0 / opt.first_fraction, double(k - 1) / double(P - 2));

    std::vector<GridFunction> path(P, zero);
    for (std::size_t k = 0; k < P; ++k)
        for (std::size_t i = 0; i < n; ++i) path[k][i] = fractions[k] * std::max(u_end[i], 0.0);

    auto energies = [&] {
        Vec e(P);
        for (std::size_t k = 0; k < P; ++k) e[k] = grid::energy(p, mesh, path[k]);
        return e;
    };
    auto argmax_interior = [&](const Vec& e) {
        std::size_t best = 1;
        for (std::size_t k = 2; k + 1 < P; ++k)
            if (e[k] > e[best]) best = k;
        return best;
    };
    auto h1_gradient = [&](const GridFunction& z) {
        Vec g = grid::energy_gradient(p, mesh, z).values;
        auto gh = linalg::solve(mesh.stiffness(), g);
        return gh ? *gh : Vec(n, 0.0);
    };
    auto accept = [&](const SolveReport& cand) {
        if (!cand.converged || cand.trivial) return false;
        if (!(cand.energy_value > E_floor)) return false;
        const Vec d = diff(cand.solution.values, u_end.values);
        double dmax = 0.0;
        for (double v : d) dmax = std::max(dmax, std::abs(v));
        return dmax > 1e-6 * (1.0 + u_end.sup_norm());
    };

    const double alpha = opt.climb_step;
    int iterations = 0;
    for (int it = 0; it < opt.deform_iter; ++it, ++iterations) {
        const Vec e = energies();
        const std::size_t k = argmax_interior(e);
        const Vec gh = h1_gradient(path[k]);
        for (std::size_t i = 0; i < n; ++i) path[k][i] = std::max(path[k][i] - alpha * gh[i], 0.0);
        reparametrize(mesh, path, fractions);
    }

    Vec e = energies();
    std::size_t k = argmax_interior(e);
    if (!(e[k] > E_floor + 1e-14 * (1.0 + std::abs(E_floor)))) {
        rep.iterations = iterations;
        rep.solution = path[k];
        finalize_report(rep, p, mesh, cfg);
        rep.converged = false;
        rep.message = "path collapsed: no energy barrier between the endpoints";
        return rep;
    }

    GridFunction z = path[k];
    const GridFunction left = path[k - 1], right = path[k + 1];
    for (int it = 1; it <= opt.climb_iter; ++it, ++iterations) {
        if (grid::residual_norm(p, mesh, z) <= cfg.tol) break;
        Vec tau = diff(right.values, left.values);
        const double tn = std::sqrt(std::max(h1_dot(mesh, tau, tau), 0.0));
        if (tn > 0.0)
            for (double& v : tau) v /= tn;
        const Vec gh = h1_gradient(z);
        const double proj = h1_dot(mesh, gh, tau);
        for (std::size_t i = 0; i < n; ++i) z[i] = std::max(z[i] - alpha * (gh[i] - 2.0 * proj * tau[i]), 0.0);
        if (opt.polish_every > 0 && it % opt.polish_every == 0) {
            SolveReport cand = newton_solve(p, mesh, z, cfg);
            if (accept(cand)) {
                z = cand.solution;
                break;
            }
        }
        if (z.is_zero()) break;
    }

    rep.iterations = iterations;
    rep.solution = z;
    finalize_report(rep, p, mesh, cfg);
    if (!accept(rep)) {
        SolveReport cand = newton_solve(p, mesh, z, cfg);
        if (accept(cand)) {
            rep.solution = cand.solution;
            finalize_report(rep, p, mesh, cfg);
        } else {
            rep.converged = false;
        }
    }
    if (rep.converged) rep.message = "converged";
    else if (rep.solution.is_zero()) rep.message = "path collapsed onto the trivial state";
    else rep.message = "climbing did not reach a critical point above the endpoints";
    return rep;
}

}  // namespace autocat::solvers
