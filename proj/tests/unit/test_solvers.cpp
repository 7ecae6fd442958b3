#include <doctest.h>

#include <cmath>

#include "autocat/continuation.hpp"
#include "autocat/solvers.hpp"
#include "oracles.hpp"

using namespace autocat;
using namespace autocat::solvers;
using grid::Domain;
using doctest::Approx;

namespace {

Mesh unit_mesh(int cells = 200) { return grid::build_mesh(Domain::interval(0.0, 1.0), cells); }

double sup_distance(const GridFunction& a, const GridFunction& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

/// Invariants every converged report must satisfy.
void check_converged(const ProblemParams& p, const Mesh& mesh, const SolveReport& r, const SolverConfig& cfg) {
    REQUIRE(r.converged);
    CHECK(r.residual_norm <= cfg.tol);
    CHECK(grid::residual_norm(p, mesh, r.solution) <= cfg.tol);
    for (double v : r.solution.values) CHECK(v >= 0.0);
    if (const auto M = model::apriori_bound(p)) CHECK(r.solution.sup_norm() <= *M + 1e-8);
    CHECK(std::abs(grid::fiber_derivative(p, mesh, r.solution, 1.0)) <= 10.0 * cfg.tol);
}

GridFunction scaled(const GridFunction& u, double c) {
    GridFunction v = u;
    for (double& x : v.values) x *= c;
    return v;
}

}  // namespace

TEST_SUITE("solvers") {

TEST_CASE("solver configuration is validated") {
    SolverConfig c;
    CHECK_NOTHROW(c.validate());
    c.tol = 1.0;
    CHECK_THROWS(c.validate());
    c = {};
    c.max_iter = 0;
    CHECK_THROWS(c.validate());
    c = {};
    c.eps_reg = -1.0;
    CHECK_THROWS(c.validate());
}

TEST_CASE("finalize_report snaps tiny and negative values") {
    const Mesh mesh = unit_mesh(20);
    const ProblemParams p(0.5, 0.75, 0.0);
    SolveReport r;
    r.solution = GridFunction(mesh.size(), 1e-14);
    r.solution[3] = -1e-3;
    SolverConfig cfg;
    cfg.eps_reg = 1e-12;
    finalize_report(r, p, mesh, cfg);
    CHECK(r.solution.is_zero());
    CHECK(r.trivial);
    CHECK(r.residual_norm == 0.0);
    CHECK(r.converged);
    CHECK_FALSE(is_nontrivial(r));
}

TEST_CASE("constant supersolution") {
    const ProblemParams p(0.5, 0.25, 0.3);
    const double M = build_supersolution(p);
    CHECK(model::reaction(p, M) <= 0.0);
    const double peak = oracle::maximize_log([&](double s) { return model::reaction(p, s); }, 1e-12, 1.0).arg;
    const double root = oracle::bisect([&](double s) { return model::reaction(p, s); }, peak, 1.0);
    CHECK(M >= root);
    CHECK(M <= 1.1 * root + 1e-12);
}

TEST_CASE("Newton and minimization converge to verified solutions") {
    const Mesh mesh = unit_mesh();
    const auto eig = grid::principal_eigenpair(mesh);
    const SolverConfig cfg;
    for (const ProblemParams& p : {ProblemParams(0.5, 0.75, -1.0), ProblemParams(0.5, 1.2, 0.5),
                                   ProblemParams(0.5, 0.25, 0.02), ProblemParams(1.0, 0.5, -2.0)}) {
        CAPTURE(p.m);
        CAPTURE(p.n);
        CAPTURE(p.lambda);
        const SolveReport mini = global_minimize(p, mesh, scaled(eig.phi1, 0.5), cfg);
        check_converged(p, mesh, mini, cfg);
        CHECK_FALSE(mini.trivial);
        const SolveReport newt = newton_solve(p, mesh, mini.solution, cfg);
        check_converged(p, mesh, newt, cfg);
        CHECK(sup_distance(newt.solution, mini.solution) <= 1e-6);
    }
}

TEST_CASE("monotone iteration brackets and agrees with minimization in uniqueness regimes") {
    const Mesh mesh = unit_mesh();
    const auto eig = grid::principal_eigenpair(mesh);
    const SolverConfig cfg;
    for (const ProblemParams& p : {ProblemParams(0.5, 0.75, -1.0), ProblemParams(0.5, 1.5, 0.5),
                                   ProblemParams(0.3, 0.3, 0.5), ProblemParams(0.4, 0.2, 0.0)}) {
        REQUIRE(model::uniqueness_certificate(p, build_supersolution(p)).holds);
        const double M = build_supersolution(p);
        const Subsolution sub = build_subsolution(p, eig, M);
        REQUIRE(sub.valid);
        const SolveReport mono = monotone_iteration(p, mesh, sub.u, GridFunction(mesh.size(), M), cfg);
        check_converged(p, mesh, mono, cfg);
        for (std::size_t i = 0; i < mesh.size(); ++i) {
            CHECK(mono.solution[i] >= sub.u[i] - 1e-12);
            CHECK(mono.solution[i] <= M + 1e-12);
        }
        if (mono.upper_limit) CHECK(sup_distance(*mono.upper_limit, mono.solution) <= 1e-6);
        const SolveReport mini = global_minimize(p, mesh, eig.phi1, cfg);
        check_converged(p, mesh, mini, cfg);
        CHECK(sup_distance(mono.solution, mini.solution) <= 1e-6);
        const SolveReport newt = newton_solve(p, mesh, mini.solution, cfg);
        CHECK(sup_distance(newt.solution, mini.solution) <= 1e-6);
    }
}

TEST_CASE("invalid subsolutions are detected") {
    const Mesh mesh = unit_mesh(50);
    const auto eig = grid::principal_eigenpair(mesh);
    // c φ₁ is never a subsolution when f < 0 near zero
    const Subsolution s = build_subsolution(ProblemParams(0.5, 0.25, 0.3), eig, 1.0, false);
    CHECK_FALSE(s.valid);
}

TEST_CASE("mountain pass finds a positive-energy solution in the superlinear case") {
    const Mesh mesh = unit_mesh(100);
    const ProblemParams p(1.0, 3.0, -1.0);
    GridFunction end = grid::principal_eigenpair(mesh).phi1;
    while (!(grid::energy(p, mesh, end) < 0.0)) end = scaled(end, 2.0);
    SolverConfig cfg;
    const SolveReport r = mountain_pass(p, mesh, end, cfg);
    REQUIRE(is_nontrivial(r));
    check_converged(p, mesh, r, cfg);
    CHECK(r.energy_value > 0.0);
    CHECK(r.method == Method::mountain_pass);
}

TEST_CASE("mountain pass gives the second Case I solution") {
    const Mesh mesh = unit_mesh(200);
    const ProblemParams p(0.5, 0.25, 0.06);
    const SolverConfig cfg;
    std::optional<SolveReport> best;
    for (const auto& s : continuation::fresh_starts(p, mesh, 8)) {
        auto r = global_minimize(p, mesh, s, cfg);
        if (is_nontrivial(r) && (!best || r.energy_value < best->energy_value)) best = r;
    }
    REQUIRE(best.has_value());
    CHECK(best->energy_value < 0.0);
    const SolveReport mp = mountain_pass(p, mesh, best->solution, cfg);
    REQUIRE(is_nontrivial(mp));
    CHECK(mp.residual_norm <= 1e-6);
    CHECK(mp.energy_value > 0.0);
    CHECK(mp.solution.sup_norm() < best->solution.sup_norm());
}

TEST_CASE("descent does not collapse onto the trivial critical point") {
    const Mesh mesh = grid::build_mesh(Domain::interval(0.0, 0.6), 400);
    const ProblemParams p(0.5, 1.2, -29.0);
    GridFunction start = grid::principal_eigenpair(mesh).phi1;
    for (double& v : start.values) v *= 0.05;
    const SolveReport r = global_minimize(p, mesh, start);
    REQUIRE(r.converged);
    CHECK_FALSE(r.trivial);
    CHECK(r.energy_value < 0.0);
}

TEST_CASE("functional constants") {
    SUBCASE("both routes agree for q = 3") {
        const ApResult a = compute_Ap(unit_mesh(400), 3.0);
        CHECK(a.converged);
        CHECK(a.relative_gap <= 1e-5);
        CHECK(std::abs(a.value - a.ascent_value) <= 1e-5 * a.value);
    }
    SUBCASE("interval rescaling") {
        for (double q : {1.5, 2.5}) {
            const double A1 = compute_Ap(grid::build_mesh(Domain::interval(0.0, 1.0), 300), q).value;
            const double A2 = compute_Ap(grid::build_mesh(Domain::interval(0.0, 2.0), 300), q).value;
            CHECK(A2 / A1 == Approx(std::pow(2.0, 1.0 + q / 2.0)).epsilon(1e-6));
        }
    }
    SUBCASE("q = 2 is the inverse principal eigenvalue") {
        const Mesh mesh = unit_mesh(300);
        const double l1 = grid::principal_eigenpair(mesh).lambda1;
        CHECK(compute_Ap(mesh, 2.0).value == Approx(0.5 / l1).epsilon(1e-8));
    }
}

}  // TEST_SUITE
