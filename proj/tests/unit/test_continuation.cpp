#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "autocat/continuation.hpp"
#include "autocat/io.hpp"

using namespace autocat;
using namespace autocat::continuation;
using grid::Domain;
using doctest::Approx;

namespace {

GridFunction lowest_energy_seed(const ProblemParams& p, const Mesh& mesh) {
    std::optional<solvers::SolveReport> best;
    for (const auto& s : fresh_starts(p, mesh, 8)) {
        auto r = solvers::global_minimize(p, mesh, s);
        if (solvers::is_nontrivial(r) && (!best || r.energy_value < best->energy_value)) best = r;
    }
    REQUIRE(best.has_value());
    return best->solution;
}

struct CaseIRun {
    Mesh mesh = grid::build_mesh(Domain::interval(0.0, 1.0), 200);
    ProblemParams p{0.5, 0.25, 0.02};
    BranchConfig cfg;
    Branch branch;
    CaseIRun() {
        cfg.lambda_min = 0.05;
        cfg.lambda_max = 1.0;
        branch = continue_branch(p, mesh, lowest_energy_seed(p, mesh), cfg);
    }
};

const CaseIRun& caseI() {
    static const CaseIRun run;
    return run;
}

double metric_distance(const Mesh& mesh, const BranchPoint& a, const BranchPoint& b) {
    double s = (a.lambda - b.lambda) * (a.lambda - b.lambda);
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        const double d = a.solution[i] - b.solution[i];
        s += mesh.weights[i] * d * d;
    }
    return std::sqrt(s);
}

}  // namespace

TEST_SUITE("continuation") {

TEST_CASE("configuration and strategy names") {
    BranchConfig c;
    CHECK_NOTHROW(c.validate());
    c.ds_min = 1.0;
    CHECK_THROWS(c.validate());
    c = {};
    c.direction = 0;
    CHECK_THROWS(c.validate());
    for (auto s : {SweepStrategy::warm_start, SweepStrategy::fresh_start, SweepStrategy::warm_then_fresh})
        CHECK(parse_strategy(to_string(s)) == s);
    CHECK_THROWS(parse_strategy("sideways"));
}

TEST_CASE("Case I branch has one bracketed fold below the bound") {
    const CaseIRun& r = caseI();
    const Branch& b = r.branch;
    REQUIRE(b.folds.size() == 1);
    const Fold& f = b.folds.front();
    CHECK(f.lambda_star > 0.0);
    CHECK(f.lambda_star <= model::threshold_fold_caseI(0.5, 0.25) + 1e-6);
    const double lb = b.points[f.index_before].lambda, la = b.points[f.index_after].lambda;
    CHECK(f.lambda_star >= std::max(lb, la) - 1e-12);
    CHECK(f.lambda_star - std::max(lb, la) <= 2.0 * r.cfg.ds_max);
    // no solution of the same branch continues beyond the fold
    const ProblemParams beyond = r.p.with_lambda(f.lambda_star + 2.0 * r.cfg.ds_max);
    const auto nw = solvers::newton_solve(beyond, r.mesh, b.points[f.index_before].solution);
    CHECK_FALSE(solvers::is_nontrivial(nw));
}

TEST_CASE("accepted points re-verify and are spaced by the step bound") {
    const CaseIRun& r = caseI();
    const Branch& b = r.branch;
    REQUIRE(b.points.size() > 5);
    for (std::size_t i = 0; i < b.points.size(); ++i) {
        const BranchPoint& bp = b.points[i];
        const ProblemParams p = r.p.with_lambda(bp.lambda);
        CHECK(bp.sup_norm >= 0.0);
        CHECK(grid::residual_norm(p, r.mesh, bp.solution) <= r.cfg.solver.tol);
        if (const auto M = model::apriori_bound(p)) CHECK(bp.sup_norm <= *M + 1e-8);
        if (i > 0) CHECK(metric_distance(r.mesh, b.points[i - 1], bp) <= 2.0 * r.cfg.ds_max + 1e-12);
    }
    CHECK(detect_fold(b).size() == b.folds.size());
}

TEST_CASE("minimizer branch has negative energy below half the fold") {
    const CaseIRun& r = caseI();
    const double half = 0.5 * r.branch.folds.front().lambda_star;
    const std::size_t upto = r.branch.folds.front().index_before;
    int checked = 0;
    for (std::size_t i = 0; i <= upto; ++i) {
        const BranchPoint& bp = r.branch.points[i];
        if (bp.lambda > 0.0 && bp.lambda <= half) {
            CHECK(bp.energy < 0.0);
            ++checked;
        }
    }
    CHECK(checked > 0);
    const auto last = last_negative_energy_lambda(r.branch);
    REQUIRE(last.has_value());
    CHECK(*last >= half);
    CHECK(*last <= r.branch.folds.front().lambda_star);
}

TEST_CASE("branch files are byte-identical across reruns") {
    const Mesh mesh = grid::build_mesh(Domain::interval(0.0, 1.0), 100);
    const ProblemParams p(0.5, 0.5, 0.0);
    BranchConfig cfg;
    cfg.lambda_max = 0.8;
    cfg.lambda_min = -0.5;
    const GridFunction u0 = lowest_energy_seed(p, mesh);
    const auto dir = std::filesystem::temp_directory_path() / "autocat_unit_cont";
    std::filesystem::remove_all(dir);
    const auto a = write_branch(dir / "a", "b", continue_branch(p, mesh, u0, cfg), mesh, true);
    const auto b = write_branch(dir / "b", "b", continue_branch(p, mesh, u0, cfg), mesh, true);
    CHECK(io::read_text(a) == io::read_text(b));
    CHECK(io::read_text(dir / "a" / "b_folds.json") == io::read_text(dir / "b" / "b_folds.json"));
    const std::string header = io::read_text(a).substr(0, io::read_text(a).find('\n'));
    CHECK(header == "lambda,sup_norm,l2_norm,energy,stability_indicator,truncated_flag,solution_file");
}

TEST_CASE("logistic branch bifurcates from zero at one minus the principal eigenvalue") {
    const Mesh mesh = grid::build_mesh(Domain::interval(0.0, 2.0 * M_PI), 400);
    const double l1 = grid::principal_eigenpair(mesh).lambda1;
    const ProblemParams p(1.0, 1.0, 0.0);
    BranchConfig cfg;
    cfg.lambda_max = 1.0;
    cfg.ds_max = 0.02;
    const Branch b = continue_branch(p, mesh, lowest_energy_seed(p, mesh), cfg);
    REQUIRE(b.points.size() > 3);
    // linear extrapolation of sup_norm to zero from the last two nontrivial points
    std::vector<const BranchPoint*> live;
    for (const auto& bp : b.points)
        if (bp.sup_norm > 1e-6) live.push_back(&bp);
    REQUIRE(live.size() >= 2);
    const BranchPoint& x = *live[live.size() - 2];
    const BranchPoint& y = *live.back();
    const double lam0 = y.lambda - y.sup_norm * (y.lambda - x.lambda) / (y.sup_norm - x.sup_norm);
    CHECK(std::abs(lam0 - (1.0 - l1)) <= 10.0 * mesh.h * mesh.h);
    for (const auto& bp : b.points)
        if (bp.lambda < 0.74 && bp.stability.mu1) CHECK(*bp.stability.mu1 > 0.0);
}

TEST_CASE("stability of the logistic solution") {
    const Mesh mesh = grid::build_mesh(Domain::interval(0.0, 2.0 * M_PI), 200);
    const ProblemParams p(1.0, 1.0, 0.5);
    const GridFunction u = lowest_energy_seed(p, mesh);
    const Stability s = stability_indicator(p, mesh, u);
    REQUIRE(s.mu1.has_value());
    CHECK(*s.mu1 > 0.0);
    CHECK_FALSE(s.truncated);
}

TEST_CASE("sweeps record gaps where no solution exists") {
    const Mesh mesh = grid::build_mesh(Domain::interval(0.0, 1.0), 100);
    const ProblemParams p(0.5, 0.5, 0.0);
    CHECK(sweep_lambda(p, mesh, {}).points.empty());
    const Branch b = sweep_lambda(p, mesh, {0.0, 0.5, 0.9, 1.0, 1.2});
    CHECK(b.points.size() == 3);
    CHECK(b.gaps.size() == 2);
    for (std::size_t i = 1; i < b.points.size(); ++i) CHECK(b.points[i].sup_norm < b.points[i - 1].sup_norm);
}

TEST_CASE("fold detection on a synthetic parabola") {
    Branch b;
    for (int i = 0; i <= 20; ++i) {
        const double t = -1.0 + 0.1 * i;
        BranchPoint bp;
        bp.lambda = 0.3 - t * t;
        bp.arclength = t;
        bp.sup_norm = 0.5 + t;
        b.points.push_back(bp);
    }
    const auto folds = detect_fold(b);
    REQUIRE(folds.size() == 1);
    CHECK(folds.front().lambda_star == Approx(0.3).epsilon(1e-10));
}

}  // TEST_SUITE
