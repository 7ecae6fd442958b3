#include "figures.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "autocat/io.hpp"
#include "autocat/solvers.hpp"

namespace autocat::figures {

namespace {

using grid::Domain;
using model::ProblemParams;

BranchRun run(std::string label, ProblemParams p, Domain d, Seed seed, double lambda_min, double lambda_max,
              int direction, double ds_max = 0.1, double tol = 1e-10) {
    BranchRun r;
    r.label = std::move(label);
    r.params = p;
    r.domain = d;
    r.seed = seed;
    r.branch.lambda_min = lambda_min;
    r.branch.lambda_max = lambda_max;
    r.branch.direction = direction;
    r.branch.ds_max = ds_max;
    r.branch.solver.tol = tol;
    r.branch.max_points = 600;
    return r;
}

std::vector<Figure> build() {
    const Domain unit = Domain::interval(0.0, 1.0);
    std::vector<Figure> f;
    f.push_back({"fig3", "m=0.5 n=0.25 on (0,1)",
                 {run("branch", {0.5, 0.25, -0.5, 1}, unit, Seed::lowest_energy, -0.5, 1.0, 1, 0.05)}});
    f.push_back({"fig4", "m=n=0.5 on (0,1)",
                 {run("branch", {0.5, 0.5, -2.0, 1}, unit, Seed::lowest_energy, -2.0, 1.5, 1)}});
    f.push_back({"fig5", "m=0.5 n=0.75 on (0,1)",
                 {run("branch", {0.5, 0.75, -5.0, 1}, unit, Seed::lowest_energy, -5.0, 5.0, 1)}});
    f.push_back({"fig6", "m=0.5 n=1.2 on (0,0.6)",
                 {run("branch", {0.5, 1.2, 5.0, 1}, Domain::interval(0.0, 0.6), Seed::lowest_energy, -80.0, 5.0, -1,
                      2.0, 1e-8)}});
    f.push_back({"fig7", "m=0.5 n=1.5 on (0,1)",
                 {run("branch", {0.5, 1.5, 3.0, 1}, unit, Seed::lowest_energy, -40.0, 3.0, -1, 0.5, 1e-8)}});
    f.push_back({"fig8", "m=0.5 n=2 on (0,4)",
                 {run("branch", {0.5, 2.0, 3.0, 1}, Domain::interval(0.0, 4.0), Seed::lowest_energy, -10.0, 3.0, -1,
                      0.2, 1e-8)}});
    f.push_back({"fig9", "m=1 n=0.5 on (0,4)",
                 {run("branch", {1.0, 0.5, -1.0, 1}, Domain::interval(0.0, 4.0), Seed::lowest_energy, -1.0, 1.0, 1,
                      0.05)}});
    f.push_back({"fig10", "m=1 n=1.5 on (0,pi)",
                 {run("left", {1.0, 1.5, -1.0, 1}, Domain::interval(0.0, M_PI), Seed::lowest_energy, -10.0, 0.5, -1,
                      0.2, 1e-8),
                  run("right", {1.0, 1.5, -1.0, 1}, Domain::interval(0.0, M_PI), Seed::lowest_energy, -10.0, 0.5, 1,
                      0.2, 1e-8)}});
    f.push_back({"fig11", "m=1 n=1.5 on (0,1)",
                 {run("branch", {1.0, 1.5, -12.0, 1}, unit, Seed::largest, -20.0, 0.0, 1, 0.5, 1e-8)}});
    f.push_back({"fig12", "m=1 n=3 on (0,1)",
                 {run("left", {1.0, 3.0, -1.0, 1}, unit, Seed::pass, -5.0, 0.0, -1, 0.2, 1e-9),
                  run("right", {1.0, 3.0, -1.0, 1}, unit, Seed::pass, -5.0, 0.0, 1, 0.2, 1e-9)}});
    return f;
}

std::optional<grid::GridFunction> seed_state(const BranchRun& r, const grid::Mesh& mesh, std::string& note) {
    const solvers::SolverConfig& cfg = r.branch.solver;
    const auto starts = continuation::fresh_starts(r.params, mesh, 8);
    if (r.seed == Seed::pass) {
        grid::GridFunction end(grid::principal_eigenpair(mesh).phi1.values);
        double E = grid::energy(r.params, mesh, end);
        for (int k = 0; k < 60 && !(E < 0.0); ++k) {
            for (double& v : end.values) v *= 2.0;
            E = grid::energy(r.params, mesh, end);
        }
        if (!(E < 0.0)) {
            note = "no endpoint with negative energy for the pass seed";
            return std::nullopt;
        }
        auto mp = solvers::mountain_pass(r.params, mesh, end, cfg);
        if (solvers::is_nontrivial(mp)) return mp.solution;
        note = "pass seed: " + mp.message;
        return std::nullopt;
    }
    std::optional<grid::GridFunction> best;
    double key = 0.0;
    for (const auto& s : starts) {
        for (auto method : {solvers::Method::minimize, solvers::Method::newton}) {
            auto rep = method == solvers::Method::minimize ? solvers::global_minimize(r.params, mesh, s, cfg)
                                                           : solvers::newton_solve(r.params, mesh, s, cfg);
            if (!solvers::is_nontrivial(rep)) continue;
            const double k = r.seed == Seed::lowest_energy ? rep.energy_value : -rep.solution.sup_norm();
            if (!best || k < key) {
                best = rep.solution;
                key = k;
            }
        }
    }
    if (!best) note = "no nontrivial seed at lambda = " + io::num(r.params.lambda);
    return best;
}

}  // namespace

const std::vector<Figure>& all_figures() {
    static const std::vector<Figure> figs = build();
    return figs;
}

const Figure& find_figure(const std::string& name) {
    for (const Figure& f : all_figures())
        if (f.name == name) return f;
    std::string known;
    for (const Figure& f : all_figures()) known += (known.empty() ? "" : ", ") + f.name;
    throw std::invalid_argument("unknown figure '" + name + "' (" + known + ")");
}

Rendered render(const Figure& fig, const std::filesystem::path& dir, bool write_solutions) {
    Rendered out;
    io::ensure_directory(dir);
    std::ostringstream gp;
    gp << "# " << fig.name << ": " << fig.title << "\n"
       << "set datafile separator ','\n"
       << "set xlabel 'lambda'\n"
       << "set ylabel 'sup norm'\n"
       << "set title '" << fig.title << "'\n";
    std::vector<std::string> plots;
    for (const BranchRun& r : fig.runs) {
        const grid::Mesh mesh = grid::build_mesh(r.domain, r.cells);
        std::string note;
        const auto u0 = seed_state(r, mesh, note);
        if (!u0) {
            out.ok = false;
            out.messages.push_back(r.label + ": " + note);
            continue;
        }
        const continuation::Branch br = continuation::continue_branch(r.params, mesh, *u0, r.branch);
        const std::string stem = fig.name + "_" + r.label;
        continuation::write_branch(dir, stem, br, mesh, write_solutions);
        out.files.push_back(stem + ".csv");
        out.files.push_back(stem + "_folds.json");
        out.messages.push_back(r.label + ": " + std::to_string(br.points.size()) + " points, " +
                               std::to_string(br.folds.size()) + " folds, " + br.message);
        if (br.points.size() < 2) out.ok = false;
        plots.push_back("'" + stem + ".csv' using 1:2 skip 1 with linespoints title '" + r.label + "'");
    }
    if (!plots.empty()) {
        gp << "plot ";
        for (std::size_t i = 0; i < plots.size(); ++i) gp << (i ? ", \\\n     " : "") << plots[i];
        gp << "\n";
    }
    io::write_text(dir / (fig.name + ".gp"), gp.str());
    out.files.push_back(fig.name + ".gp");
    return out;
}

}  // namespace autocat::figures
