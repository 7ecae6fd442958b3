#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "autocat/continuation.hpp"
#include "autocat/io.hpp"
#include "autocat/run_config.hpp"
#include "autocat/solvers.hpp"
#include "autocat/verify.hpp"
#include "figures.hpp"
#include "json.hpp"

using namespace autocat;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, runtime_failure = 1, usage = 2, incomplete = 3 };

/// Failures that carry their own exit code and error kind.
struct Failure : std::runtime_error {
    Exit code;
    std::string kind;
    Failure(Exit c, std::string k, const std::string& msg) : std::runtime_error(msg), code(c), kind(std::move(k)) {}
};

void print_error(const std::string& kind, const std::string& message) {
    json j;
    j["error"]["kind"] = kind;
    j["error"]["message"] = message;
    std::cerr << j.dump() << "\n";
}

// config flags --------------------------------------------------------------------

struct Flag {
    std::string block, key;
    std::optional<std::string> value;
};

struct ConfigFlags {
    std::string config_path;
    std::optional<std::string> length;
    bool no_solutions = false;
    std::map<std::string, Flag> flags;

    void add(CLI::App* app, const std::string& name, const std::string& block, const std::string& key,
             const std::string& help) {
        flags[name] = Flag{block, key, std::nullopt};
        app->add_option("--" + name, flags[name].value, help);
    }

    config::RunConfig build() const {
        config::RunConfig c;
        if (!config_path.empty()) c = config::load(config_path);
        if (length) {
            c.set("domain", "kind", "interval");
            c.set("domain", "a", "0");
            c.set("domain", "b", *length);
        }
        for (const auto& [name, f] : flags)
            if (f.value) c.set(f.block, f.key, *f.value);
        if (no_solutions) c.output.solutions = false;
        c.validate();
        return c;
    }
};

void add_problem_flags(CLI::App* app, ConfigFlags& cf) {
    app->add_option("--config", cf.config_path, "key = value or JSON run configuration");
    cf.add(app, "m", "problem", "m", "exponent m");
    cf.add(app, "n", "problem", "n", "exponent n");
    cf.add(app, "lambda", "problem", "lambda", "parameter λ (start value for branches)");
    cf.add(app, "dim", "problem", "dim", "spatial dimension");
    cf.add(app, "domain", "domain", "kind", "interval or ball");
    cf.add(app, "a", "domain", "a", "left endpoint of the interval");
    cf.add(app, "b", "domain", "b", "right endpoint of the interval");
    app->add_option("--length", cf.length, "interval (0, length)");
    cf.add(app, "radius", "domain", "radius", "ball radius");
    cf.add(app, "cells", "domain", "cells", "number of cells");
    cf.add(app, "tol", "solver", "tol", "residual tolerance");
    cf.add(app, "max-iter", "solver", "max_iter", "iteration cap");
    cf.add(app, "eps-reg", "solver", "eps_reg", "regularization floor");
    cf.add(app, "damping", "solver", "damping", "initial Newton damping");
    cf.add(app, "output-dir", "output", "directory", "output directory");
    cf.add(app, "stem", "output", "stem", "output file stem");
    cf.add(app, "formats", "output", "formats", "comma list of csv, json, gnuplot");
}

// shared helpers --------------------------------------------------------------------

json config_json(const config::RunConfig& c) { return json::parse(c.to_json()); }

json number_or_null(std::optional<double> x) { return x ? json(*x) : json(nullptr); }

void write_json(const std::filesystem::path& path, const json& j) { io::write_text(path, j.dump(2) + "\n"); }

std::optional<solvers::SolveReport> best_nontrivial(const model::ProblemParams& p, const grid::Mesh& mesh,
                                                    const config::RunConfig& c, bool lowest_energy) {
    std::optional<solvers::SolveReport> best;
    for (const auto& s : continuation::fresh_starts(p, mesh, c.solver.starts)) {
        for (auto method : {solvers::Method::newton, solvers::Method::minimize}) {
            if (method == solvers::Method::minimize && !lowest_energy && best) continue;
            auto r = method == solvers::Method::newton ? solvers::newton_solve(p, mesh, s, c.solver.solver)
                                                       : solvers::global_minimize(p, mesh, s, c.solver.solver);
            if (!solvers::is_nontrivial(r)) continue;
            if (!best || (lowest_energy && r.energy_value < best->energy_value)) best = std::move(r);
        }
    }
    return best;
}

solvers::SolveReport solve_with(const config::RunConfig& c, const model::ProblemParams& p, const grid::Mesh& mesh) {
    const auto& cfg = c.solver.solver;
    switch (c.solver.method) {
        case solvers::Method::monotone: {
            if (!model::constant_supersolution_exists(p))
                throw Failure(usage, "usage", "monotone iteration needs a constant supersolution for these parameters");
            const double M = solvers::build_supersolution(p);
            const auto eig = grid::principal_eigenpair(mesh);
            auto sub = solvers::build_subsolution(p, eig, M);
            if (!sub.valid) {
                solvers::SolveReport r;
                r.method = solvers::Method::monotone;
                r.solution = grid::GridFunction(mesh.size());
                r.message = "no valid subsolution below the supersolution";
                return r;
            }
            return solvers::monotone_iteration(p, mesh, sub.u, grid::GridFunction(mesh.size(), M), cfg);
        }
        case solvers::Method::mountain_pass: {
            grid::GridFunction end;
            auto mn = best_nontrivial(p, mesh, c, true);
            if (mn && mn->energy_value < 0.0) {
                end = mn->solution;
            } else {
                end = grid::principal_eigenpair(mesh).phi1;
                double E = grid::energy(p, mesh, end);
                for (int k = 0; k < 60 && !(E < 0.0); ++k) {
                    for (double& v : end.values) v *= 2.0;
                    E = grid::energy(p, mesh, end);
                }
                if (!(E < 0.0)) throw Failure(incomplete, "not_converged", "no endpoint with negative energy");
            }
            return solvers::mountain_pass(p, mesh, end, cfg);
        }
        case solvers::Method::newton:
        case solvers::Method::minimize: {
            std::optional<solvers::SolveReport> best, trivial;
            for (const auto& s : continuation::fresh_starts(p, mesh, c.solver.starts)) {
                auto r = c.solver.method == solvers::Method::newton ? solvers::newton_solve(p, mesh, s, cfg)
                                                                    : solvers::global_minimize(p, mesh, s, cfg);
                if (solvers::is_nontrivial(r)) {
                    if (!best || r.energy_value < best->energy_value) best = std::move(r);
                    if (c.solver.method == solvers::Method::newton) break;
                } else if (!trivial || (r.converged && !trivial->converged)) {
                    trivial = std::move(r);
                }
            }
            if (best) return *best;
            return *trivial;
        }
    }
    throw std::logic_error("unhandled method");
}

// subcommands ------------------------------------------------------------------------

int cmd_classify(double m, double n, bool as_json) {
    model::CaseTag tag;
    try {
        tag = model::classify(m, n);
    } catch (const std::exception& e) {
        throw Failure(usage, "usage", e.what());
    }
    const std::string subcase = tag.subcase == model::Subcase::none ? "none" : model::to_string(tag.subcase);
    std::vector<std::string> results;
    std::set<std::string> seen;
    for (const auto& s : verify::scenario_suite(tag.tag))
        if (seen.insert(s.citation).second) results.push_back(s.citation);
    if (as_json) {
        json j;
        j["m"] = m;
        j["n"] = n;
        j["case"] = model::to_string(tag.tag);
        j["subcase"] = subcase;
        j["results"] = results;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << model::to_string(tag.tag) << "\n";
        std::cout << "subcase: " << subcase << "\n";
        std::cout << "results:";
        for (const auto& r : results) std::cout << " " << r;
        std::cout << "\n";
    }
    return ok;
}

int cmd_thresholds(const config::RunConfig& c, bool as_json) {
    const model::ProblemParams p = c.params();
    const grid::Mesh mesh = c.mesh();
    const double l1 = grid::principal_eigenpair(mesh).lambda1;
    std::vector<std::pair<std::string, std::string>> rows;
    auto row = [&](const std::string& name, const std::function<double()>& f) {
        try {
            rows.emplace_back(name, io::num(f()));
        } catch (const std::exception& e) {
            rows.emplace_back(name, std::string("n/a (") + e.what() + ")");
        }
    };
    const model::Case tag = model::classify(p.m, p.n).tag;
    auto in_case = [&](std::initializer_list<model::Case> cs, const char* regime) {
        for (model::Case x : cs)
            if (x == tag) return;
        throw std::invalid_argument(regime);
    };
    rows.emplace_back("case", model::to_string(tag));
    rows.emplace_back("domain", mesh.domain.describe());
    row("lambda1", [&] { return l1; });
    row("lambda_c", [&] { return model::lambda_c(p.m, p.n); });
    row("fold_bound_caseI", [&] { return model::threshold_fold_caseI(p.m, p.n); });
    try {
        in_case({model::Case::C1}, "requires 0 < n < m < 1");
        const auto adm = model::caseIb_admissible(p.m, p.dim);
        if (adm.empty()) rows.emplace_back("caseIb_admissible", "empty");
        else rows.emplace_back("caseIb_admissible", "(" + io::num(adm.lo) + ", " + io::num(adm.hi) + ")");
    } catch (const std::exception& e) {
        rows.emplace_back("caseIb_admissible", std::string("n/a (") + e.what() + ")");
    }
    row("nonexistence_bound_caseIV", [&] {
        in_case({model::Case::C4}, "requires n >= m+1");
        return model::threshold_caseIV_nonexistence(p.m, l1);
    });
    row("fold_bound_caseV", [&] {
        in_case({model::Case::C5}, "requires m = 1, 0 < n < 1");
        return model::threshold_caseV(p.n, l1);
    });
    row("fold_bound_caseVI", [&] {
        in_case({model::Case::C6}, "requires m = 1, 1 < n < 2");
        return model::threshold_caseVI(p.n, l1);
    });
    row("lower_bound_caseVII", [&] {
        in_case({model::Case::C7}, "requires m = 1, n > 2");
        return model::threshold_caseVII(p.n, l1);
    });
    row("apriori_bound", [&] {
        auto M = model::apriori_bound(p);
        if (!M) throw std::invalid_argument("no bound in this regime");
        return *M;
    });
    if (tag == model::Case::C3) {
        const auto A1 = solvers::compute_Ap(mesh, p.m + 1.0), A2 = solvers::compute_Ap(mesh, p.n + 1.0),
                   A3 = solvers::compute_Ap(mesh, p.m + 2.0);
        rows.emplace_back("A1", io::num(A1.value));
        rows.emplace_back("A2", io::num(A2.value));
        rows.emplace_back("A3", io::num(A3.value));
        const auto w = model::caseIII_window(p.m, p.n, A1.value, A2.value, A3.value);
        rows.emplace_back("window_lambda_under", io::num(w.lambda_under));
        rows.emplace_back("window_lambda_over", io::num(w.lambda_over));
        rows.emplace_back("window_ordered", w.lambda_ordered && w.radius_ordered ? "true" : "false");
        if (p.dim == 1) {
            const grid::Mesh unit = grid::build_mesh(grid::Domain::interval(-1.0, 1.0), 400);
            const auto s1 = solvers::compute_Ap(unit, p.m + 1.0), s3 = solvers::compute_Ap(unit, p.m + 2.0);
            row("omega_size_bound", [&] { return model::omega_size_bound(p.m, p.n, 1, s1.value, s3.value); });
        } else {
            rows.emplace_back("omega_size_bound", "n/a (computed for dim = 1 only)");
        }
    } else {
        rows.emplace_back("caseIII_window", "n/a (requires 0 < m < 1 < n < m+1)");
    }
    if (as_json) {
        json j = json::object();
        for (const auto& [k, v] : rows) j[k] = v;
        std::cout << j.dump(2) << "\n";
    } else {
        std::size_t w = 0;
        for (const auto& r : rows) w = std::max(w, r.first.size());
        for (const auto& [k, v] : rows) std::cout << k << std::string(w + 2 - k.size(), ' ') << v << "\n";
    }
    return ok;
}

int cmd_solve(const config::RunConfig& c) {
    const model::ProblemParams p = c.params();
    const grid::Mesh mesh = c.mesh();
    solvers::SolveReport r = solve_with(c, p, mesh);
    const auto dir = c.output_directory();
    io::ensure_directory(dir);
    const std::string sol = c.output.stem + "_solution.csv";
    grid::write_csv((dir / sol).string(), mesh, r.solution);
    json j;
    j["command"] = "solve";
    j["method"] = solvers::to_string(r.method);
    j["lambda"] = p.lambda;
    j["converged"] = r.converged;
    j["trivial"] = r.trivial;
    j["iterations"] = r.iterations;
    j["residual"] = r.residual_norm;
    j["energy"] = r.energy_value;
    j["sup_norm"] = r.solution.sup_norm();
    j["positivity"] = r.converged ? verify::to_string(verify::positivity_profile(mesh, r.solution)) : "n/a";
    j["message"] = r.message;
    j["warnings"] = r.warnings;
    j["solution_file"] = sol;
    j["config"] = config_json(c);
    const std::string report = c.output.stem + "_report.json";
    write_json(dir / report, j);
    std::cout << "method " << j["method"].get<std::string>() << ", converged " << (r.converged ? "yes" : "no")
              << ", residual " << io::num(r.residual_norm) << ", sup " << io::num(r.solution.sup_norm())
              << ", energy " << io::num(r.energy_value) << "\n"
              << "report " << (dir / report).string() << "\n";
    if (!r.converged) throw Failure(incomplete, "not_converged", r.message);
    return ok;
}

void write_branch_script(const std::filesystem::path& dir, const std::string& stem) {
    std::ostringstream gp;
    gp << "set datafile separator ','\n"
       << "set xlabel 'lambda'\n"
       << "set ylabel 'sup norm'\n"
       << "plot '" << stem << ".csv' using 1:2 skip 1 with linespoints title '" << stem << "'\n";
    io::write_text(dir / (stem + ".gp"), gp.str());
}

int cmd_branch(const config::RunConfig& c) {
    const model::ProblemParams p = c.params();
    const grid::Mesh mesh = c.mesh();
    continuation::Branch br;
    bool complete = true;
    if (!c.problem.lambda_values.empty()) {
        br = continuation::sweep_lambda(p, mesh, c.problem.lambda_values, c.solver.strategy, c.solver.solver);
        complete = br.gaps.empty();
    } else {
        auto seed = best_nontrivial(p, mesh, c, true);
        if (!seed) throw Failure(incomplete, "not_converged", "no nontrivial solution at the start value of lambda");
        br = continuation::continue_branch(p, mesh, seed->solution, c.branch_config());
        complete = br.termination != continuation::Termination::step_failure &&
                   br.termination != continuation::Termination::point_cap;
    }
    const auto dir = c.output_directory();
    const auto csv = continuation::write_branch(dir, c.output.stem, br, mesh, c.output.solutions);
    if (c.output.gnuplot) write_branch_script(dir, c.output.stem);
    json j;
    j["command"] = "branch";
    j["branch_file"] = csv.filename().string();
    j["folds_file"] = c.output.stem + "_folds.json";
    j["config"] = config_json(c);
    write_json(dir / (c.output.stem + "_run.json"), j);
    std::cout << br.points.size() << " points, " << br.folds.size() << " folds, " << br.gaps.size() << " gaps: "
              << (br.message.empty() ? "done" : br.message) << "\n";
    for (const auto& f : br.folds) std::cout << "fold at lambda " << io::num(f.lambda_star) << "\n";
    std::cout << "branch " << csv.string() << "\n";
    if (!complete) throw Failure(incomplete, "incomplete", br.message.empty() ? "sweep has gaps" : br.message);
    return ok;
}

void write_profile(const std::filesystem::path& path, const solvers::ShootResult& s) {
    std::ostringstream os;
    os << "r,u,du_dr\n";
    for (const auto& q : s.profile) os << io::num(q.r) << ',' << io::num(q.u) << ',' << io::num(q.du) << '\n';
    io::write_text(path, os.str());
}

int cmd_shoot(const config::RunConfig& c) {
    const model::ProblemParams p = c.params();
    const auto dir = c.output_directory();
    io::ensure_directory(dir);
    json j;
    j["command"] = "shoot";
    j["config"] = config_json(c);
    bool success = true;
    std::string failure;
    const std::string profile = c.output.stem + "_profile.csv";
    if (c.solver.height) {
        const auto s = solvers::radial_shoot(p, *c.solver.height);
        write_profile(dir / profile, s);
        j["height"] = s.a;
        j["support_radius"] = number_or_null(s.R);
        j["slope_at_zero"] = s.R ? json(s.slope_at_zero) : json(nullptr);
        j["turning_radius"] = number_or_null(s.turning_radius);
        j["steps"] = s.steps;
        j["profile_file"] = profile;
        std::cout << "height " << io::num(s.a) << ", zero at "
                  << (s.R ? io::num(*s.R) : std::string("none")) << "\n";
    } else {
        const auto br = solvers::flat_profile_bracket(p, c.solver.height_min, c.solver.height_max);
        j["primitive_root"] = number_or_null(model::primitive_root(p));
        if (!br) {
            success = false;
            failure = "no sign change of the shooting discriminant in the height range";
            j["found"] = false;
        } else {
            const auto fp = solvers::find_flat_profile(p, br->first, br->second);
            write_profile(dir / profile, fp.profile);
            j["found"] = fp.found;
            j["height"] = fp.profile.a;
            j["support_radius"] = number_or_null(fp.profile.R);
            j["slope_at_zero"] = fp.profile.slope_at_zero;
            j["iterations"] = fp.iterations;
            j["message"] = fp.message;
            j["profile_file"] = profile;
            if (fp.found && fp.profile.R) {
                const auto rs = solvers::resample_on_support(fp.profile, p.dim, c.domain.cells);
                const std::string res = c.output.stem + "_resampled.csv";
                grid::write_csv((dir / res).string(), rs.mesh, rs.u);
                j["resampled_file"] = res;
                j["resampled_residual"] = grid::residual_norm(p, rs.mesh, rs.u);
            }
            success = fp.found;
            failure = fp.message;
            std::cout << "flat profile " << (fp.found ? "found" : "not found") << ": height "
                      << io::num(fp.profile.a) << ", support radius "
                      << (fp.profile.R ? io::num(*fp.profile.R) : std::string("none")) << "\n";
        }
    }
    write_json(dir / (c.output.stem + "_shoot.json"), j);
    if (!success) throw Failure(incomplete, "not_found", failure);
    return ok;
}

/// Re-reads solution files named by a solve report or branch run manifest and re-checks residuals.
int cmd_recheck(const std::filesystem::path& file) {
    const json j = json::parse(io::read_text(file));
    const config::RunConfig c = config::parse_json(j.at("config").dump());
    const grid::Mesh mesh = c.mesh();
    const auto base = file.parent_path();
    const double tol = c.solver.solver.tol;
    std::vector<std::pair<double, std::string>> items;
    if (j.at("command") == "solve") {
        if (!j.at("converged").get<bool>()) throw Failure(incomplete, "recheck_failed", "the run did not converge");
        items.emplace_back(j.at("lambda").get<double>(), j.at("solution_file").get<std::string>());
    } else if (j.at("command") == "branch") {
        std::ifstream is(base / j.at("branch_file").get<std::string>());
        std::string line;
        std::getline(is, line);
        while (std::getline(is, line)) {
            std::vector<std::string> cols;
            std::stringstream ss(line);
            std::string col;
            while (std::getline(ss, col, ',')) cols.push_back(col);
            if (cols.size() == 7 && !cols[6].empty()) items.emplace_back(io::parse_double(cols[0]), cols[6]);
        }
        if (items.empty()) throw Failure(incomplete, "recheck_failed", "no solution files to recheck");
    } else {
        throw Failure(usage, "usage", "recheck needs a solve report or a branch run manifest");
    }
    int failures = 0;
    for (const auto& [lam, name] : items) {
        const auto u = grid::read_csv((base / name).string(), mesh);
        const auto p = c.params().with_lambda(lam);
        const double res = grid::residual_norm(p, mesh, u);
        const auto M = model::apriori_bound(p);
        const bool good = res <= tol && (!M || u.sup_norm() <= *M + 1e-8);
        if (!good) ++failures;
        std::cout << (good ? "ok   " : "FAIL ") << name << " lambda " << io::num(lam) << " residual " << io::num(res)
                  << "\n";
    }
    if (failures > 0)
        throw Failure(incomplete, "recheck_failed", std::to_string(failures) + " solution(s) failed the recheck");
    return ok;
}

int cmd_verify(const std::string& suite, const std::vector<std::string>& ids, bool all, const std::string& recheck,
               const std::filesystem::path& out_flag) {
    if (!recheck.empty()) return cmd_recheck(recheck);
    const auto dir = io::output_directory(out_flag);
    verify::SuiteSummary summary;
    if (!suite.empty()) {
        model::Case c;
        try {
            c = model::parse_case(suite);
        } catch (const std::exception& e) {
            throw Failure(usage, "usage", e.what());
        }
        summary = verify::run_suite(c, dir);
    } else if (!ids.empty()) {
        for (const auto& id : ids) summary.reports.push_back(verify::run_scenario(id, dir));
        verify::write_summary(summary, dir, "summary");
    } else if (all) {
        for (const auto& s : verify::all_scenarios()) summary.reports.push_back(verify::run_scenario(s, dir));
        verify::write_summary(summary, dir, "summary");
    } else {
        throw Failure(usage, "usage", "verify needs --suite, --scenario, --all or --recheck");
    }
    int errors = 0;
    for (const auto& r : summary.reports) {
        const char* verdict = r.infrastructure_error ? "error" : r.passed ? "pass" : "fail";
        std::cout << verdict << "  " << r.scenario_id << "  (" << io::num(r.runtime_seconds) << " s) " << r.message
                  << "\n";
        errors += r.infrastructure_error ? 1 : 0;
    }
    if (errors > 0) throw Failure(runtime_failure, "infrastructure", std::to_string(errors) + " scenario(s) errored");
    if (!summary.all_passed()) throw Failure(incomplete, "expectation_failed", "some scenarios failed");
    return ok;
}

int cmd_diagram(const std::string& name, bool list, const std::filesystem::path& out_flag, bool solutions) {
    if (list) {
        for (const auto& f : figures::all_figures()) std::cout << f.name << "  " << f.title << "\n";
        return ok;
    }
    const figures::Figure* fig = nullptr;
    try {
        fig = &figures::find_figure(name);
    } catch (const std::exception& e) {
        throw Failure(usage, "usage", e.what());
    }
    const auto dir = io::output_directory(out_flag) / fig->name;
    const auto r = figures::render(*fig, dir, solutions);
    for (const auto& m : r.messages) std::cout << m << "\n";
    std::cout << "script " << (dir / (fig->name + ".gp")).string() << "\n";
    if (!r.ok) throw Failure(incomplete, "incomplete", "some branches of " + fig->name + " could not be traced");
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady states of -Δu = (1-u)u^m - λu^n with zero Dirichlet data"};
    app.require_subcommand(1);

    double cm = 0.0, cn = 0.0;
    bool as_json = false;
    auto* classify = app.add_subcommand("classify", "case tag and the results that apply");
    classify->add_option("--m", cm, "exponent m")->required();
    classify->add_option("--n", cn, "exponent n")->required();
    classify->add_flag("--json", as_json, "print JSON");

    ConfigFlags thr, sol, bra, sho;
    auto* thresholds = app.add_subcommand("thresholds", "closed-form thresholds for the parameters and domain");
    add_problem_flags(thresholds, thr);
    thresholds->add_flag("--json", as_json, "print JSON");

    auto* solve = app.add_subcommand("solve", "single solve");
    add_problem_flags(solve, sol);
    sol.add(solve, "method", "solver", "method", "newton, minimize, monotone or mountain_pass");
    sol.add(solve, "starts", "solver", "starts", "number of varied initial states");

    auto* branch = app.add_subcommand("branch", "pseudo-arclength branch or λ sweep");
    add_problem_flags(branch, bra);
    bra.add(branch, "lambda-min", "problem", "lambda_min", "lower end of the λ window");
    bra.add(branch, "lambda-max", "problem", "lambda_max", "upper end of the λ window");
    bra.add(branch, "lambda-values", "problem", "lambda_values", "comma list for a sweep");
    bra.add(branch, "strategy", "solver", "strategy", "warm, fresh or warm_then_fresh");
    bra.add(branch, "starts", "solver", "starts", "number of varied initial states");
    bra.add(branch, "ds", "solver", "ds", "initial arclength step");
    bra.add(branch, "ds-max", "solver", "ds_max", "largest arclength step");
    bra.add(branch, "direction", "solver", "direction", "+1 or -1");
    bra.add(branch, "max-points", "solver", "max_points", "point cap");
    branch->add_flag("--no-solutions", bra.no_solutions, "skip per-point solution files");

    auto* shoot = app.add_subcommand("shoot", "radial shooting and flat profiles");
    add_problem_flags(shoot, sho);
    sho.add(shoot, "height", "solver", "height", "single shot from this height");
    sho.add(shoot, "height-min", "solver", "height_min", "lower end of the flat-profile search");
    sho.add(shoot, "height-max", "solver", "height_max", "upper end of the flat-profile search");

    std::string suite, recheck;
    std::vector<std::string> ids;
    bool all = false;
    std::string verify_out = "autocat-out";
    auto* verifyc = app.add_subcommand("verify", "scenario suites and re-validation of outputs");
    verifyc->add_option("--suite", suite, "case tag C1 to C7");
    verifyc->add_option("--scenario", ids, "scenario id (repeatable)");
    verifyc->add_flag("--all", all, "every suite");
    verifyc->add_option("--recheck", recheck, "solve report or branch run manifest to re-validate");
    verifyc->add_option("--output-dir", verify_out, "output directory");

    std::string figure;
    bool list = false, no_solutions = false;
    std::string diagram_out = "autocat-out";
    auto* diagram = app.add_subcommand("diagram", "data and gnuplot script behind a figure");
    diagram->add_option("--figure", figure, "fig3 to fig12");
    diagram->add_flag("--list", list, "list the figures and their defaults");
    diagram->add_option("--output-dir", diagram_out, "output directory");
    diagram->add_flag("--no-solutions", no_solutions, "skip per-point solution files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("usage", e.what());
        return usage;
    }

    try {
        if (*classify) return cmd_classify(cm, cn, as_json);
        if (*thresholds) return cmd_thresholds(thr.build(), as_json);
        if (*solve) return cmd_solve(sol.build());
        if (*branch) return cmd_branch(bra.build());
        if (*shoot) return cmd_shoot(sho.build());
        if (*verifyc) return cmd_verify(suite, ids, all, recheck, verify_out);
        if (*diagram) {
            if (figure.empty() && !list) throw Failure(usage, "usage", "diagram needs --figure or --list");
            return cmd_diagram(figure, list, diagram_out, !no_solutions);
        }
    } catch (const Failure& f) {
        print_error(f.kind, f.what());
        return f.code;
    } catch (const config::ConfigError& e) {
        print_error("usage", e.what());
        return usage;
    } catch (const std::invalid_argument& e) {
        print_error("usage", e.what());
        return usage;
    } catch (const std::exception& e) {
        print_error("runtime", e.what());
        return runtime_failure;
    }
    return usage;
}
