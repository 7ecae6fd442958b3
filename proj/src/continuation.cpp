#include "autocat/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "autocat/io.hpp"
#include "json.hpp"

namespace autocat::continuation {

void BranchConfig::validate() const {
    solver.validate();
    if (!(ds > 0.0 && ds_min > 0.0 && ds_max >= ds && ds >= ds_min))
        throw std::invalid_argument("step sizes must satisfy 0 < ds_min <= ds <= ds_max");
    if (!(lambda_min < lambda_max)) throw std::invalid_argument("lambda window is empty");
    if (direction != 1 && direction != -1) throw std::invalid_argument("direction must be +1 or -1");
    if (max_points < 1 || max_corrector < 1) throw std::invalid_argument("caps must be positive");
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::left_bound: return "left_bound";
        case Termination::right_bound: return "right_bound";
        case Termination::step_failure: return "step_failure";
        case Termination::trivial_collapse: return "trivial_collapse";
        case Termination::point_cap: return "point_cap";
        case Termination::completed: return "completed";
    }
    return "?";
}

std::string to_string(SweepStrategy s) {
    switch (s) {
        case SweepStrategy::warm_start: return "warm";
        case SweepStrategy::fresh_start: return "fresh";
        case SweepStrategy::warm_then_fresh: return "warm_then_fresh";
    }
    return "?";
}

SweepStrategy parse_strategy(const std::string& s) {
    if (s == "warm") return SweepStrategy::warm_start;
    if (s == "fresh") return SweepStrategy::fresh_start;
    if (s == "warm_then_fresh") return SweepStrategy::warm_then_fresh;
    throw std::invalid_argument("unknown sweep strategy '" + s + "'");
}

Stability stability_indicator(const ProblemParams& p, const Mesh& mesh, const GridFunction& u, double floor) {
    Stability st;
    const linalg::Tridiagonal& K = mesh.stiffness();
    const std::size_t n = mesh.size();
    std::vector<double> d(n), o(n > 0 ? n - 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
        double fp = 0.0;
        if (u[i] > floor) fp = model::reaction_derivative(p, u[i]);
        else st.truncated = true;
        d[i] = K.diag[i] / mesh.weights[i] - fp;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) o[i] = K.upper[i] / std::sqrt(mesh.weights[i] * mesh.weights[i + 1]);
    const double mu = linalg::smallest_eigenvalue(d, o);
    if (std::isfinite(mu)) st.mu1 = mu;
    return st;
}

BranchPoint make_point(const ProblemParams& p, const Mesh& mesh, const GridFunction& u, double floor) {
    BranchPoint bp;
    bp.lambda = p.lambda;
    bp.solution = u;
    bp.sup_norm = u.sup_norm();
    bp.l2_norm = grid::l2_norm(mesh, u);
    bp.energy = grid::energy(p, mesh, u);
    bp.residual = grid::residual_norm(p, mesh, u);
    bp.stability = stability_indicator(p, mesh, u, floor);
    return bp;
}

namespace {

using Vec = std::vector<double>;

double metric_norm(const Mesh& mesh, const Vec& du, double dl) {
    double s = dl * dl;
    for (std::size_t i = 0; i < du.size(); ++i) s += mesh.weights[i] * du[i] * du[i];
    return std::sqrt(s);
}

struct Tangent {
    Vec u;
    double l = 0.0;
};

std::optional<Tangent> initial_tangent(const ProblemParams& p, const Mesh& mesh, const GridFunction& u,
                                       double eps_reg, int direction) {
    linalg::Tridiagonal J = grid::jacobian(p, mesh, u, eps_reg);
    Vec rhs(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        rhs[i] = u[i] > 0.0 ? -mesh.weights[i] * std::pow(u[i], p.n) : 0.0;
    auto du = linalg::solve(J, rhs);  // J du/dλ = -∂G/∂λ with ∂G/∂λ = W (u⁺)ⁿ
    if (!du) return std::nullopt;
    Tangent t{*du, 1.0};
    const double nrm = metric_norm(mesh, t.u, t.l);
    for (double& v : t.u) v *= direction / nrm;
    t.l = direction / nrm;
    return t;
}

struct Corrected {
    GridFunction u;
    double lambda = 0.0;
};

/// Newton on the residual plus the arclength hyperplane, in the lifted variable u = v^q.
std::optional<Corrected> correct(const ProblemParams& p0, const Mesh& mesh, const GridFunction& u_pred,
                                 double l_pred, const Tangent& t, double q, const BranchConfig& cfg) {
    const std::size_t n = mesh.size();
    GridFunction v(n), u(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = std::pow(std::max(u_pred[i], 0.0), 1.0 / q);
        u[i] = std::pow(v[i], q);
    }
    double l = l_pred;
    for (int it = 0; it <= cfg.max_corrector; ++it) {
        const ProblemParams p = p0.with_lambda(l);
        const double rn = grid::residual_norm(p, mesh, u);
        if (!std::isfinite(rn)) return std::nullopt;
        double N = t.l * (l - l_pred);
        for (std::size_t i = 0; i < n; ++i) N += mesh.weights[i] * t.u[i] * (u[i] - u_pred[i]);
        if (rn <= cfg.solver.tol && std::abs(N) <= 1e-8 * (1.0 + std::abs(l))) return Corrected{u, l};
        if (it == cfg.max_corrector) break;
        GridFunction G = grid::energy_gradient(p, mesh, u);
        linalg::Tridiagonal J = grid::lifted_jacobian(p, mesh, v, q);
        Vec b(n), c(n), f(n);
        for (std::size_t i = 0; i < n; ++i) {
            b[i] = u[i] > 0.0 ? mesh.weights[i] * std::pow(u[i], p.n) : 0.0;
            c[i] = mesh.weights[i] * t.u[i] * (q == 1.0 ? 1.0 : q * std::pow(v[i], q - 1.0));
            f[i] = -G[i];
        }
        auto s = linalg::solve_bordered(J, b, c, t.l, f, -N);
        if (!s) return std::nullopt;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = v[i] + s->x[i];
            v[i] = x >= 0.0 ? x : 0.01 * v[i];
            u[i] = std::pow(v[i], q);
        }
        l += s->y;
    }
    return std::nullopt;
}

bool collapsed(double sup, const BranchConfig& cfg) { return sup < 10.0 * cfg.solver.eps_reg; }

}  // namespace

Branch continue_branch(const ProblemParams& p0, const Mesh& mesh, const GridFunction& u0, const BranchConfig& cfg) {
    cfg.validate();
    if (u0.size() != mesh.size()) throw std::invalid_argument("initial solution does not match mesh");
    if (!(grid::residual_norm(p0, mesh, u0) <= cfg.solver.tol))
        throw std::invalid_argument("initial point is not a converged solution");

    Branch br;
    br.points.push_back(make_point(p0, mesh, u0, cfg.support_floor));
    auto t0 = initial_tangent(p0, mesh, u0, cfg.solver.eps_reg, cfg.direction);
    if (!t0) {
        br.termination = Termination::step_failure;
        br.message = "singular linearization at the initial point";
        return br;
    }
    Tangent t = *t0;
    GridFunction u = u0;
    double l = p0.lambda;
    double ds = cfg.ds;
    double s_total = 0.0;
    int trivial_run = collapsed(u.sup_norm(), cfg) ? 1 : 0;

    const double q = grid::lifting_exponent(p0.with_lambda(p0.lambda != 0.0 ? p0.lambda : 1.0));
    while (static_cast<int>(br.points.size()) < cfg.max_points) {
        std::optional<Corrected> next;
        Vec du(u.size());
        double dl = 0.0, step = 0.0;
        while (ds >= cfg.ds_min) {
            GridFunction up(u.size());
            for (std::size_t i = 0; i < u.size(); ++i) up[i] = u[i] + ds * t.u[i];
            next = correct(p0, mesh, up, l + ds * t.l, t, q, cfg);
            if (next) {
                for (std::size_t i = 0; i < u.size(); ++i) du[i] = next->u[i] - u[i];
                dl = next->lambda - l;
                step = metric_norm(mesh, du, dl);
                double cosang = step > 0.0 ? t.l * dl : 0.0;
                for (std::size_t i = 0; i < u.size(); ++i) cosang += mesh.weights[i] * t.u[i] * du[i];
                cosang = step > 0.0 ? cosang / step : 0.0;
                // reject jumps to another branch unless the step is already tiny
                const double rel = metric_norm(mesh, du, 0.0) / std::max(grid::l2_norm(mesh, u), 1e-300);
                const bool tiny = ds <= 1e3 * cfg.ds_min;
                if (step <= 2.0 * ds && ((cosang >= 0.9 && rel <= 0.25) || tiny)) break;
                next.reset();
            }
            ds *= 0.5;
        }
        if (!next) {
            br.termination = Termination::step_failure;
            br.message = "corrector failed at the minimum step";
            break;
        }
        if (!(step > 0.0)) {
            br.termination = Termination::step_failure;
            br.message = "zero-length step";
            break;
        }
        Tangent tn{du, dl / step};
        for (double& v : tn.u) v /= step;
        t = std::move(tn);
        u = std::move(next->u);
        l = next->lambda;
        s_total += step;

        if ((l < cfg.lambda_min && dl < 0.0) || (l > cfg.lambda_max && dl > 0.0)) {
            br.termination = l < cfg.lambda_min ? Termination::left_bound : Termination::right_bound;
            br.message = "left the lambda window";
            break;
        }
        BranchPoint bp = make_point(p0.with_lambda(l), mesh, u, cfg.support_floor);
        bp.arclength = s_total;
        br.points.push_back(std::move(bp));

        trivial_run = collapsed(u.sup_norm(), cfg) ? trivial_run + 1 : 0;
        if (trivial_run >= 3) {
            br.termination = Termination::trivial_collapse;
            br.message = "branch collapsed onto the trivial solution";
            break;
        }
        ds = std::min(ds * 1.5, cfg.ds_max);
    }
    if (static_cast<int>(br.points.size()) >= cfg.max_points) {
        br.termination = Termination::point_cap;
        br.message = "point cap reached";
    }
    br.folds = detect_fold(br);
    return br;
}

std::vector<Fold> detect_fold(const Branch& branch) {
    std::vector<Fold> out;
    const auto& P = branch.points;
    if (P.size() < 3) return out;
    for (std::size_t k = 1; k + 1 < P.size(); ++k) {
        const double d0 = P[k].lambda - P[k - 1].lambda;
        const double d1 = P[k + 1].lambda - P[k].lambda;
        if (!(d0 * d1 < 0.0)) continue;
        const double s0 = P[k - 1].arclength, s1 = P[k].arclength, s2 = P[k + 1].arclength;
        const double l0 = P[k - 1].lambda, l1 = P[k].lambda, l2 = P[k + 1].lambda;
        // Newton form of the interpolating parabola, vertex at dλ/ds = 0
        const double f01 = (l1 - l0) / (s1 - s0);
        const double f12 = (l2 - l1) / (s2 - s1);
        const double a = (f12 - f01) / (s2 - s0);
        double lstar = l1;
        if (a != 0.0 && std::isfinite(a)) {
            const double sv = 0.5 * (s0 + s1) - f01 / (2.0 * a);
            lstar = l0 + f01 * (sv - s0) + a * (sv - s0) * (sv - s1);
        }
        out.push_back({lstar, k - 1, k + 1});
    }
    return out;
}

std::vector<GridFunction> fresh_starts(const ProblemParams& p, const Mesh& mesh, int count) {
    const grid::EigenPair eig = grid::principal_eigenpair(mesh);
    const double M = model::apriori_bound(p).value_or(1.0);
    std::mt19937_64 rng(20240917u);
    std::uniform_real_distribution<double> jitter(0.8, 1.2);
    const double shapes[] = {1.0, 0.5, 2.0, 0.25};
    std::vector<GridFunction> out;
    for (int j = 0; j < count; ++j) {
        const double amp = M * std::pow(10.0, -3.0 + 3.0 * j / std::max(count - 1, 1));
        const double e = shapes[j % 4];
        GridFunction g(mesh.size());
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = amp * std::pow(eig.phi1[i], e) * jitter(rng);
        out.push_back(std::move(g));
    }
    return out;
}

std::optional<double> last_negative_energy_lambda(const Branch& branch, double floor) {
    std::optional<double> best;
    for (const BranchPoint& bp : branch.points)
        if (bp.sup_norm > floor && bp.energy < 0.0 && (!best || bp.lambda > *best)) best = bp.lambda;
    return best;
}

Branch sweep_lambda(const ProblemParams& p_template, const Mesh& mesh, const std::vector<double>& lambdas,
                    SweepStrategy strategy, const solvers::SolverConfig& cfg) {
    cfg.validate();
    if (!std::is_sorted(lambdas.begin(), lambdas.end()) &&
        !std::is_sorted(lambdas.begin(), lambdas.end(), std::greater<>()))
        throw std::invalid_argument("lambda values must be ordered");
    Branch br;
    std::optional<GridFunction> prev;
    for (double lam : lambdas) {
        const ProblemParams p = p_template.with_lambda(lam);
        std::optional<GridFunction> found;
        if (prev && strategy != SweepStrategy::fresh_start) {
            auto r = solvers::newton_solve(p, mesh, *prev, cfg);
            if (solvers::is_nontrivial(r)) found = r.solution;
        }
        if (!found && strategy != SweepStrategy::warm_start) {
            if (model::constant_supersolution_exists(p)) {
                try {
                    const grid::EigenPair eig = grid::principal_eigenpair(mesh);
                    const double M = solvers::build_supersolution(p);
                    auto sub = solvers::build_subsolution(p, eig, M);
                    if (sub.valid) {
                        auto r = solvers::monotone_iteration(p, mesh, sub.u, GridFunction(mesh.size(), M), cfg);
                        if (!solvers::is_nontrivial(r) && r.upper_limit)
                            r = solvers::newton_solve(p, mesh, *r.upper_limit, cfg);
                        if (solvers::is_nontrivial(r)) found = r.solution;
                    }
                } catch (const std::invalid_argument&) {
                }
            }
            if (!found) {
                for (const GridFunction& s : fresh_starts(p, mesh, 6)) {
                    auto r = solvers::global_minimize(p, mesh, s, cfg);
                    if (!solvers::is_nontrivial(r)) r = solvers::newton_solve(p, mesh, s, cfg);
                    if (solvers::is_nontrivial(r)) {
                        found = r.solution;
                        break;
                    }
                }
            }
        }
        if (found) {
            br.points.push_back(make_point(p, mesh, *found, 1e-8));
            if (br.points.size() > 1) {
                const auto& a = br.points[br.points.size() - 2];
                const auto& b = br.points.back();
                Vec du(found->size());
                for (std::size_t i = 0; i < du.size(); ++i) du[i] = b.solution[i] - a.solution[i];
                br.points.back().arclength = a.arclength + metric_norm(mesh, du, b.lambda - a.lambda);
            }
            prev = found;
        } else {
            br.gaps.push_back({lam, "no nontrivial solution found"});
        }
    }
    br.termination = Termination::completed;
    br.folds = detect_fold(br);
    return br;
}

std::filesystem::path write_branch(const std::filesystem::path& dir, const std::string& stem, const Branch& branch,
                                   const Mesh& mesh, bool write_solutions) {
    io::ensure_directory(dir);
    std::ostringstream csv;
    csv << "lambda,sup_norm,l2_norm,energy,stability_indicator,truncated_flag,solution_file\n";
    const std::filesystem::path sol_dir = dir / (stem + "_solutions");
    for (std::size_t k = 0; k < branch.points.size(); ++k) {
        const BranchPoint& bp = branch.points[k];
        std::string ref;
        if (write_solutions) {
            char name[32];
            std::snprintf(name, sizeof name, "point_%05zu.csv", k);
            io::ensure_directory(sol_dir);
            grid::write_csv((sol_dir / name).string(), mesh, bp.solution);
            ref = (std::filesystem::path(stem + "_solutions") / name).string();
        }
        csv << io::num(bp.lambda) << ',' << io::num(bp.sup_norm) << ',' << io::num(bp.l2_norm) << ','
            << io::num(bp.energy) << ',' << (bp.stability.mu1 ? io::num(*bp.stability.mu1) : std::string("nan"))
            << ',' << (bp.stability.truncated ? 1 : 0) << ',' << ref << '\n';
    }
    const std::filesystem::path csv_path = dir / (stem + ".csv");
    io::write_text(csv_path, csv.str());

    nlohmann::ordered_json j;
    j["termination"] = to_string(branch.termination);
    j["message"] = branch.message;
    j["points"] = branch.points.size();
    auto folds = nlohmann::ordered_json::array();
    for (const Fold& f : branch.folds)
        folds.push_back({{"lambda_star", f.lambda_star}, {"index_before", f.index_before}, {"index_after", f.index_after}});
    j["folds"] = folds;
    const auto last_negative = last_negative_energy_lambda(branch);
    j["last_negative_energy_lambda"] = last_negative ? nlohmann::ordered_json(*last_negative) : nullptr;
    auto gaps = nlohmann::ordered_json::array();
    for (const Gap& g : branch.gaps) gaps.push_back({{"lambda", g.lambda}, {"reason", g.reason}});
    j["gaps"] = gaps;
    io::write_text(dir / (stem + "_folds.json"), j.dump(2) + "\n");
    return csv_path;
}

}  // namespace autocat::continuation
