#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "autocat/continuation.hpp"
#include "autocat/run_config.hpp"
#include "autocat/solvers.hpp"
#include "autocat/verify.hpp"

namespace py = pybind11;
using namespace autocat;

namespace {

py::array_t<double> to_array(const grid::GridFunction& u) {
    return py::array_t<double>(static_cast<py::ssize_t>(u.size()), u.values.data());
}

grid::GridFunction from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 1) throw std::invalid_argument("expected a one-dimensional array");
    return grid::GridFunction(std::vector<double>(a.data(), a.data() + a.size()));
}

}  // namespace

PYBIND11_MODULE(_autocat, mod) {
    mod.doc() = "Steady states of -Δu = (1-u)u^m - λu^n with zero Dirichlet data";

    // model -------------------------------------------------------------------------
    py::enum_<model::Case>(mod, "Case")
        .value("C1", model::Case::C1)
        .value("C2", model::Case::C2)
        .value("C3", model::Case::C3)
        .value("C4", model::Case::C4)
        .value("C5", model::Case::C5)
        .value("C6", model::Case::C6)
        .value("C7", model::Case::C7);

    py::class_<model::ProblemParams>(mod, "ProblemParams")
        .def(py::init<double, double, double, int>(), py::arg("m"), py::arg("n"), py::arg("lam") = 0.0,
             py::arg("dim") = 1)
        .def_readonly("m", &model::ProblemParams::m)
        .def_readonly("n", &model::ProblemParams::n)
        .def_readonly("lam", &model::ProblemParams::lambda)
        .def_readonly("dim", &model::ProblemParams::dim)
        .def("with_lambda", &model::ProblemParams::with_lambda)
        .def("__repr__", [](const model::ProblemParams& p) {
            return "ProblemParams(m=" + std::to_string(p.m) + ", n=" + std::to_string(p.n) +
                   ", lam=" + std::to_string(p.lambda) + ", dim=" + std::to_string(p.dim) + ")";
        });

    mod.def("classify", [](double m, double n) {
        const auto t = model::classify(m, n);
        return py::make_tuple(model::to_string(t.tag), model::to_string(t.subcase));
    });
    mod.def("reaction", &model::reaction);
    mod.def("reaction_derivative", &model::reaction_derivative);
    mod.def("reaction_primitive", &model::reaction_primitive);
    mod.def("primitive_root", &model::primitive_root);
    mod.def("apriori_bound", &model::apriori_bound);
    mod.def("lambda_c", &model::lambda_c);
    mod.def("threshold_fold_caseI", &model::threshold_fold_caseI);
    mod.def("caseIb_admissible", [](double m, int N) {
        const auto i = model::caseIb_admissible(m, N);
        return py::make_tuple(i.lo, i.hi);
    });
    mod.def("threshold_caseIV_nonexistence", &model::threshold_caseIV_nonexistence);
    mod.def("threshold_caseV", &model::threshold_caseV);
    mod.def("threshold_caseVI", &model::threshold_caseVI);
    mod.def("threshold_caseVII", &model::threshold_caseVII);
    mod.def("existence_verdict", [](const model::ProblemParams& p, double lambda1) {
        const auto v = model::existence_verdict(p, lambda1);
        return py::make_tuple(model::to_string(v.kind), v.citations);
    });

    // grid ----------------------------------------------------------------------------
    py::class_<grid::Mesh>(mod, "Mesh")
        .def_property_readonly("nodes", [](const grid::Mesh& m) { return m.nodes; })
        .def_property_readonly("weights", [](const grid::Mesh& m) { return m.weights; })
        .def_readonly("h", &grid::Mesh::h)
        .def_readonly("cells", &grid::Mesh::cells)
        .def("__len__", &grid::Mesh::size);

    mod.def(
        "interval_mesh", [](double a, double b, int cells) { return grid::build_mesh(grid::Domain::interval(a, b), cells); },
        py::arg("a"), py::arg("b"), py::arg("cells"));
    mod.def(
        "ball_mesh", [](int N, double R, int cells) { return grid::build_mesh(grid::Domain::radial_ball(N, R), cells); },
        py::arg("dim"), py::arg("radius"), py::arg("cells"));
    mod.def("principal_eigenpair", [](const grid::Mesh& mesh) {
        const auto e = grid::principal_eigenpair(mesh);
        return py::make_tuple(e.lambda1, to_array(e.phi1));
    });
    mod.def("energy", [](const model::ProblemParams& p, const grid::Mesh& mesh, py::array_t<double> u) {
        return grid::energy(p, mesh, from_array(u));
    });
    mod.def("energy_gradient", [](const model::ProblemParams& p, const grid::Mesh& mesh, py::array_t<double> u) {
        return to_array(grid::energy_gradient(p, mesh, from_array(u)));
    });
    mod.def("residual_norm", [](const model::ProblemParams& p, const grid::Mesh& mesh, py::array_t<double> u) {
        return grid::residual_norm(p, mesh, from_array(u));
    });

    // solvers ---------------------------------------------------------------------------
    py::class_<solvers::SolverConfig>(mod, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("tol", &solvers::SolverConfig::tol)
        .def_readwrite("max_iter", &solvers::SolverConfig::max_iter)
        .def_readwrite("eps_reg", &solvers::SolverConfig::eps_reg)
        .def_readwrite("damping", &solvers::SolverConfig::damping);

    py::class_<solvers::SolveReport>(mod, "SolveReport")
        .def_readonly("converged", &solvers::SolveReport::converged)
        .def_readonly("iterations", &solvers::SolveReport::iterations)
        .def_readonly("residual_norm", &solvers::SolveReport::residual_norm)
        .def_readonly("energy", &solvers::SolveReport::energy_value)
        .def_readonly("trivial", &solvers::SolveReport::trivial)
        .def_readonly("message", &solvers::SolveReport::message)
        .def_property_readonly("method", [](const solvers::SolveReport& r) { return solvers::to_string(r.method); })
        .def_property_readonly("solution", [](const solvers::SolveReport& r) { return to_array(r.solution); });

    const solvers::SolverConfig default_cfg;
    mod.def(
        "newton_solve",
        [](const model::ProblemParams& p, const grid::Mesh& mesh, py::array_t<double> u0,
           const solvers::SolverConfig& cfg) { return solvers::newton_solve(p, mesh, from_array(u0), cfg); },
        py::arg("params"), py::arg("mesh"), py::arg("u0"), py::arg("config") = default_cfg);
    mod.def(
        "global_minimize",
        [](const model::ProblemParams& p, const grid::Mesh& mesh, py::array_t<double> u0,
           const solvers::SolverConfig& cfg) { return solvers::global_minimize(p, mesh, from_array(u0), cfg); },
        py::arg("params"), py::arg("mesh"), py::arg("u0"), py::arg("config") = default_cfg);
    mod.def(
        "monotone_iteration",
        [](const model::ProblemParams& p, const grid::Mesh& mesh, py::array_t<double> sub, py::array_t<double> super,
           const solvers::SolverConfig& cfg) {
            return solvers::monotone_iteration(p, mesh, from_array(sub), from_array(super), cfg);
        },
        py::arg("params"), py::arg("mesh"), py::arg("sub"), py::arg("super"), py::arg("config") = default_cfg);
    mod.def(
        "mountain_pass",
        [](const model::ProblemParams& p, const grid::Mesh& mesh, py::array_t<double> end,
           const solvers::SolverConfig& cfg) { return solvers::mountain_pass(p, mesh, from_array(end), cfg); },
        py::arg("params"), py::arg("mesh"), py::arg("u_end"), py::arg("config") = default_cfg);
    mod.def("build_supersolution", &solvers::build_supersolution);

    py::class_<solvers::ShootResult>(mod, "ShootResult")
        .def_readonly("a", &solvers::ShootResult::a)
        .def_readonly("R", &solvers::ShootResult::R)
        .def_readonly("slope_at_zero", &solvers::ShootResult::slope_at_zero)
        .def_readonly("turning_radius", &solvers::ShootResult::turning_radius)
        .def("evaluate", &solvers::ShootResult::evaluate)
        .def_property_readonly("profile", [](const solvers::ShootResult& s) {
            py::list out;
            for (const auto& q : s.profile) out.append(py::make_tuple(q.r, q.u, q.du));
            return out;
        });
    mod.def("radial_shoot", [](const model::ProblemParams& p, double a) { return solvers::radial_shoot(p, a); });
    mod.def("find_flat_profile", [](const model::ProblemParams& p, double a_lo, double a_hi) {
        const auto r = solvers::find_flat_profile(p, a_lo, a_hi);
        return py::make_tuple(r.found, r.profile, r.message);
    });
    mod.def("flat_profile_bracket", [](const model::ProblemParams& p, double a_min, double a_max) {
        return solvers::flat_profile_bracket(p, a_min, a_max);
    });

    // continuation -----------------------------------------------------------------------
    py::class_<continuation::BranchConfig>(mod, "BranchConfig")
        .def(py::init<>())
        .def_readwrite("solver", &continuation::BranchConfig::solver)
        .def_readwrite("ds", &continuation::BranchConfig::ds)
        .def_readwrite("ds_min", &continuation::BranchConfig::ds_min)
        .def_readwrite("ds_max", &continuation::BranchConfig::ds_max)
        .def_readwrite("lambda_min", &continuation::BranchConfig::lambda_min)
        .def_readwrite("lambda_max", &continuation::BranchConfig::lambda_max)
        .def_readwrite("direction", &continuation::BranchConfig::direction)
        .def_readwrite("max_points", &continuation::BranchConfig::max_points);

    py::class_<continuation::Branch>(mod, "Branch")
        .def_property_readonly("lambdas",
                               [](const continuation::Branch& b) {
                                   std::vector<double> v;
                                   for (const auto& p : b.points) v.push_back(p.lambda);
                                   return v;
                               })
        .def_property_readonly("sup_norms",
                               [](const continuation::Branch& b) {
                                   std::vector<double> v;
                                   for (const auto& p : b.points) v.push_back(p.sup_norm);
                                   return v;
                               })
        .def_property_readonly("energies",
                               [](const continuation::Branch& b) {
                                   std::vector<double> v;
                                   for (const auto& p : b.points) v.push_back(p.energy);
                                   return v;
                               })
        .def_property_readonly("folds",
                               [](const continuation::Branch& b) {
                                   std::vector<double> v;
                                   for (const auto& f : b.folds) v.push_back(f.lambda_star);
                                   return v;
                               })
        .def_property_readonly("last_negative_energy_lambda",
                               [](const continuation::Branch& b) { return continuation::last_negative_energy_lambda(b); })
        .def_property_readonly("gaps",
                               [](const continuation::Branch& b) {
                                   std::vector<double> v;
                                   for (const auto& g : b.gaps) v.push_back(g.lambda);
                                   return v;
                               })
        .def_property_readonly("termination",
                               [](const continuation::Branch& b) { return continuation::to_string(b.termination); })
        .def_readonly("message", &continuation::Branch::message);

    mod.def(
        "continue_branch",
        [](const model::ProblemParams& p, const grid::Mesh& mesh, py::array_t<double> u0,
           const continuation::BranchConfig& cfg) {
            return continuation::continue_branch(p, mesh, from_array(u0), cfg);
        },
        py::arg("params"), py::arg("mesh"), py::arg("u0"), py::arg("config") = continuation::BranchConfig{});
    mod.def(
        "sweep_lambda",
        [](const model::ProblemParams& p, const grid::Mesh& mesh, const std::vector<double>& lambdas,
           const std::string& strategy) {
            return continuation::sweep_lambda(p, mesh, lambdas, continuation::parse_strategy(strategy));
        },
        py::arg("params"), py::arg("mesh"), py::arg("lambdas"), py::arg("strategy") = "warm_then_fresh");

    // verify ---------------------------------------------------------------------------------
    mod.def("scenario_ids", []() {
        std::vector<std::string> ids;
        for (const auto& s : verify::all_scenarios()) ids.push_back(s.id);
        return ids;
    });
    mod.def("run_scenario", [](const std::string& id, const std::filesystem::path& dir) {
        const auto r = verify::run_scenario(id, dir);
        py::dict d;
        d["scenario"] = r.scenario_id;
        d["suite"] = r.suite;
        d["passed"] = r.passed;
        d["infrastructure_error"] = r.infrastructure_error;
        d["message"] = r.message;
        return d;
    });

    // config ---------------------------------------------------------------------------------
    mod.def("parse_config", [](const std::string& text) { return config::parse(text).to_json(); });
}
