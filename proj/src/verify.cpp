#include "autocat/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <regex>
#include <sstream>

#include "autocat/io.hpp"
#include "json.hpp"

namespace autocat::verify {

std::string to_string(PositivityClass c) {
    switch (c) {
        case PositivityClass::strictly_positive: return "strictly_positive";
        case PositivityClass::boundary_flat: return "boundary_flat";
        case PositivityClass::interior_dead_core: return "interior_dead_core";
        case PositivityClass::zero: return "zero";
    }
    return "?";
}

double default_delta(const GridFunction& u, double eps_reg) { return 10.0 * eps_reg * (1.0 + u.sup_norm()); }

PositivityClass positivity_profile(const Mesh& mesh, const GridFunction& u, std::optional<double> delta) {
    const double d = delta.value_or(default_delta(u));
    const std::size_t n = u.size();
    if (n == 0 || u.sup_norm() <= d) return PositivityClass::zero;
    const bool radial = mesh.domain.kind == grid::DomainKind::radial_ball;

    std::size_t first = n, last = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (u[i] > d) {
            first = std::min(first, i);
            last = i;
        }
    // a dead block with positive nodes on both sides, or around the origin of a ball
    for (std::size_t i = first; i <= last; ++i)
        if (u[i] <= d) return PositivityClass::interior_dead_core;
    if (radial && first > 0) return PositivityClass::interior_dead_core;

    auto inward_slope = [&](double u1, double u2) { return (4.0 * u1 - u2) / (2.0 * mesh.h); };
    const bool right_layer = last + 1 < n;
    const bool left_layer = !radial && first > 0;
    if (right_layer || left_layer) return PositivityClass::boundary_flat;
    const double threshold = d / mesh.h;
    if (n >= 2) {
        if (inward_slope(u[n - 1], u[n - 2]) <= threshold) return PositivityClass::boundary_flat;
        if (!radial && inward_slope(u[0], u[1]) <= threshold) return PositivityClass::boundary_flat;
    }
    return PositivityClass::strictly_positive;
}

std::string Context::save(const std::string& name, const Mesh& mesh, const GridFunction& u) {
    io::ensure_directory(dir_);
    grid::write_csv((dir_ / name).string(), mesh, u);
    return name;
}

std::string Context::save_branch(const std::string& stem, const continuation::Branch& br, const Mesh& mesh) {
    return continuation::write_branch(dir_, stem, br, mesh, false).filename().string();
}

bool well_formed_id(const std::string& id) {
    static const std::regex re("^[a-zA-Z0-9]+(-[a-zA-Z0-9]+)*/[a-z0-9]+(-[a-z0-9]+)*$");
    return std::regex_match(id, re);
}

std::vector<Scenario> all_scenarios() {
    std::vector<Scenario> out;
    for (auto c : {model::Case::C1, model::Case::C2, model::Case::C3, model::Case::C4, model::Case::C5,
                   model::Case::C6, model::Case::C7}) {
        auto s = scenario_suite(c);
        out.insert(out.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
    }
    return out;
}

namespace {

std::string dir_name(const std::string& id) {
    std::string s = id;
    std::replace(s.begin(), s.end(), '/', '_');
    return s;
}

nlohmann::ordered_json to_json(const VerifyReport& r) {
    nlohmann::ordered_json j;
    j["scenario"] = r.scenario_id;
    j["citation"] = r.citation;
    j["suite"] = r.suite;
    j["passed"] = r.passed;
    j["infrastructure_error"] = r.infrastructure_error;
    j["message"] = r.message;
    auto meas = nlohmann::ordered_json::array();
    for (const auto& m : r.measured) {
        nlohmann::ordered_json e;
        e["name"] = m.name;
        e["value"] = std::isfinite(m.value) ? nlohmann::ordered_json(m.value) : nlohmann::ordered_json(io::num(m.value));
        if (m.limit) {
            e["relation"] = m.relation;
            e["limit"] = *m.limit;
        }
        meas.push_back(e);
    }
    j["measured"] = meas;
    j["notes"] = r.notes;
    j["evidence"] = r.evidence;
    j["runtime_seconds"] = r.runtime_seconds;
    return j;
}

}  // namespace

std::string report_json(const VerifyReport& r) { return to_json(r).dump(2) + "\n"; }

VerifyReport run_scenario(const Scenario& s, const std::filesystem::path& dir) {
    VerifyReport r;
    r.scenario_id = s.id;
    r.citation = s.citation;
    r.suite = model::to_string(s.suite);
    const auto t0 = std::chrono::steady_clock::now();
    const std::filesystem::path sdir = dir / r.suite / dir_name(s.id);
    try {
        if (!well_formed_id(s.id)) throw std::invalid_argument("malformed scenario id '" + s.id + "'");
        Context ctx(sdir);
        Outcome o = s.body(ctx);
        r.passed = o.passed;
        r.measured = std::move(o.measured);
        r.notes = std::move(o.notes);
        r.evidence = std::move(o.evidence);
        r.message = r.passed ? "expectation met" : "expectation failed";
    } catch (const std::exception& e) {
        r.passed = false;
        r.infrastructure_error = true;
        r.message = e.what();
    }
    r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try {
        io::write_text(sdir / "report.json", report_json(r));
    } catch (const std::exception& e) {
        r.infrastructure_error = true;
        r.passed = false;
        r.message += std::string("; report not written: ") + e.what();
    }
    return r;
}

VerifyReport run_scenario(const std::string& id, const std::filesystem::path& dir) {
    if (!well_formed_id(id)) {
        VerifyReport r;
        r.scenario_id = id;
        r.infrastructure_error = true;
        r.message = "malformed scenario id '" + id + "'";
        return r;
    }
    for (const Scenario& s : all_scenarios())
        if (s.id == id) return run_scenario(s, dir);
    VerifyReport r;
    r.scenario_id = id;
    r.infrastructure_error = true;
    r.message = "unknown scenario id '" + id + "'";
    return r;
}

bool SuiteSummary::all_passed() const {
    return std::all_of(reports.begin(), reports.end(), [](const VerifyReport& r) { return r.passed; });
}

SuiteSummary run_suite(model::Case c, const std::filesystem::path& dir) {
    SuiteSummary s;
    for (const Scenario& sc : scenario_suite(c)) s.reports.push_back(run_scenario(sc, dir));
    write_summary(s, dir / model::to_string(c), "summary");
    return s;
}

void write_summary(const SuiteSummary& s, const std::filesystem::path& dir, const std::string& stem) {
    std::ostringstream md, csv;
    md << "| scenario | citation | result | runtime (s) | message |\n|---|---|---|---|---|\n";
    csv << "scenario,citation,suite,passed,infrastructure_error,runtime_seconds,message\n";
    for (const VerifyReport& r : s.reports) {
        const std::string verdict = r.infrastructure_error ? "error" : r.passed ? "pass" : "fail";
        md << "| " << r.scenario_id << " | " << r.citation << " | " << verdict << " | " << io::num(r.runtime_seconds)
           << " | " << r.message << " |\n";
        std::string msg = r.message;
        std::replace(msg.begin(), msg.end(), ',', ';');
        csv << r.scenario_id << ',' << r.citation << ',' << r.suite << ',' << (r.passed ? 1 : 0) << ','
            << (r.infrastructure_error ? 1 : 0) << ',' << io::num(r.runtime_seconds) << ',' << msg << '\n';
    }
    io::write_text(dir / (stem + ".md"), md.str());
    io::write_text(dir / (stem + ".csv"), csv.str());
}

ProbeResult probe_nonexistence(const ProblemParams& p, const Mesh& mesh, int starts, const solvers::SolverConfig& cfg) {
    ProbeResult pr;
    const bool super = model::constant_supersolution_exists(p);
    pr.methods = {"newton", "minimize", super ? "monotone" : "mountain_pass"};
    const grid::EigenPair eig = grid::principal_eigenpair(mesh);
    const double M = super ? solvers::build_supersolution(p) : 0.0;
    auto record = [&](const solvers::SolveReport& r) {
        if (solvers::is_nontrivial(r)) {
            ++pr.nontrivial;
            if (r.solution.sup_norm() > pr.largest_sup) {
                pr.largest_sup = r.solution.sup_norm();
                pr.witness = r.solution;
            }
        }
    };
    solvers::MountainPassOptions mp;
    mp.deform_iter = 50;
    mp.climb_iter = 2000;
    for (const GridFunction& s : continuation::fresh_starts(p, mesh, starts)) {
        ++pr.attempts;
        record(solvers::newton_solve(p, mesh, s, cfg));
        ++pr.attempts;
        record(solvers::global_minimize(p, mesh, s, cfg));
        ++pr.attempts;
        if (super) {
            auto sub = solvers::build_subsolution(p, eig, std::max(s.sup_norm(), 1e-300));
            if (sub.valid) {
                for (double& v : sub.u.values) v = std::min(v, M);
                auto r = solvers::monotone_iteration(p, mesh, sub.u, GridFunction(mesh.size(), M), cfg);
                record(r);
                if (r.upper_limit) {
                    solvers::SolveReport up = r;
                    up.solution = *r.upper_limit;
                    solvers::finalize_report(up, p, mesh, cfg);
                    record(up);
                }
            }
        } else {
            GridFunction end = s;
            double E = grid::energy(p, mesh, end);
            for (int k = 0; k < 60 && !(E < 0.0); ++k) {
                for (double& v : end.values) v *= 2.0;
                E = grid::energy(p, mesh, end);
            }
            if (E < 0.0 && std::isfinite(E)) record(solvers::mountain_pass(p, mesh, end, cfg, mp));
        }
    }
    return pr;
}

MultiStart multi_start(const ProblemParams& p, const Mesh& mesh, int starts, const solvers::SolverConfig& cfg) {
    MultiStart ms;
    for (const GridFunction& s : continuation::fresh_starts(p, mesh, starts)) {
        auto r = solvers::newton_solve(p, mesh, s, cfg);
        if (!solvers::is_nontrivial(r)) r = solvers::global_minimize(p, mesh, s, cfg);
        if (solvers::is_nontrivial(r)) ms.solutions.push_back(r.solution);
    }
    for (std::size_t a = 0; a < ms.solutions.size(); ++a)
        for (std::size_t b = a + 1; b < ms.solutions.size(); ++b)
            for (std::size_t i = 0; i < mesh.size(); ++i)
                ms.max_spread = std::max(ms.max_spread, std::abs(ms.solutions[a][i] - ms.solutions[b][i]));
    return ms;
}

}  // namespace autocat::verify
