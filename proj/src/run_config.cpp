#include "autocat/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "autocat/io.hpp"
#include "json.hpp"

namespace autocat::config {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool known_block(const std::string& b) {
    return b == "problem" || b == "domain" || b == "solver" || b == "output";
}

std::string unknown_block(const std::string& b) {
    return "unknown block '" + b + "' (problem, domain, solver, output)";
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string where(const std::string& block, const std::string& key) { return block + "." + key; }

double to_double(const std::string& block, const std::string& key, const std::string& v) {
    double x = 0.0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    if (!v.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || ptr != last || !std::isfinite(x))
        throw ConfigError(where(block, key) + ": expected a finite number, got '" + v + "'");
    return x;
}

int to_int(const std::string& block, const std::string& key, const std::string& v) {
    int x = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigError(where(block, key) + ": expected an integer, got '" + v + "'");
    return x;
}

bool to_bool(const std::string& block, const std::string& key, const std::string& v) {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError(where(block, key) + ": expected true or false, got '" + v + "'");
}

std::string join_numbers(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + io::num(xs[i]);
    return s;
}

std::string formats_text(const OutputBlock& o) {
    std::vector<std::string> f;
    if (o.csv) f.push_back("csv");
    if (o.json) f.push_back("json");
    if (o.gnuplot) f.push_back("gnuplot");
    std::string s;
    for (std::size_t i = 0; i < f.size(); ++i) s += (i ? ", " : "") + f[i];
    return s;
}

std::string kind_text(grid::DomainKind k) { return k == grid::DomainKind::interval ? "interval" : "ball"; }

}  // namespace

solvers::Method parse_method(const std::string& s) {
    if (s == "newton") return solvers::Method::newton;
    if (s == "minimize") return solvers::Method::minimize;
    if (s == "monotone") return solvers::Method::monotone;
    if (s == "mountain_pass") return solvers::Method::mountain_pass;
    throw ConfigError("unknown method '" + s + "' (newton, minimize, monotone, mountain_pass)");
}

grid::DomainKind parse_domain_kind(const std::string& s) {
    if (s == "interval") return grid::DomainKind::interval;
    if (s == "ball") return grid::DomainKind::radial_ball;
    throw ConfigError("unknown domain kind '" + s + "' (interval, ball)");
}

void RunConfig::set(const std::string& block, const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    auto num = [&] { return to_double(block, key, v); };
    auto integer = [&] { return to_int(block, key, v); };
    if (block == "problem") {
        if (key == "m") problem.m = num();
        else if (key == "n") problem.n = num();
        else if (key == "lambda") problem.lambda = num();
        else if (key == "lambda_min") problem.lambda_min = num();
        else if (key == "lambda_max") problem.lambda_max = num();
        else if (key == "lambda_values") {
            problem.lambda_values.clear();
            for (const std::string& x : split_list(v)) problem.lambda_values.push_back(to_double(block, key, x));
        } else if (key == "dim") problem.dim = integer();
        else throw ConfigError("unknown key '" + where(block, key) + "'");
    } else if (block == "domain") {
        if (key == "kind") {
            try {
                domain.kind = parse_domain_kind(v);
            } catch (const ConfigError& e) {
                throw ConfigError(where(block, key) + ": " + e.what());
            }
        } else if (key == "a") domain.a = num();
        else if (key == "b") domain.b = num();
        else if (key == "radius") domain.radius = num();
        else if (key == "cells") domain.cells = integer();
        else throw ConfigError("unknown key '" + where(block, key) + "'");
    } else if (block == "solver") {
        if (key == "method") {
            try {
                solver.method = parse_method(v);
            } catch (const ConfigError& e) {
                throw ConfigError(where(block, key) + ": " + e.what());
            }
        } else if (key == "tol") solver.solver.tol = num();
        else if (key == "max_iter") solver.solver.max_iter = integer();
        else if (key == "eps_reg") solver.solver.eps_reg = num();
        else if (key == "damping") solver.solver.damping = num();
        else if (key == "starts") solver.starts = integer();
        else if (key == "ds") solver.ds = num();
        else if (key == "ds_min") solver.ds_min = num();
        else if (key == "ds_max") solver.ds_max = num();
        else if (key == "direction") solver.direction = integer();
        else if (key == "max_points") solver.max_points = integer();
        else if (key == "strategy") {
            try {
                solver.strategy = continuation::parse_strategy(v);
            } catch (const std::exception& e) {
                throw ConfigError(where(block, key) + ": " + e.what());
            }
        } else if (key == "height") solver.height = num();
        else if (key == "height_min") solver.height_min = num();
        else if (key == "height_max") solver.height_max = num();
        else throw ConfigError("unknown key '" + where(block, key) + "'");
    } else if (block == "output") {
        if (key == "directory") output.directory = v;
        else if (key == "formats") {
            output.csv = output.json = output.gnuplot = false;
            for (const std::string& f : split_list(v)) {
                if (f == "csv") output.csv = true;
                else if (f == "json") output.json = true;
                else if (f == "gnuplot") output.gnuplot = true;
                else throw ConfigError(where(block, key) + ": unknown format '" + f + "' (csv, json, gnuplot)");
            }
        } else if (key == "solutions") output.solutions = to_bool(block, key, v);
        else if (key == "stem") output.stem = v;
        else throw ConfigError("unknown key '" + where(block, key) + "'");
    } else {
        throw ConfigError("unknown block '" + block + "' (problem, domain, solver, output)");
    }
}

void RunConfig::validate() const {
    try {
        model::ProblemParams(problem.m, problem.n, problem.lambda, problem.dim);
        solver.solver.validate();
        branch_config().validate();
        grid::build_mesh(domain_spec(), domain.cells);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (domain.kind == grid::DomainKind::interval && problem.dim != 1)
        throw ConfigError("an interval domain requires problem.dim = 1");
    if (problem.lambda_min && problem.lambda_max && !(*problem.lambda_min < *problem.lambda_max))
        throw ConfigError("problem.lambda_min must be below problem.lambda_max");
    if (solver.starts <= 0) throw ConfigError("solver.starts must be positive");
    if (!(solver.height_min > 0.0 && solver.height_min < solver.height_max))
        throw ConfigError("solver.height_min must lie in (0, solver.height_max)");
    if (solver.height && !(*solver.height > 0.0)) throw ConfigError("solver.height must be positive");
    if (output.stem.empty() || output.stem.find('/') != std::string::npos)
        throw ConfigError("output.stem must be a plain file stem");
}

model::ProblemParams RunConfig::params() const {
    return model::ProblemParams(problem.m, problem.n, problem.lambda, problem.dim);
}

grid::Domain RunConfig::domain_spec() const {
    if (domain.kind == grid::DomainKind::interval) return grid::Domain::interval(domain.a, domain.b);
    return grid::Domain::radial_ball(problem.dim, domain.radius);
}

grid::Mesh RunConfig::mesh() const { return grid::build_mesh(domain_spec(), domain.cells); }

continuation::BranchConfig RunConfig::branch_config() const {
    continuation::BranchConfig bc;
    bc.solver = solver.solver;
    bc.ds = solver.ds;
    bc.ds_min = solver.ds_min;
    bc.ds_max = solver.ds_max;
    bc.direction = solver.direction;
    bc.max_points = solver.max_points;
    if (problem.lambda_min) bc.lambda_min = *problem.lambda_min;
    if (problem.lambda_max) bc.lambda_max = *problem.lambda_max;
    return bc;
}

std::filesystem::path RunConfig::output_directory() const { return io::output_directory(output.directory); }

std::string RunConfig::to_text() const {
    std::ostringstream os;
    os << "[problem]\n"
       << "m = " << io::num(problem.m) << "\n"
       << "n = " << io::num(problem.n) << "\n"
       << "lambda = " << io::num(problem.lambda) << "\n";
    if (problem.lambda_min) os << "lambda_min = " << io::num(*problem.lambda_min) << "\n";
    if (problem.lambda_max) os << "lambda_max = " << io::num(*problem.lambda_max) << "\n";
    if (!problem.lambda_values.empty()) os << "lambda_values = " << join_numbers(problem.lambda_values) << "\n";
    os << "dim = " << problem.dim << "\n\n[domain]\n"
       << "kind = " << kind_text(domain.kind) << "\n";
    if (domain.kind == grid::DomainKind::interval)
        os << "a = " << io::num(domain.a) << "\nb = " << io::num(domain.b) << "\n";
    else
        os << "radius = " << io::num(domain.radius) << "\n";
    os << "cells = " << domain.cells << "\n\n[solver]\n"
       << "method = " << solvers::to_string(solver.method) << "\n"
       << "tol = " << io::num(solver.solver.tol) << "\n"
       << "max_iter = " << solver.solver.max_iter << "\n"
       << "eps_reg = " << io::num(solver.solver.eps_reg) << "\n"
       << "damping = " << io::num(solver.solver.damping) << "\n"
       << "starts = " << solver.starts << "\n"
       << "ds = " << io::num(solver.ds) << "\n"
       << "ds_min = " << io::num(solver.ds_min) << "\n"
       << "ds_max = " << io::num(solver.ds_max) << "\n"
       << "direction = " << solver.direction << "\n"
       << "max_points = " << solver.max_points << "\n"
       << "strategy = " << continuation::to_string(solver.strategy) << "\n";
    if (solver.height) os << "height = " << io::num(*solver.height) << "\n";
    os << "height_min = " << io::num(solver.height_min) << "\n"
       << "height_max = " << io::num(solver.height_max) << "\n\n[output]\n"
       << "directory = " << output.directory.string() << "\n"
       << "formats = " << formats_text(output) << "\n"
       << "solutions = " << (output.solutions ? "true" : "false") << "\n"
       << "stem = " << output.stem << "\n";
    return os.str();
}

std::string RunConfig::to_json() const {
    // the JSON mirror is the text form, block by block
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    std::string block;
    std::stringstream ss(to_text());
    std::string line;
    while (std::getline(ss, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            block = line.substr(1, line.size() - 2);
            j[block] = nlohmann::ordered_json::object();
            continue;
        }
        const auto eq = line.find('=');
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "lambda_values") {
            auto arr = nlohmann::ordered_json::array();
            for (double x : problem.lambda_values) arr.push_back(x);
            j[block][key] = arr;
        } else if (key == "formats") {
            j[block][key] = split_list(val);
        } else if (key == "solutions") {
            j[block][key] = output.solutions;
        } else if (key == "kind" || key == "method" || key == "strategy" || key == "directory" || key == "stem") {
            j[block][key] = val;
        } else if (key == "dim" || key == "cells" || key == "max_iter" || key == "starts" || key == "direction" ||
                   key == "max_points") {
            j[block][key] = std::stoi(val);
        } else {
            j[block][key] = io::parse_double(val);
        }
    }
    return j.dump(2) + "\n";
}

RunConfig parse_text(const std::string& text) {
    RunConfig c;
    std::string block;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    std::vector<std::string> seen;
    while (std::getline(ss, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string at = "line " + std::to_string(lineno) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(at + "unterminated block header");
            block = trim(line.substr(1, line.size() - 2));
            if (!known_block(block)) throw ConfigError(at + unknown_block(block));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(at + "expected key = value");
        if (block.empty()) throw ConfigError(at + "key outside a block");
        const std::string key = trim(line.substr(0, eq));
        const std::string full = block + "." + key;
        if (std::find(seen.begin(), seen.end(), full) != seen.end())
            throw ConfigError(at + "duplicate key '" + full + "'");
        seen.push_back(full);
        try {
            c.set(block, key, line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(at + e.what());
        }
    }
    c.validate();
    return c;
}

RunConfig parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("the JSON config must be an object of blocks");
    RunConfig c;
    for (const auto& [block, body] : j.items()) {
        if (!known_block(block)) throw ConfigError(unknown_block(block));
        if (!body.is_object()) throw ConfigError("block '" + block + "' must be an object");
        for (const auto& [key, v] : body.items()) {
            std::string s;
            if (v.is_string()) s = v.get<std::string>();
            else if (v.is_boolean()) s = v.get<bool>() ? "true" : "false";
            else if (v.is_number_integer()) s = std::to_string(v.get<long long>());
            else if (v.is_number()) s = io::num(v.get<double>());
            else if (v.is_array()) {
                for (std::size_t i = 0; i < v.size(); ++i) {
                    if (i) s += ",";
                    if (v[i].is_number()) s += io::num(v[i].get<double>());
                    else if (v[i].is_string()) s += v[i].get<std::string>();
                    else throw ConfigError(where(block, key) + ": unsupported array element");
                }
            } else {
                throw ConfigError(where(block, key) + ": unsupported value type");
            }
            c.set(block, key, s);
        }
    }
    c.validate();
    return c;
}

RunConfig parse(const std::string& text) {
    const auto b = text.find_first_not_of(" \t\r\n");
    if (b != std::string::npos && text[b] == '{') return parse_json(text);
    return parse_text(text);
}

RunConfig load(const std::filesystem::path& path) {
    std::string text;
    try {
        text = io::read_text(path);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return parse(text);
}

}  // namespace autocat::config
