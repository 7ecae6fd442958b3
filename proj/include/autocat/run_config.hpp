#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "autocat/continuation.hpp"
#include "autocat/grid.hpp"
#include "autocat/model.hpp"
#include "autocat/solvers.hpp"

namespace autocat::config {

/// Thrown for malformed or inconsistent configuration input.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ProblemBlock {
    double m = 0.5;
    double n = 0.25;
    double lambda = 0.0;
    std::optional<double> lambda_min;
    std::optional<double> lambda_max;
    std::vector<double> lambda_values;
    int dim = 1;
};

struct DomainBlock {
    grid::DomainKind kind = grid::DomainKind::interval;
    double a = 0.0;
    double b = 1.0;
    double radius = 1.0;
    int cells = 200;
};

struct SolverBlock {
    solvers::Method method = solvers::Method::newton;
    solvers::SolverConfig solver;
    int starts = 8;
    // continuation
    double ds = 0.02;
    double ds_min = 1e-8;
    double ds_max = 0.2;
    int direction = 1;
    int max_points = 2000;
    continuation::SweepStrategy strategy = continuation::SweepStrategy::warm_then_fresh;
    // shooting
    std::optional<double> height;
    double height_min = 1e-8;
    double height_max = 1.0;
};

struct OutputBlock {
    std::filesystem::path directory = "autocat-out";
    bool csv = true;
    bool json = true;
    bool gnuplot = true;
    bool solutions = true;
    std::string stem = "run";
};

/// key = value blocks [problem], [domain], [solver], [output], or the same
/// tree as a JSON object.
struct RunConfig {
    ProblemBlock problem;
    DomainBlock domain;
    SolverBlock solver;
    OutputBlock output;

    /// Sets one key from its text form; rejects unknown blocks and keys.
    void set(const std::string& block, const std::string& key, const std::string& value);
    /// Checks the preconditions of the modules the config feeds.
    void validate() const;

    model::ProblemParams params() const;
    grid::Domain domain_spec() const;
    grid::Mesh mesh() const;
    continuation::BranchConfig branch_config() const;
    /// Output directory after the environment override.
    std::filesystem::path output_directory() const;

    std::string to_text() const;
    std::string to_json() const;
};

RunConfig parse_text(const std::string& text);
RunConfig parse_json(const std::string& text);
/// Dispatches on the first non-blank character ('{' selects JSON).
RunConfig parse(const std::string& text);
RunConfig load(const std::filesystem::path& path);

solvers::Method parse_method(const std::string& s);
grid::DomainKind parse_domain_kind(const std::string& s);

}  // namespace autocat::config
