#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "autocat/continuation.hpp"

namespace autocat::figures {

/// Which converged state seeds a branch.
enum class Seed { lowest_energy, largest, pass };

struct BranchRun {
    std::string label;
    model::ProblemParams params;  // lambda is the start value
    grid::Domain domain;
    int cells = 200;
    Seed seed = Seed::lowest_energy;
    continuation::BranchConfig branch;
};

struct Figure {
    std::string name;
    std::string title;
    std::vector<BranchRun> runs;
};

/// Fixed default parameter sets, fig3 to fig12.
const std::vector<Figure>& all_figures();
const Figure& find_figure(const std::string& name);

struct Rendered {
    bool ok = true;
    std::vector<std::string> files;
    std::vector<std::string> messages;
};

/// Branch CSVs, fold sidecars and a gnuplot script under dir.
Rendered render(const Figure& fig, const std::filesystem::path& dir, bool write_solutions);

}  // namespace autocat::figures
