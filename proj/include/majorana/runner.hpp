#pragma once

#include "majorana/config.hpp"

#include <string>
#include <vector>

namespace majorana::cli {

inline constexpr char version[] = "0.1.0";

struct RunOutcome {
    std::vector<std::string> files;   // paths relative to the output directory
    nlohmann::json manifest;
    bool complete = true;
};

/// Executes the configured task, writes CSV outputs plus manifest.json
/// into cfg.out_dir, and never writes outside it. Deterministic for a
/// fixed config: fixed grids, seeded draws, thread-order independent.
/// cell_budget limits fresh scan cells (testing hook for resumption).
RunOutcome run(const RunConfig& cfg,
               std::size_t cell_budget = static_cast<std::size_t>(-1));

}  // namespace majorana::cli
