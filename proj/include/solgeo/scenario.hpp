#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solgeo/io.hpp"

namespace solgeo {

/// Command-line overrides applied on top of the config file.
struct ScenarioOptions {
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<int> levels;
    bool quiet = false;
};

struct ScenarioResult {
    /// 0 all declared tolerances met, 1 tolerance failure, 2 config error.
    int exit_code = 2;
    json report;
    std::vector<std::string> failures;
};

/// Execute one scenario described by a validated config ("schema": 1).
/// Kinds: frame-integration | mmlxii-check | sdym-check | reduction-check |
/// embed-2p1 | lle-run | lax-check | convergence-sweep.
/// Writes the JSON report (and CSV tables, when configured) to the paths in
/// config["output"]; identical config + seed give byte-identical reports.
ScenarioResult run_scenario(const json& config, const ScenarioOptions& opts = {});

/// Parse the config file, then run_scenario. Parse errors yield exit code 2.
ScenarioResult run_scenario_file(const std::string& path, const ScenarioOptions& opts = {});

/// Multi-level refinement sweep of the scenario's residual checks; requires
/// levels >= 3 so an observed order exists.
ScenarioResult sweep_scenario(const json& config, int levels, const ScenarioOptions& opts = {});

}  // namespace solgeo
