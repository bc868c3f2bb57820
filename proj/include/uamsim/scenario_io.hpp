#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uamsim/design.hpp"
#include "uamsim/engine.hpp"
#include "uamsim/metrics.hpp"

namespace uamsim {

/// Scenario-file or flag validation failure; the message names the offending
/// JSON path (e.g. "engine.turnaround_std").
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ParsedScenario {
    Scenario scenario;
    CostWeights weights;
    int replications = 5;
    std::optional<uint64_t> base_seed;
    std::optional<double> normalized_capacity;  // as requested in the file
    std::vector<std::string> warnings;
};

/// Parse and validate a scenario JSON document. Unknown keys are rejected;
/// missing sections fall back to documented defaults. Explicit per-vertiport
/// capacities win over normalized_capacity (with a warning).
ParsedScenario parse_scenario_json(const std::string& json_text);
ParsedScenario parse_scenario_file(const std::string& path);

/// Serialize a resolved scenario back to canonical JSON.
/// parse(emit(s)) == s for every resolved scenario.
std::string emit_scenario_json(const ParsedScenario& parsed);

/// Built-in network presets, addressable as {"network": {"preset": "<name>"}}.
std::vector<std::string> network_preset_names();
Network make_network_preset(const std::string& name);

/// The three-vertiport Bay Area study network (SFO / OAK / SJC locations,
/// complete directed graph, 140 km/h cruise).
Network bay3_network();

/// Bay-network scenario with all defaults resolved; capacities sized for the
/// given normalized capacity.
Scenario bay3_scenario(double normalized_capacity = 1.0, int fleet_size = 36);

}  // namespace uamsim
