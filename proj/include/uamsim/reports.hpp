#pragma once

#include <string>
#include <vector>

#include "uamsim/design.hpp"
#include "uamsim/engine.hpp"
#include "uamsim/experiments.hpp"

namespace uamsim {

// Result-file emission. All files are UTF-8 with LF line endings and a CSV
// header row, and are byte-identical across reruns with identical inputs.

/// Fixed-precision float formatting used in every CSV cell.
std::string csv_number(double value);

std::string render_summary_json(const std::string& scenario_id,
                                const std::vector<RunSummary>& runs);
std::string render_metrics_csv(const std::string& scenario_id,
                               const std::vector<RunSummary>& runs);
std::string render_events_csv(const std::vector<std::pair<int, SimResult>>& replication_results,
                              const Network& network);
std::string render_sweep_csv(const std::vector<SweepRow>& rows);
std::string render_surface_csv(const CostSurface& surface);
std::string render_argmin_json(const CostSurface& surface);
std::string render_sensitivity_fleet_csv(const SensitivitySlices& slices);
std::string render_sensitivity_cn_csv(const SensitivitySlices& slices);

/// Write text to a file, creating parent directories as needed.
void write_file(const std::string& path, const std::string& content);

}  // namespace uamsim
