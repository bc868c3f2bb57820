#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uamsim/design.hpp"
#include "uamsim/engine.hpp"
#include "uamsim/metrics.hpp"

namespace uamsim {

/// Headline numbers for one simulation run.
struct RunSummary {
    uint64_t seed = 0;
    int generated = 0;
    int completed = 0;  // revenue landings within the horizon
    int unfulfilled = 0;
    ThroughputReport throughput;
    UtilizationShares utilization;
    double mean_demand_delay = 0.0;  // minutes, over served requests
    double marginal_cost = 0.0;
    double air_holding_minutes = 0.0;
    double ground_holding_minutes = 0.0;
    int rebalance_flights = 0;
    int scheduled_empty_flights = 0;
    int scheduled_slots_skipped = 0;
};

RunSummary summarize(const SimResult& result, const CostWeights& weights, uint64_t seed);

uint64_t replication_seed(uint64_t base_seed, int replication);

/// Run `replications` independent seeded simulations of one scenario.
/// Replications may execute concurrently; output order is by replication.
std::vector<RunSummary> run_replications(const Scenario& scenario, const CostWeights& weights,
                                         uint64_t base_seed, int replications, int threads = 0);

/// One demand-axis sweep cell result.
struct SweepRow {
    std::string policy;
    double c_n = 0.0;
    double demand_per_hour = 0.0;
    int replication = 0;
    RunSummary summary;
};

struct SweepSpec {
    Scenario base;                       // demand kind/policy/capacity overridden per cell
    CostWeights weights;
    std::vector<PolicyConfig> policies;
    std::vector<double> demand_rates;    // requests/hour (peak rate for mixture demand)
    std::vector<double> cn_values;
    int replications = 5;
    uint64_t base_seed = 0;
};

/// Cross product of (policy, c_n, demand rate) x replications. The same
/// replication index uses the same seed for every policy, so policy
/// comparisons share common random numbers. Rows are sorted by
/// (policy, c_n, demand, replication).
std::vector<SweepRow> sweep(const SweepSpec& spec, int threads = 0);

/// Named sweep presets over the three-vertiport Bay network.
std::vector<std::string> sweep_preset_names();
SweepSpec make_sweep_preset(const std::string& name, uint64_t base_seed);

/// Parallelism cap: UAM_ECOSIM_THREADS when set, else hardware concurrency.
int thread_cap();

}  // namespace uamsim
