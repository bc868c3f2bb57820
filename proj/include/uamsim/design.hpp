#pragma once

#include <cstdint>
#include <vector>

#include "uamsim/engine.hpp"
#include "uamsim/metrics.hpp"

namespace uamsim {

/// Search axes over (fleet size, normalized vertiport capacity).
struct GridSpec {
    std::vector<int> fleet_values;     // strictly increasing
    std::vector<double> cn_values;     // strictly increasing
    int replications = 5;
    Scenario base;                     // template; fleet and capacities overridden per cell
    CostWeights weights;
    uint64_t base_seed = 0;

    /// f in {15, 18, ..., 60}, c_n in {1.0, 1.1, ..., 3.0}.
    static GridSpec with_default_axes(Scenario base, uint64_t base_seed);

    void validate() const;
};

struct GridCell {
    int fleet_size = 0;
    double c_n = 0.0;
    MeanCi cost;
    std::vector<double> replication_costs;
    std::vector<uint64_t> seeds;
};

struct CostSurface {
    std::vector<int> fleet_values;
    std::vector<double> cn_values;
    int replications = 0;
    std::vector<GridCell> cells;  // row-major: fleet index major, c_n index minor
    int argmin = 0;               // index into cells

    const GridCell& cell(int fleet_index, int cn_index) const {
        return cells[fleet_index * static_cast<int>(cn_values.size()) + cn_index];
    }
    const GridCell& optimum() const { return cells[argmin]; }
};

/// One point of a sensitivity slice: fix one design variable, take the best
/// value of the other, and report the cost increase over the global optimum.
struct SensitivityPoint {
    double value = 0.0;        // the fixed design variable
    double delta_cost = 0.0;   // min-over-other-axis cost minus optimal cost
    double ci_half_width = 0.0;
    double other_at_min = 0.0;       // argmin of the free axis
    double other_delta = 0.0;        // deviation of that argmin from the optimum
};

struct SensitivitySlices {
    std::vector<SensitivityPoint> by_fleet;      // value = fleet size
    std::vector<SensitivityPoint> by_capacity;   // value = c_n
};

/// Upper-bound demand rate (requests/hour) a fleet can serve: f / T_operation.
/// Throws on t_operation_minutes <= 0; returns 0 for an empty fleet.
double estimate_dmax(int fleet_size, double t_operation_minutes);

/// Mean end-to-end time (minutes) to complete one operation with no
/// contention: takeoff + en-route + landing + mean turnaround, averaged over
/// all directed routes.
double measure_unimpeded_operation_time(const Scenario& scenario);

/// Seed for one grid replication. Every cell shares the replication's seed
/// (common random numbers), so cell comparisons are variance-reduced and
/// adding cells never perturbs existing results.
uint64_t cell_seed(uint64_t base_seed, int replication);

/// Scenario for one grid cell: fleet size set, vertiports sized from c_n.
Scenario cell_scenario(const GridSpec& spec, int fleet_size, double c_n);

/// Evaluate the whole grid; each cell runs `replications` seeded simulations
/// and records the mean marginal cost. Cells may be evaluated concurrently
/// (`threads` <= 0 picks the hardware count); results are identical for any
/// thread count. Argmin ties break toward lower fleet, then lower c_n.
CostSurface grid_search(const GridSpec& spec, int threads = 0);

/// Slices through the surface around the optimum, one per design variable.
SensitivitySlices sensitivity(const CostSurface& surface);

}  // namespace uamsim
