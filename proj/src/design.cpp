#include "uamsim/design.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace uamsim {

GridSpec GridSpec::with_default_axes(Scenario base, uint64_t base_seed) {
    GridSpec spec;
    for (int f = 15; f <= 60; f += 3) spec.fleet_values.push_back(f);
    for (int i = 0; i <= 20; ++i) spec.cn_values.push_back(1.0 + 0.1 * i);
    spec.base = std::move(base);
    spec.base_seed = base_seed;
    return spec;
}

void GridSpec::validate() const {
    if (fleet_values.empty() || cn_values.empty())
        throw std::invalid_argument("grid axes must be nonempty");
    for (size_t i = 1; i < fleet_values.size(); ++i) {
        if (fleet_values[i] <= fleet_values[i - 1])
            throw std::invalid_argument("fleet_values must be strictly increasing");
    }
    for (size_t i = 1; i < cn_values.size(); ++i) {
        if (cn_values[i] <= cn_values[i - 1])
            throw std::invalid_argument("cn_values must be strictly increasing");
    }
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
}

double estimate_dmax(int fleet_size, double t_operation_minutes) {
    if (t_operation_minutes <= 0.0) throw std::invalid_argument("t_operation must be positive");
    if (fleet_size <= 0) return 0.0;
    return static_cast<double>(fleet_size) / t_operation_minutes * 60.0;
}

double measure_unimpeded_operation_time(const Scenario& scenario) {
    const Network& net = scenario.network;
    if (net.n_routes() == 0) return scenario.turnaround_mean;
    double sum = 0.0;
    for (const Route& r : net.routes) {
        sum += scenario.takeoff_duration + travel_time(net, r.origin, r.dest) +
               scenario.landing_duration + scenario.turnaround_mean;
    }
    return sum / net.n_routes();
}

uint64_t cell_seed(uint64_t base_seed, int replication) {
    const uint64_t s = RandomStream::mix(base_seed, 0x6772696453656564ULL);
    return RandomStream::mix(s, static_cast<uint64_t>(replication) + 1);
}

Scenario cell_scenario(const GridSpec& spec, int fleet_size, double c_n) {
    Scenario sc = spec.base;
    sc.fleet_size = fleet_size;
    const int per_vertiport = size_vertiports(c_n, fleet_size, sc.network.n_vertiports());
    for (Vertiport& v : sc.network.vertiports) v.parking_capacity = per_vertiport;
    return sc;
}

CostSurface grid_search(const GridSpec& spec, int threads) {
    spec.validate();
    CostSurface surface;
    surface.fleet_values = spec.fleet_values;
    surface.cn_values = spec.cn_values;
    surface.replications = spec.replications;

    const int nf = static_cast<int>(spec.fleet_values.size());
    const int nc = static_cast<int>(spec.cn_values.size());
    surface.cells.resize(static_cast<size_t>(nf) * nc);

    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, nf * nc));

    std::atomic<int> next{0};
    std::string first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        while (true) {
            const int idx = next.fetch_add(1);
            if (idx >= nf * nc) return;
            const int fi = idx / nc;
            const int ci = idx % nc;
            GridCell& cell = surface.cells[idx];
            cell.fleet_size = spec.fleet_values[fi];
            cell.c_n = spec.cn_values[ci];
            try {
                const Scenario sc = cell_scenario(spec, cell.fleet_size, cell.c_n);
                for (int rep = 0; rep < spec.replications; ++rep) {
                    const uint64_t seed = cell_seed(spec.base_seed, rep);
                    cell.seeds.push_back(seed);
                    SimResult result = Simulation(sc, seed).run();
                    cell.replication_costs.push_back(
                        marginal_cost(result.ledger, spec.weights, sc.horizon));
                }
                cell.cost = aggregate(cell.replication_costs);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty()) {
                    first_error = "grid cell (f=" + std::to_string(cell.fleet_size) +
                                  ", c_n=" + std::to_string(cell.c_n) + "): " + e.what();
                }
            }
        }
    };

    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (!first_error.empty()) throw std::runtime_error(first_error);

    surface.argmin = 0;
    for (int idx = 1; idx < nf * nc; ++idx) {
        // Strict < keeps ties at the lower fleet, then lower c_n (scan order).
        if (surface.cells[idx].cost.mean < surface.cells[surface.argmin].cost.mean) {
            surface.argmin = idx;
        }
    }
    return surface;
}

SensitivitySlices sensitivity(const CostSurface& surface) {
    SensitivitySlices slices;
    const int nf = static_cast<int>(surface.fleet_values.size());
    const int nc = static_cast<int>(surface.cn_values.size());
    const GridCell& best = surface.optimum();

    for (int fi = 0; fi < nf; ++fi) {
        int best_ci = 0;
        for (int ci = 1; ci < nc; ++ci) {
            if (surface.cell(fi, ci).cost.mean < surface.cell(fi, best_ci).cost.mean) best_ci = ci;
        }
        const GridCell& c = surface.cell(fi, best_ci);
        SensitivityPoint p;
        p.value = surface.fleet_values[fi];
        p.delta_cost = c.cost.mean - best.cost.mean;
        p.ci_half_width = std::sqrt(c.cost.ci_half_width * c.cost.ci_half_width +
                                    best.cost.ci_half_width * best.cost.ci_half_width);
        p.other_at_min = surface.cn_values[best_ci];
        p.other_delta = surface.cn_values[best_ci] - best.c_n;
        slices.by_fleet.push_back(p);
    }
    for (int ci = 0; ci < nc; ++ci) {
        int best_fi = 0;
        for (int fi = 1; fi < nf; ++fi) {
            if (surface.cell(fi, ci).cost.mean < surface.cell(best_fi, ci).cost.mean) best_fi = fi;
        }
        const GridCell& c = surface.cell(best_fi, ci);
        SensitivityPoint p;
        p.value = surface.cn_values[ci];
        p.delta_cost = c.cost.mean - best.cost.mean;
        p.ci_half_width = std::sqrt(c.cost.ci_half_width * c.cost.ci_half_width +
                                    best.cost.ci_half_width * best.cost.ci_half_width);
        p.other_at_min = surface.fleet_values[best_fi];
        p.other_delta = surface.fleet_values[best_fi] - best.fleet_size;
        slices.by_capacity.push_back(p);
    }
    return slices;
}

}  // namespace uamsim
