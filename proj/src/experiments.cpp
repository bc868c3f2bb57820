#include "uamsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "uamsim/scenario_io.hpp"

namespace uamsim {

RunSummary summarize(const SimResult& result, const CostWeights& weights, uint64_t seed) {
    RunSummary s;
    s.seed = seed;
    s.generated = result.ledger.generated_requests;
    s.unfulfilled = result.ledger.unfulfilled_requests;
    s.throughput = throughput(result.ledger);
    s.completed = s.throughput.completed;
    s.utilization = time_utilization(result.ledger);
    double delay_sum = 0.0;
    for (const ServedRequest& r : result.ledger.served) delay_sum += demand_delay(r);
    s.mean_demand_delay =
        result.ledger.served.empty() ? 0.0 : delay_sum / result.ledger.served.size();
    s.marginal_cost = marginal_cost(result.ledger, weights, result.ledger.horizon);
    s.air_holding_minutes = result.ledger.state_total(VehicleState::AirHold);
    s.ground_holding_minutes = result.ledger.state_total(VehicleState::GroundHold);
    s.rebalance_flights = result.ledger.rebalance_flights;
    s.scheduled_empty_flights = result.ledger.scheduled_empty_flights;
    s.scheduled_slots_skipped = result.ledger.scheduled_slots_skipped;
    return s;
}

uint64_t replication_seed(uint64_t base_seed, int replication) {
    return RandomStream::mix(RandomStream::mix(base_seed, 0x7265706c69636174ULL),
                             static_cast<uint64_t>(replication) + 1);
}

int thread_cap() {
    if (const char* env = std::getenv("UAM_ECOSIM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

/// Run `jobs` indexed tasks on up to `threads` workers; any task exception is
/// rethrown on the caller thread after the pool drains.
void parallel_for(int jobs, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) threads = thread_cap();
    threads = std::max(1, std::min(threads, jobs));
    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::string first_error;
    auto worker = [&]() {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= jobs) return;
            try {
                fn(i);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty()) first_error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (!first_error.empty()) throw std::runtime_error(first_error);
}

}  // namespace

std::vector<RunSummary> run_replications(const Scenario& scenario, const CostWeights& weights,
                                         uint64_t base_seed, int replications, int threads) {
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    std::vector<RunSummary> out(replications);
    parallel_for(replications, threads, [&](int rep) {
        const uint64_t seed = replication_seed(base_seed, rep);
        SimResult result = Simulation(scenario, seed).run();
        out[rep] = summarize(result, weights, seed);
    });
    return out;
}

std::vector<SweepRow> sweep(const SweepSpec& spec, int threads) {
    if (spec.policies.empty() || spec.demand_rates.empty() || spec.cn_values.empty())
        throw std::invalid_argument("sweep axes must be nonempty");
    const int np = static_cast<int>(spec.policies.size());
    const int nc = static_cast<int>(spec.cn_values.size());
    const int nd = static_cast<int>(spec.demand_rates.size());
    const int jobs = np * nc * nd * spec.replications;

    std::vector<SweepRow> rows(jobs);
    parallel_for(jobs, threads, [&](int idx) {
        int rest = idx;
        const int rep = rest % spec.replications;
        rest /= spec.replications;
        const int di = rest % nd;
        rest /= nd;
        const int ci = rest % nc;
        const int pi = rest / nc;

        Scenario sc = spec.base;
        sc.policy = spec.policies[pi];
        sc.demand.rate_per_hour = spec.demand_rates[di];
        const int cap =
            size_vertiports(spec.cn_values[ci], sc.fleet_size, sc.network.n_vertiports());
        for (Vertiport& v : sc.network.vertiports) v.parking_capacity = cap;

        // Same seed across policies and capacities: common random numbers.
        const uint64_t seed = RandomStream::mix(replication_seed(spec.base_seed, rep),
                                                static_cast<uint64_t>(di) + 1);
        SimResult result = Simulation(sc, seed).run();
        SweepRow& row = rows[idx];
        row.policy = to_string(spec.policies[pi].kind);
        row.c_n = spec.cn_values[ci];
        row.demand_per_hour = spec.demand_rates[di];
        row.replication = rep;
        row.summary = summarize(result, spec.weights, seed);
    });

    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.policy != b.policy) return a.policy < b.policy;
        if (a.c_n != b.c_n) return a.c_n < b.c_n;
        if (a.demand_per_hour != b.demand_per_hour) return a.demand_per_hour < b.demand_per_hour;
        return a.replication < b.replication;
    });
    return rows;
}

std::vector<std::string> sweep_preset_names() { return {"uniform-sweep", "gmm-sweep"}; }

SweepSpec make_sweep_preset(const std::string& name, uint64_t base_seed) {
    SweepSpec spec;
    spec.base = bay3_scenario(1.0, 36);
    spec.base_seed = base_seed;
    spec.demand_rates = {9, 15, 21, 30, 45, 60, 75, 90};
    spec.cn_values = {1.0, 2.0};
    PolicyConfig no_rebalance;
    no_rebalance.kind = PolicyConfig::Kind::OnDemand;
    PolicyConfig rebalance;
    rebalance.kind = PolicyConfig::Kind::OnDemandRebalance;
    PolicyConfig scheduled;
    scheduled.kind = PolicyConfig::Kind::Scheduled;
    spec.policies = {no_rebalance, rebalance, scheduled};

    if (name == "uniform-sweep") {
        spec.base.demand.kind = DemandModel::Kind::Uniform;
    } else if (name == "gmm-sweep") {
        spec.base.demand.kind = DemandModel::Kind::GaussianMixture;
        spec.base.demand.mixture = DemandModel::default_mixture();
    } else {
        throw std::invalid_argument("unknown sweep preset: " + name);
    }
    return spec;
}

}  // namespace uamsim
