#include "uamsim/reports.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace uamsim {

using nlohmann::json;

std::string csv_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", value);
    return buf;
}

namespace {

json summary_to_json(const RunSummary& s) {
    json j;
    j["seed"] = s.seed;
    j["generated"] = s.generated;
    j["completed"] = s.completed;
    j["unfulfilled"] = s.unfulfilled;
    j["throughput_per_hour"] = s.throughput.completed_per_hour;
    json buckets;
    for (size_t b = 0; b < ThroughputReport::kDelayBuckets.size(); ++b) {
        buckets["lt_" + std::to_string(static_cast<int>(ThroughputReport::kDelayBuckets[b])) +
                "_min"] = s.throughput.bucket_per_hour[b];
    }
    j["throughput_by_delay"] = buckets;
    j["mean_demand_delay_minutes"] = s.mean_demand_delay;
    j["marginal_cost"] = s.marginal_cost;
    j["utilization"] = {{"en_route", s.utilization.en_route},
                        {"air_holding", s.utilization.air_holding},
                        {"ground_holding", s.utilization.ground_holding},
                        {"idling", s.utilization.idling},
                        {"turnaround", s.utilization.turnaround},
                        {"rebalancing_or_overscheduled",
                         s.utilization.rebalancing_or_overscheduled}};
    j["air_holding_minutes"] = s.air_holding_minutes;
    j["ground_holding_minutes"] = s.ground_holding_minutes;
    j["rebalance_flights"] = s.rebalance_flights;
    j["scheduled_empty_flights"] = s.scheduled_empty_flights;
    j["scheduled_slots_skipped"] = s.scheduled_slots_skipped;
    return j;
}

json mean_ci_json(const MeanCi& m) {
    return {{"mean", m.mean}, {"ci_half_width", m.ci_half_width}, {"n", m.n}};
}

std::vector<double> collect(const std::vector<RunSummary>& runs,
                            double (*get)(const RunSummary&)) {
    std::vector<double> v;
    v.reserve(runs.size());
    for (const RunSummary& r : runs) v.push_back(get(r));
    return v;
}

}  // namespace

std::string render_summary_json(const std::string& scenario_id,
                                const std::vector<RunSummary>& runs) {
    json root;
    root["scenario_id"] = scenario_id;
    root["replications"] = runs.size();
    root["throughput_per_hour"] = mean_ci_json(
        aggregate(collect(runs, [](const RunSummary& r) { return r.throughput.completed_per_hour; })));
    root["mean_demand_delay_minutes"] = mean_ci_json(
        aggregate(collect(runs, [](const RunSummary& r) { return r.mean_demand_delay; })));
    root["marginal_cost"] =
        mean_ci_json(aggregate(collect(runs, [](const RunSummary& r) { return r.marginal_cost; })));
    root["idling_share"] = mean_ci_json(
        aggregate(collect(runs, [](const RunSummary& r) { return r.utilization.idling; })));
    json reps = json::array();
    for (const RunSummary& r : runs) reps.push_back(summary_to_json(r));
    root["runs"] = reps;
    return root.dump(2) + "\n";
}

std::string render_metrics_csv(const std::string& scenario_id,
                               const std::vector<RunSummary>& runs) {
    std::ostringstream out;
    out << "scenario_id,replication,metric,value\n";
    for (size_t rep = 0; rep < runs.size(); ++rep) {
        const RunSummary& s = runs[rep];
        const auto row = [&](const std::string& metric, double value) {
            out << scenario_id << ',' << rep << ',' << metric << ',' << csv_number(value) << '\n';
        };
        row("generated", s.generated);
        row("completed", s.completed);
        row("unfulfilled", s.unfulfilled);
        row("throughput_per_hour", s.throughput.completed_per_hour);
        for (size_t b = 0; b < ThroughputReport::kDelayBuckets.size(); ++b) {
            row("throughput_delay_lt_" +
                    std::to_string(static_cast<int>(ThroughputReport::kDelayBuckets[b])),
                s.throughput.bucket_per_hour[b]);
        }
        row("mean_demand_delay_minutes", s.mean_demand_delay);
        row("marginal_cost", s.marginal_cost);
        row("util_en_route", s.utilization.en_route);
        row("util_air_holding", s.utilization.air_holding);
        row("util_ground_holding", s.utilization.ground_holding);
        row("util_idling", s.utilization.idling);
        row("util_turnaround", s.utilization.turnaround);
        row("util_rebalancing_or_overscheduled", s.utilization.rebalancing_or_overscheduled);
        row("air_holding_minutes", s.air_holding_minutes);
        row("ground_holding_minutes", s.ground_holding_minutes);
        row("rebalance_flights", s.rebalance_flights);
        row("scheduled_empty_flights", s.scheduled_empty_flights);
        row("scheduled_slots_skipped", s.scheduled_slots_skipped);
    }
    return out.str();
}

std::string render_events_csv(const std::vector<std::pair<int, SimResult>>& replication_results,
                              const Network& network) {
    std::ostringstream out;
    out << "replication,t,vehicle,from_state,to_state,vertiport_or_route,flight_id,purpose\n";
    for (const auto& [rep, result] : replication_results) {
        for (const Transition& tr : result.transitions) {
            out << rep << ',' << csv_number(tr.t) << ',' << tr.vehicle << ','
                << to_string(tr.from) << ',' << to_string(tr.to) << ',';
            if (tr.vertiport >= 0) {
                out << network.vertiports[tr.vertiport].name;
            } else if (tr.flight >= 0) {
                out << network.vertiports[tr.origin].name << '-'
                    << network.vertiports[tr.dest].name;
            }
            out << ',';
            if (tr.flight >= 0) {
                out << tr.flight << ',' << to_string(tr.purpose);
            } else {
                out << ',';
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string render_sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "policy,c_n,demand_per_hour,replication,seed,generated,completed,unfulfilled,"
           "throughput_per_hour,delay_lt_1,delay_lt_5,delay_lt_15,delay_lt_30,delay_lt_60,"
           "delay_lt_120,mean_demand_delay_minutes,marginal_cost,util_en_route,util_air_holding,"
           "util_ground_holding,util_idling,util_turnaround,util_rebalancing_or_overscheduled,"
           "air_holding_minutes,ground_holding_minutes,rebalance_flights,scheduled_empty_flights,"
           "scheduled_slots_skipped\n";
    for (const SweepRow& r : rows) {
        const RunSummary& s = r.summary;
        out << r.policy << ',' << csv_number(r.c_n) << ',' << csv_number(r.demand_per_hour) << ','
            << r.replication << ',' << s.seed << ',' << s.generated << ',' << s.completed << ','
            << s.unfulfilled << ',' << csv_number(s.throughput.completed_per_hour);
        for (double b : s.throughput.bucket_per_hour) out << ',' << csv_number(b);
        out << ',' << csv_number(s.mean_demand_delay) << ',' << csv_number(s.marginal_cost) << ','
            << csv_number(s.utilization.en_route) << ',' << csv_number(s.utilization.air_holding)
            << ',' << csv_number(s.utilization.ground_holding) << ','
            << csv_number(s.utilization.idling) << ',' << csv_number(s.utilization.turnaround)
            << ',' << csv_number(s.utilization.rebalancing_or_overscheduled) << ','
            << csv_number(s.air_holding_minutes) << ',' << csv_number(s.ground_holding_minutes)
            << ',' << s.rebalance_flights << ',' << s.scheduled_empty_flights << ','
            << s.scheduled_slots_skipped << '\n';
    }
    return out.str();
}

std::string render_surface_csv(const CostSurface& surface) {
    std::ostringstream out;
    out << "fleet_size,c_n,mean_cost,ci_half_width,n_reps\n";
    for (const GridCell& c : surface.cells) {
        out << c.fleet_size << ',' << csv_number(c.c_n) << ',' << csv_number(c.cost.mean) << ','
            << csv_number(c.cost.ci_half_width) << ',' << c.cost.n << '\n';
    }
    return out.str();
}

std::string render_argmin_json(const CostSurface& surface) {
    const GridCell& best = surface.optimum();
    json root;
    root["fleet_size"] = best.fleet_size;
    root["normalized_capacity"] = best.c_n;
    root["cost"] = mean_ci_json(best.cost);
    root["replication_costs"] = best.replication_costs;
    root["seeds"] = best.seeds;
    return root.dump(2) + "\n";
}

std::string render_sensitivity_fleet_csv(const SensitivitySlices& slices) {
    std::ostringstream out;
    out << "fleet_size,delta_cost,ci_half_width,cn_at_min,cn_delta\n";
    for (const SensitivityPoint& p : slices.by_fleet) {
        out << static_cast<int>(p.value) << ',' << csv_number(p.delta_cost) << ','
            << csv_number(p.ci_half_width) << ',' << csv_number(p.other_at_min) << ','
            << csv_number(p.other_delta) << '\n';
    }
    return out.str();
}

std::string render_sensitivity_cn_csv(const SensitivitySlices& slices) {
    std::ostringstream out;
    out << "c_n,delta_cost,ci_half_width,fleet_at_min,fleet_delta\n";
    for (const SensitivityPoint& p : slices.by_capacity) {
        out << csv_number(p.value) << ',' << csv_number(p.delta_cost) << ','
            << csv_number(p.ci_half_width) << ',' << csv_number(p.other_at_min) << ','
            << csv_number(p.other_delta) << '\n';
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

}  // namespace uamsim
