// uamsim: batch front-end for the vertiport-network fleet simulator.
//
// Subcommands: run a scenario, sweep demand axes across policies, optimize
// (fleet size, normalized capacity) by grid search, list presets. All
// randomness flows from the --seed flag; reruns with identical flags produce
// byte-identical output files.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uamsim/design.hpp"
#include "uamsim/experiments.hpp"
#include "uamsim/reports.hpp"
#include "uamsim/scenario_io.hpp"

namespace {

using namespace uamsim;

std::vector<double> parse_axis(const std::string& text) {
    std::vector<double> values;
    if (text.empty()) return values;
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        // "lo:hi:step" inclusive range
        double lo = 0, hi = 0, step = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0)
            throw ConfigError("axis: expected lo:hi:step with step > 0, got '" + text + "'");
        for (double v = lo; v <= hi + 1e-9; v += step) values.push_back(v);
        return values;
    }
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) values.push_back(std::stod(item));
    }
    if (values.empty()) throw ConfigError("axis: no values in '" + text + "'");
    return values;
}

std::string scenario_id_from_path(const std::string& path) {
    auto slash = path.find_last_of('/');
    std::string stem = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = stem.find_last_of('.');
    if (dot != std::string::npos) stem = stem.substr(0, dot);
    return stem.empty() ? "scenario" : stem;
}

int cmd_run(const std::string& scenario_path, const std::string& policy_name, uint64_t seed,
            int reps_flag, const std::string& out_dir, bool emit_events) {
    ParsedScenario parsed = parse_scenario_file(scenario_path);
    for (const std::string& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
    if (!policy_name.empty()) parsed.scenario.policy.kind = policy_kind_from_string(policy_name);
    const int reps = reps_flag > 0 ? reps_flag : parsed.replications;

    std::vector<RunSummary> runs(reps);
    std::vector<std::pair<int, SimResult>> results;
    for (int rep = 0; rep < reps; ++rep) {
        const uint64_t s = replication_seed(seed, rep);
        SimResult result = Simulation(parsed.scenario, s).run();
        runs[rep] = summarize(result, parsed.weights, s);
        if (emit_events) results.emplace_back(rep, std::move(result));
    }

    const std::string id = scenario_id_from_path(scenario_path);
    write_file(out_dir + "/summary.json", render_summary_json(id, runs));
    write_file(out_dir + "/metrics.csv", render_metrics_csv(id, runs));
    ParsedScenario resolved = parsed;
    resolved.base_seed = seed;
    write_file(out_dir + "/resolved_scenario.json", emit_scenario_json(resolved));
    if (emit_events) {
        write_file(out_dir + "/events.csv",
                   render_events_csv(results, parsed.scenario.network));
    }
    std::cout << "wrote " << out_dir << "/summary.json (" << reps << " replications)\n";
    return 0;
}

int cmd_sweep(const std::string& preset, const std::string& scenario_path,
              const std::string& demand_axis, const std::string& cn_axis,
              const std::string& policy_csv, uint64_t seed, int reps_flag,
              const std::string& out_dir) {
    SweepSpec spec;
    if (!preset.empty()) {
        spec = make_sweep_preset(preset, seed);
    } else {
        if (scenario_path.empty())
            throw ConfigError("sweep: give --preset or --scenario");
        ParsedScenario parsed = parse_scenario_file(scenario_path);
        spec.base = parsed.scenario;
        spec.weights = parsed.weights;
        spec.base_seed = seed;
        spec.replications = parsed.replications;
        for (double d : parse_axis(demand_axis.empty() ? "9,15,21,30,45,60,75,90" : demand_axis))
            spec.demand_rates.push_back(d);
        for (double c : parse_axis(cn_axis.empty() ? "1,2" : cn_axis))
            spec.cn_values.push_back(c);
        std::string names = policy_csv.empty()
                                ? "on_demand,on_demand_rebalance,scheduled"
                                : policy_csv;
        std::stringstream ss(names);
        std::string item;
        while (std::getline(ss, item, ',')) {
            PolicyConfig cfg = spec.base.policy;
            cfg.kind = policy_kind_from_string(item);
            spec.policies.push_back(cfg);
        }
    }
    if (reps_flag > 0) spec.replications = reps_flag;

    const std::vector<SweepRow> rows = sweep(spec, thread_cap());
    write_file(out_dir + "/sweep.csv", render_sweep_csv(rows));
    std::cout << "wrote " << out_dir << "/sweep.csv (" << rows.size() << " rows)\n";
    return 0;
}

int cmd_optimize(const std::string& scenario_path, const std::string& fleet_axis,
                 const std::string& cn_axis, uint64_t seed, int reps_flag,
                 const std::string& out_dir) {
    GridSpec spec;
    if (!scenario_path.empty()) {
        ParsedScenario parsed = parse_scenario_file(scenario_path);
        spec = GridSpec::with_default_axes(parsed.scenario, seed);
        spec.weights = parsed.weights;
        spec.replications = parsed.replications;
    } else {
        Scenario base = bay3_scenario(2.0, 36);
        base.demand.kind = DemandModel::Kind::GaussianMixture;
        base.demand.rate_per_hour = 30.0;
        base.policy.kind = PolicyConfig::Kind::OnDemandRebalance;
        spec = GridSpec::with_default_axes(base, seed);
    }
    if (!fleet_axis.empty()) {
        spec.fleet_values.clear();
        for (double f : parse_axis(fleet_axis)) spec.fleet_values.push_back(static_cast<int>(f));
    }
    if (!cn_axis.empty()) {
        spec.cn_values.clear();
        for (double c : parse_axis(cn_axis)) spec.cn_values.push_back(c);
    }
    if (reps_flag > 0) spec.replications = reps_flag;

    const CostSurface surface = grid_search(spec, thread_cap());
    const SensitivitySlices slices = sensitivity(surface);
    write_file(out_dir + "/surface.csv", render_surface_csv(surface));
    write_file(out_dir + "/argmin.json", render_argmin_json(surface));
    write_file(out_dir + "/sensitivity_f.csv", render_sensitivity_fleet_csv(slices));
    write_file(out_dir + "/sensitivity_cn.csv", render_sensitivity_cn_csv(slices));
    const GridCell& best = surface.optimum();
    std::cout << "optimum: fleet " << best.fleet_size << ", c_n " << best.c_n << ", cost "
              << best.cost.mean << " (+/- " << best.cost.ci_half_width << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vertiport-network fleet simulator"};
    app.require_subcommand(1);

    std::string scenario_path, policy_name, out_dir = "out", preset;
    std::string demand_axis, cn_axis, fleet_axis, policy_csv;
    uint64_t seed = 0;
    bool seed_set = false;
    int reps = 0;
    bool emit_events = false;

    auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option_function<uint64_t>(
               "--seed", [&](const uint64_t& s) { seed = s; seed_set = true; },
               "base seed for all randomness (required)")
            ->required();
    };

    CLI::App* run = app.add_subcommand("run", "simulate one scenario");
    run->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--policy", policy_name, "override the scenario's policy kind");
    add_seed(run);
    run->add_option("--reps", reps, "replication count override");
    run->add_option("--out", out_dir, "output directory");
    run->add_flag("--emit-events", emit_events, "also write the state-transition log");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "demand-axis policy comparison");
    sweep_cmd->add_option("--preset", preset, "sweep preset name (see 'presets')");
    sweep_cmd->add_option("--scenario", scenario_path, "scenario JSON file");
    sweep_cmd->add_option("--demand", demand_axis, "demand axis, e.g. 9,15,21 or 9:90:3");
    sweep_cmd->add_option("--cn", cn_axis, "normalized capacity axis");
    sweep_cmd->add_option("--policies", policy_csv, "comma-separated policy kinds");
    add_seed(sweep_cmd);
    sweep_cmd->add_option("--reps", reps, "replications per point");
    sweep_cmd->add_option("--out", out_dir, "output directory");

    CLI::App* opt = app.add_subcommand("optimize", "grid search over fleet size and capacity");
    opt->add_option("--scenario", scenario_path, "scenario JSON template");
    opt->add_option("--fleet", fleet_axis, "fleet axis, e.g. 15:60:3");
    opt->add_option("--cn", cn_axis, "capacity axis, e.g. 1.0:3.0:0.1");
    add_seed(opt);
    opt->add_option("--reps", reps, "replications per cell");
    opt->add_option("--out", out_dir, "output directory");

    CLI::App* presets = app.add_subcommand("presets", "list built-in presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(scenario_path, policy_name, seed, reps, out_dir, emit_events);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(preset, scenario_path, demand_axis, cn_axis, policy_csv, seed, reps,
                             out_dir);
        }
        if (opt->parsed()) {
            return cmd_optimize(scenario_path, fleet_axis, cn_axis, seed, reps, out_dir);
        }
        if (presets->parsed()) {
            std::cout << "network presets:\n";
            for (const auto& n : uamsim::network_preset_names()) std::cout << "  " << n << "\n";
            std::cout << "sweep presets:\n";
            for (const auto& n : uamsim::sweep_preset_names()) std::cout << "  " << n << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
