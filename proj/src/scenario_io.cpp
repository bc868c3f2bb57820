#include "uamsim/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace uamsim {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(path + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError(path + "." + key + ": unknown key");
    }
}

double get_number(const json& obj, const std::string& path, const std::string& key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError(path + "." + key + ": expected a number");
    return obj[key].get<double>();
}

int get_int(const json& obj, const std::string& path, const std::string& key, int fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer()) throw ConfigError(path + "." + key + ": expected an integer");
    return obj[key].get<int>();
}

std::string get_string(const json& obj, const std::string& path, const std::string& key,
                       const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_string()) throw ConfigError(path + "." + key + ": expected a string");
    return obj[key].get<std::string>();
}

std::vector<MixtureComponent> parse_mixture(const json& arr, const std::string& path) {
    if (!arr.is_array() || arr.empty()) throw ConfigError(path + ": expected a nonempty array");
    std::vector<MixtureComponent> out;
    for (size_t i = 0; i < arr.size(); ++i) {
        const std::string cpath = path + "[" + std::to_string(i) + "]";
        check_keys(arr[i], cpath, {"mean_hour", "std_hour", "weight"});
        MixtureComponent c;
        c.mean_hour = get_number(arr[i], cpath, "mean_hour", 0.0);
        c.std_hour = get_number(arr[i], cpath, "std_hour", 1.0);
        c.weight = get_number(arr[i], cpath, "weight", 1.0);
        if (c.std_hour <= 0.0) throw ConfigError(cpath + ".std_hour: must be > 0");
        if (c.weight < 0.0) throw ConfigError(cpath + ".weight: must be >= 0");
        out.push_back(c);
    }
    return out;
}

json emit_mixture(const std::vector<MixtureComponent>& mixture) {
    json arr = json::array();
    for (const MixtureComponent& c : mixture) {
        arr.push_back({{"mean_hour", c.mean_hour}, {"std_hour", c.std_hour}, {"weight", c.weight}});
    }
    return arr;
}

}  // namespace

Network bay3_network() {
    std::vector<Vertiport> ports(3);
    ports[0] = {0, "SFO", 37.6213, -122.3790};
    ports[1] = {1, "OAK", 37.7126, -122.2197};
    ports[2] = {2, "SJC", 37.3639, -121.9289};
    return make_complete_network(std::move(ports), 140.0);
}

std::vector<std::string> network_preset_names() { return {"bay3"}; }

Network make_network_preset(const std::string& name) {
    if (name == "bay3") return bay3_network();
    throw ConfigError("network.preset: unknown preset '" + name + "'");
}

Scenario bay3_scenario(double normalized_capacity, int fleet_size) {
    Scenario sc;
    sc.network = bay3_network();
    sc.fleet_size = fleet_size;
    const int cap = size_vertiports(normalized_capacity, fleet_size, sc.network.n_vertiports());
    for (Vertiport& v : sc.network.vertiports) v.parking_capacity = cap;
    sc.demand.kind = DemandModel::Kind::Uniform;
    sc.demand.rate_per_hour = 30.0;
    sc.demand.n_vertiports = 3;
    return sc;
}

ParsedScenario parse_scenario_json(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario parse error: ") + e.what());
    }
    check_keys(root, "$",
               {"version", "network", "fleet_size", "normalized_capacity", "demand", "policy",
                "engine", "cost_weights", "experiment"});
    if (!root.contains("version") || !root["version"].is_number_integer() ||
        root["version"].get<int>() != 1) {
        throw ConfigError("version: required and must be 1");
    }

    ParsedScenario out;
    Scenario& sc = out.scenario;

    // engine durations first: they also feed the network's separation fields
    if (root.contains("engine")) {
        const json& eng = root["engine"];
        check_keys(eng, "engine",
                   {"horizon_minutes", "turnaround_mean", "turnaround_std", "takeoff_duration",
                    "landing_duration", "arrival_separation", "departure_separation", "taxi_in",
                    "taxi_out"});
        sc.horizon = get_number(eng, "engine", "horizon_minutes", 1440.0);
        sc.turnaround_mean = get_number(eng, "engine", "turnaround_mean", 10.0);
        sc.turnaround_std = get_number(eng, "engine", "turnaround_std", 5.0);
        sc.takeoff_duration = get_number(eng, "engine", "takeoff_duration", 3.0);
        sc.landing_duration = get_number(eng, "engine", "landing_duration", 3.0);
        if (sc.horizon <= 0.0) throw ConfigError("engine.horizon_minutes: must be > 0");
        if (sc.turnaround_mean < 0.0) throw ConfigError("engine.turnaround_mean: must be >= 0");
        if (sc.turnaround_std < 0.0) throw ConfigError("engine.turnaround_std: must be >= 0");
        if (sc.takeoff_duration < 0.0) throw ConfigError("engine.takeoff_duration: must be >= 0");
        if (sc.landing_duration < 0.0) throw ConfigError("engine.landing_duration: must be >= 0");
    }
    const double arrival_sep =
        root.contains("engine") ? get_number(root["engine"], "engine", "arrival_separation", 1.0)
                                : 1.0;
    const double departure_sep =
        root.contains("engine") ? get_number(root["engine"], "engine", "departure_separation", 1.0)
                                : 1.0;
    const double taxi_in =
        root.contains("engine") ? get_number(root["engine"], "engine", "taxi_in", 0.0) : 0.0;
    const double taxi_out =
        root.contains("engine") ? get_number(root["engine"], "engine", "taxi_out", 0.0) : 0.0;
    if (arrival_sep < 0.0) throw ConfigError("engine.arrival_separation: must be >= 0");
    if (departure_sep < 0.0) throw ConfigError("engine.departure_separation: must be >= 0");
    if (taxi_in < 0.0) throw ConfigError("engine.taxi_in: must be >= 0");
    if (taxi_out < 0.0) throw ConfigError("engine.taxi_out: must be >= 0");

    // network
    if (!root.contains("network")) throw ConfigError("network: required section");
    const json& net = root["network"];
    check_keys(net, "network", {"preset", "vertiports", "cruise_speed_kmh"});
    bool any_explicit_capacity = false;
    if (net.contains("preset")) {
        if (net.contains("vertiports"))
            throw ConfigError("network: give either preset or vertiports, not both");
        sc.network = make_network_preset(get_string(net, "network", "preset", ""));
        if (net.contains("cruise_speed_kmh"))
            sc.network.cruise_speed_kmh = get_number(net, "network", "cruise_speed_kmh", 140.0);
    } else {
        if (!net.contains("vertiports"))
            throw ConfigError("network.vertiports: required when no preset is given");
        const json& ports = net["vertiports"];
        if (!ports.is_array() || ports.size() < 2)
            throw ConfigError("network.vertiports: expected an array of at least 2");
        std::vector<Vertiport> vlist;
        for (size_t i = 0; i < ports.size(); ++i) {
            const std::string vpath = "network.vertiports[" + std::to_string(i) + "]";
            check_keys(ports[i], vpath, {"name", "lat", "lon", "parking_capacity"});
            Vertiport v;
            v.id = static_cast<int>(i);
            v.name = get_string(ports[i], vpath, "name", "V" + std::to_string(i));
            if (!ports[i].contains("lat") || !ports[i].contains("lon"))
                throw ConfigError(vpath + ": lat and lon are required");
            v.lat = get_number(ports[i], vpath, "lat", 0.0);
            v.lon = get_number(ports[i], vpath, "lon", 0.0);
            if (ports[i].contains("parking_capacity")) {
                v.parking_capacity = get_int(ports[i], vpath, "parking_capacity", 0);
                if (v.parking_capacity < 0)
                    throw ConfigError(vpath + ".parking_capacity: must be >= 0");
                any_explicit_capacity = true;
            }
            vlist.push_back(v);
        }
        sc.network = make_complete_network(std::move(vlist),
                                           get_number(net, "network", "cruise_speed_kmh", 140.0));
        if (any_explicit_capacity) {
            for (size_t i = 0; i < sc.network.vertiports.size(); ++i) {
                if (!ports[i].contains("parking_capacity"))
                    throw ConfigError("network.vertiports[" + std::to_string(i) +
                                      "].parking_capacity: required once any vertiport sets one");
            }
        }
    }
    for (Vertiport& v : sc.network.vertiports) {
        v.arrival_separation = arrival_sep;
        v.departure_separation = departure_sep;
        v.taxi_in = taxi_in;
        v.taxi_out = taxi_out;
    }

    sc.fleet_size = get_int(root, "$", "fleet_size", 36);
    if (sc.fleet_size <= 0) throw ConfigError("fleet_size: must be > 0");

    // capacity sizing: explicit capacities win over normalized_capacity
    if (root.contains("normalized_capacity")) {
        out.normalized_capacity = get_number(root, "$", "normalized_capacity", 1.0);
        if (*out.normalized_capacity <= 0.0)
            throw ConfigError("normalized_capacity: must be > 0");
    }
    if (any_explicit_capacity) {
        if (out.normalized_capacity) {
            out.warnings.push_back(
                "normalized_capacity ignored: explicit vertiport capacities take precedence");
        }
    } else {
        const double cn = out.normalized_capacity.value_or(1.0);
        const int cap = size_vertiports(cn, sc.fleet_size, sc.network.n_vertiports());
        for (Vertiport& v : sc.network.vertiports) v.parking_capacity = cap;
    }

    // demand
    sc.demand = DemandModel{};
    sc.demand.n_vertiports = sc.network.n_vertiports();
    if (root.contains("demand")) {
        const json& dem = root["demand"];
        check_keys(dem, "demand",
                   {"kind", "rate_per_hour", "peak_per_hour", "mixture", "noise_fraction",
                    "od_weights", "per_origin"});
        const std::string kind = get_string(dem, "demand", "kind", "uniform");
        if (kind == "uniform") {
            sc.demand.kind = DemandModel::Kind::Uniform;
        } else if (kind == "gaussian_mixture") {
            sc.demand.kind = DemandModel::Kind::GaussianMixture;
        } else {
            throw ConfigError("demand.kind: expected uniform or gaussian_mixture");
        }
        if (dem.contains("rate_per_hour") && dem.contains("peak_per_hour"))
            throw ConfigError("demand: give rate_per_hour or peak_per_hour, not both");
        sc.demand.rate_per_hour = get_number(dem, "demand", "rate_per_hour",
                                             get_number(dem, "demand", "peak_per_hour", 0.0));
        if (sc.demand.rate_per_hour < 0.0) throw ConfigError("demand.rate_per_hour: must be >= 0");
        sc.demand.noise_fraction = get_number(dem, "demand", "noise_fraction", 0.25);
        if (sc.demand.noise_fraction < 0.0 || sc.demand.noise_fraction >= 1.0)
            throw ConfigError("demand.noise_fraction: must lie in [0, 1)");
        if (dem.contains("mixture")) sc.demand.mixture = parse_mixture(dem["mixture"], "demand.mixture");
        if (dem.contains("od_weights")) {
            const json& w = dem["od_weights"];
            if (!w.is_array() ||
                static_cast<int>(w.size()) != od_pair_count(sc.network.n_vertiports()))
                throw ConfigError("demand.od_weights: expected one weight per directed pair (" +
                                  std::to_string(od_pair_count(sc.network.n_vertiports())) + ")");
            for (size_t i = 0; i < w.size(); ++i) {
                if (!w[i].is_number() || w[i].get<double>() < 0.0)
                    throw ConfigError("demand.od_weights[" + std::to_string(i) +
                                      "]: must be a number >= 0");
                sc.demand.od_weights.push_back(w[i].get<double>());
            }
        }
        if (dem.contains("per_origin")) {
            const json& po = dem["per_origin"];
            if (!po.is_array() ||
                static_cast<int>(po.size()) != sc.network.n_vertiports())
                throw ConfigError("demand.per_origin: expected one mixture per vertiport");
            for (size_t i = 0; i < po.size(); ++i) {
                sc.demand.per_origin.push_back(
                    parse_mixture(po[i], "demand.per_origin[" + std::to_string(i) + "]"));
            }
            sc.demand.kind = DemandModel::Kind::GaussianMixture;
        }
    }

    // policy
    if (root.contains("policy")) {
        const json& pol = root["policy"];
        check_keys(pol, "policy", {"kind", "space_lookahead", "demand_lookahead", "headways"});
        try {
            sc.policy.kind = policy_kind_from_string(
                get_string(pol, "policy", "kind", "on_demand_rebalance"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("policy.kind: ") + e.what());
        }
        sc.policy.space_lookahead = get_int(pol, "policy", "space_lookahead", 2);
        sc.policy.demand_lookahead = get_int(pol, "policy", "demand_lookahead", 2);
        if (sc.policy.space_lookahead < 0) throw ConfigError("policy.space_lookahead: must be >= 0");
        if (sc.policy.demand_lookahead < 1)
            throw ConfigError("policy.demand_lookahead: must be >= 1");
        if (pol.contains("headways")) {
            const json& hw = pol["headways"];
            if (!hw.is_array()) throw ConfigError("policy.headways: expected an array");
            for (size_t i = 0; i < hw.size(); ++i) {
                const std::string hpath = "policy.headways[" + std::to_string(i) + "]";
                check_keys(hw[i], hpath, {"origin", "dest", "minutes"});
                const int o = get_int(hw[i], hpath, "origin", -1);
                const int d = get_int(hw[i], hpath, "dest", -1);
                const double m = get_number(hw[i], hpath, "minutes", 0.0);
                if (o < 0 || o >= sc.network.n_vertiports() || d < 0 ||
                    d >= sc.network.n_vertiports() || o == d)
                    throw ConfigError(hpath + ": invalid route endpoints");
                if (m <= 0.0) throw ConfigError(hpath + ".minutes: must be > 0");
                sc.policy.schedule_headways[{o, d}] = m;
            }
        }
    }

    // cost weights
    if (root.contains("cost_weights")) {
        const json& cw = root["cost_weights"];
        check_keys(cw, "cost_weights",
                   {"idling", "ground_holding", "air_holding", "cruising", "takeoff", "landing",
                    "demand_delay"});
        out.weights.idling = get_number(cw, "cost_weights", "idling", 1.0);
        out.weights.ground_holding = get_number(cw, "cost_weights", "ground_holding", 5.0);
        out.weights.air_holding = get_number(cw, "cost_weights", "air_holding", 100.0);
        out.weights.cruising = get_number(cw, "cost_weights", "cruising", 50.0);
        out.weights.takeoff = get_number(cw, "cost_weights", "takeoff", 150.0);
        out.weights.landing = get_number(cw, "cost_weights", "landing", 150.0);
        out.weights.demand_delay = get_number(cw, "cost_weights", "demand_delay", 100.0);
        for (double w : {out.weights.idling, out.weights.ground_holding, out.weights.air_holding,
                         out.weights.cruising, out.weights.takeoff, out.weights.landing,
                         out.weights.demand_delay}) {
            if (w < 0.0) throw ConfigError("cost_weights: weights must be >= 0");
        }
    }

    // experiment
    if (root.contains("experiment")) {
        const json& exp = root["experiment"];
        check_keys(exp, "experiment", {"replications", "base_seed"});
        out.replications = get_int(exp, "experiment", "replications", 5);
        if (out.replications < 1) throw ConfigError("experiment.replications: must be >= 1");
        if (exp.contains("base_seed")) {
            if (!exp["base_seed"].is_number_unsigned())
                throw ConfigError("experiment.base_seed: expected an unsigned integer");
            out.base_seed = exp["base_seed"].get<uint64_t>();
        }
    }
    sc.replications = out.replications;

    try {
        sc.validate();
        initial_placement(sc);  // surfaces fleet-vs-capacity violations early
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("scenario constraint violation: ") + e.what());
    }
    return out;
}

ParsedScenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read scenario file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario_json(buf.str());
}

std::string emit_scenario_json(const ParsedScenario& parsed) {
    const Scenario& sc = parsed.scenario;
    json root;
    root["version"] = 1;

    json ports = json::array();
    for (const Vertiport& v : sc.network.vertiports) {
        ports.push_back({{"name", v.name},
                         {"lat", v.lat},
                         {"lon", v.lon},
                         {"parking_capacity", v.parking_capacity}});
    }
    root["network"] = {{"vertiports", ports}, {"cruise_speed_kmh", sc.network.cruise_speed_kmh}};
    root["fleet_size"] = sc.fleet_size;

    json dem;
    dem["kind"] =
        sc.demand.kind == DemandModel::Kind::Uniform ? "uniform" : "gaussian_mixture";
    if (sc.demand.kind == DemandModel::Kind::Uniform) {
        dem["rate_per_hour"] = sc.demand.rate_per_hour;
    } else {
        dem["peak_per_hour"] = sc.demand.rate_per_hour;
        if (sc.demand.per_origin.empty()) dem["mixture"] = emit_mixture(sc.demand.mixture);
    }
    dem["noise_fraction"] = sc.demand.noise_fraction;
    if (!sc.demand.od_weights.empty()) dem["od_weights"] = sc.demand.od_weights;
    if (!sc.demand.per_origin.empty()) {
        json po = json::array();
        for (const auto& mix : sc.demand.per_origin) po.push_back(emit_mixture(mix));
        dem["per_origin"] = po;
    }
    root["demand"] = dem;

    json pol;
    pol["kind"] = to_string(sc.policy.kind);
    pol["space_lookahead"] = sc.policy.space_lookahead;
    pol["demand_lookahead"] = sc.policy.demand_lookahead;
    if (!sc.policy.schedule_headways.empty()) {
        json hw = json::array();
        for (const auto& [route, minutes] : sc.policy.schedule_headways) {
            hw.push_back({{"origin", route.first}, {"dest", route.second}, {"minutes", minutes}});
        }
        pol["headways"] = hw;
    }
    root["policy"] = pol;

    const Vertiport& v0 = sc.network.vertiports.front();
    root["engine"] = {{"horizon_minutes", sc.horizon},
                      {"turnaround_mean", sc.turnaround_mean},
                      {"turnaround_std", sc.turnaround_std},
                      {"takeoff_duration", sc.takeoff_duration},
                      {"landing_duration", sc.landing_duration},
                      {"arrival_separation", v0.arrival_separation},
                      {"departure_separation", v0.departure_separation},
                      {"taxi_in", v0.taxi_in},
                      {"taxi_out", v0.taxi_out}};

    root["cost_weights"] = {{"idling", parsed.weights.idling},
                            {"ground_holding", parsed.weights.ground_holding},
                            {"air_holding", parsed.weights.air_holding},
                            {"cruising", parsed.weights.cruising},
                            {"takeoff", parsed.weights.takeoff},
                            {"landing", parsed.weights.landing},
                            {"demand_delay", parsed.weights.demand_delay}};

    json exp;
    exp["replications"] = parsed.replications;
    if (parsed.base_seed) exp["base_seed"] = *parsed.base_seed;
    root["experiment"] = exp;

    return root.dump(2) + "\n";
}

}  // namespace uamsim
