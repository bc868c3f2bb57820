#include <string>

#include "doctest.h"
#include "uamsim/scenario_io.hpp"

using namespace uamsim;

namespace {

const char* kMinimal = R"({
  "version": 1,
  "network": {"preset": "bay3"},
  "fleet_size": 36
})";

}  // namespace

TEST_CASE("a minimal file resolves to the documented defaults") {
    const ParsedScenario p = parse_scenario_json(kMinimal);
    const Scenario& sc = p.scenario;
    CHECK(sc.fleet_size == 36);
    CHECK(sc.network.n_vertiports() == 3);
    CHECK(sc.network.n_routes() == 6);
    CHECK(sc.network.vertiports[0].parking_capacity == 12);  // c_n defaults to 1.0
    CHECK(sc.horizon == doctest::Approx(1440.0));
    CHECK(sc.turnaround_mean == doctest::Approx(10.0));
    CHECK(sc.turnaround_std == doctest::Approx(5.0));
    CHECK(sc.takeoff_duration == doctest::Approx(3.0));
    CHECK(sc.landing_duration == doctest::Approx(3.0));
    CHECK(sc.policy.kind == PolicyConfig::Kind::OnDemandRebalance);
    CHECK(p.weights.idling == doctest::Approx(1.0));
    CHECK(p.weights.air_holding == doctest::Approx(100.0));
    CHECK(p.weights.takeoff == doctest::Approx(150.0));
    CHECK(p.replications == 5);
    CHECK_FALSE(p.base_seed.has_value());
    CHECK(p.warnings.empty());
}

TEST_CASE("validation errors name the offending json path") {
    const std::string bad = R"({
      "version": 1,
      "network": {"preset": "bay3"},
      "engine": {"turnaround_std": -1.0}
    })";
    CHECK_THROWS_WITH_AS(parse_scenario_json(bad),
                         doctest::Contains("engine.turnaround_std"), ConfigError);

    CHECK_THROWS_WITH_AS(parse_scenario_json(R"({"version": 1, "network": {"preset": "bay3"},
                                                 "typo_key": 3})"),
                         doctest::Contains("typo_key"), ConfigError);
    CHECK_THROWS_AS(parse_scenario_json(R"({"network": {"preset": "bay3"}})"), ConfigError);
    CHECK_THROWS_AS(parse_scenario_json("not json at all"), ConfigError);
}

TEST_CASE("explicit capacities win over normalized capacity with a warning") {
    const std::string both = R"({
      "version": 1,
      "network": {"vertiports": [
        {"name": "A", "lat": 37.0, "lon": -122.0, "parking_capacity": 30},
        {"name": "B", "lat": 37.5, "lon": -122.2, "parking_capacity": 6}
      ]},
      "fleet_size": 10,
      "normalized_capacity": 1.0
    })";
    const ParsedScenario p = parse_scenario_json(both);
    CHECK(p.scenario.network.vertiports[0].parking_capacity == 30);
    CHECK(p.scenario.network.vertiports[1].parking_capacity == 6);
    REQUIRE(p.warnings.size() == 1);

    // Partially explicit capacities are rejected.
    const std::string partial = R"({
      "version": 1,
      "network": {"vertiports": [
        {"name": "A", "lat": 37.0, "lon": -122.0, "parking_capacity": 30},
        {"name": "B", "lat": 37.5, "lon": -122.2}
      ]},
      "fleet_size": 10
    })";
    CHECK_THROWS_WITH_AS(parse_scenario_json(partial), doctest::Contains("parking_capacity"),
                         ConfigError);
}

TEST_CASE("fleet exceeding placed capacity is rejected at parse time") {
    const std::string over = R"({
      "version": 1,
      "network": {"preset": "bay3"},
      "fleet_size": 37,
      "normalized_capacity": 0.97
    })";
    CHECK_THROWS_AS(parse_scenario_json(over), ConfigError);
}

TEST_CASE("demand and policy sections parse all fields") {
    const std::string full = R"({
      "version": 1,
      "network": {"preset": "bay3"},
      "fleet_size": 36,
      "normalized_capacity": 2.0,
      "demand": {
        "kind": "gaussian_mixture",
        "peak_per_hour": 30.0,
        "mixture": [{"mean_hour": 8, "std_hour": 2, "weight": 1},
                     {"mean_hour": 16, "std_hour": 2, "weight": 1}],
        "noise_fraction": 0.1,
        "od_weights": [1, 1, 1, 1, 1, 1]
      },
      "policy": {"kind": "scheduled",
                 "headways": [{"origin": 0, "dest": 1, "minutes": 30.0}]},
      "experiment": {"replications": 3, "base_seed": 77}
    })";
    const ParsedScenario p = parse_scenario_json(full);
    CHECK(p.scenario.demand.kind == DemandModel::Kind::GaussianMixture);
    CHECK(p.scenario.demand.rate_per_hour == doctest::Approx(30.0));
    CHECK(p.scenario.demand.mixture.size() == 2);
    CHECK(p.scenario.demand.od_weights.size() == 6);
    CHECK(p.scenario.policy.kind == PolicyConfig::Kind::Scheduled);
    CHECK(p.scenario.policy.schedule_headways.at({0, 1}) == doctest::Approx(30.0));
    CHECK(p.replications == 3);
    CHECK(p.base_seed.value() == 77);

    CHECK_THROWS_WITH_AS(parse_scenario_json(R"({
      "version": 1, "network": {"preset": "bay3"},
      "demand": {"od_weights": [1, 2]}
    })"),
                         doctest::Contains("od_weights"), ConfigError);
}

TEST_CASE("emitting and reparsing a resolved scenario is the identity") {
    const std::string full = R"({
      "version": 1,
      "network": {"preset": "bay3"},
      "fleet_size": 24,
      "normalized_capacity": 1.5,
      "demand": {"kind": "uniform", "rate_per_hour": 21.0},
      "policy": {"kind": "on_demand"},
      "experiment": {"replications": 4, "base_seed": 5}
    })";
    const ParsedScenario p = parse_scenario_json(full);
    const std::string emitted = emit_scenario_json(p);
    const ParsedScenario back = parse_scenario_json(emitted);
    CHECK(emit_scenario_json(back) == emitted);
    CHECK(back.scenario.fleet_size == 24);
    CHECK(back.scenario.network.vertiports[0].parking_capacity == 12);  // ceil(36/3)
    CHECK(back.scenario.demand.rate_per_hour == doctest::Approx(21.0));
    CHECK(back.replications == 4);
    CHECK(back.base_seed.value() == 5);
}

TEST_CASE("preset listing names bay3") {
    const auto names = network_preset_names();
    REQUIRE(names.size() == 1);
    CHECK(names[0] == "bay3");
    CHECK_THROWS_AS(make_network_preset("nowhere"), ConfigError);
}
