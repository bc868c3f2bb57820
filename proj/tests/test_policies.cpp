#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "uamsim/engine.hpp"
#include "uamsim/policies.hpp"
#include "uamsim/scenario_io.hpp"

namespace uamsim {

/// Rearranges a simulation's state to exercise policy decisions directly.
class SimulationTestPeer {
  public:
    static void move_idle(Simulation& sim, int vehicle, int vertiport, double idle_since) {
        VehicleRecord& rec = sim.vehicles_[vehicle];
        sim.vertiport_states_[rec.vertiport].parked.erase(vehicle);
        rec.vertiport = vertiport;
        rec.state = VehicleState::Idle;
        rec.state_entered_at = idle_since;
        sim.vertiport_states_[vertiport].parked.insert(vehicle);
    }
    static int add_pending(Simulation& sim, double t, int origin, int dest) {
        const int id = static_cast<int>(sim.requests_.size());
        sim.requests_.push_back(Request{id, t, origin, dest});
        sim.vertiport_states_[origin].pending_requests.push_back(id);
        return id;
    }
    static void set_clock(Simulation& sim, double t) { sim.clock_ = t; }
};

}  // namespace uamsim

using namespace uamsim;

namespace {

/// Fleet parked per vertiport as requested; all idle since t=0.
Simulation make_state(Scenario sc, const std::vector<int>& per_port) {
    int fleet = 0;
    for (int c : per_port) fleet += c;
    sc.fleet_size = fleet;
    sc.demand.rate_per_hour = 0.0;
    Simulation sim(sc, 1);
    int vehicle = 0;
    for (size_t p = 0; p < per_port.size(); ++p) {
        for (int i = 0; i < per_port[p]; ++i) {
            SimulationTestPeer::move_idle(sim, vehicle, static_cast<int>(p), 0.0);
            ++vehicle;
        }
    }
    return sim;
}

Scenario capacity_scenario(int per_port_capacity) {
    Scenario sc = bay3_scenario(1.0, 3);
    for (Vertiport& v : sc.network.vertiports) v.parking_capacity = per_port_capacity;
    return sc;
}

}  // namespace

TEST_CASE("space push fires when a vertiport crowds past the trigger") {
    // Fleet 24, capacity 12: trigger = min(12-2, 8+6) = 10.
    Scenario sc = capacity_scenario(12);
    PolicyConfig cfg;
    cfg.kind = PolicyConfig::Kind::OnDemandRebalance;

    Simulation crowded = make_state(sc, {10, 2, 12});
    auto act = space_rebalance_check(cfg, crowded, 0);
    REQUIRE(act.has_value());
    CHECK(act->type == PolicyAction::Type::DispatchRebalance);
    CHECK(act->dest == 1);  // only port below the even-share band

    Simulation relaxed = make_state(sc, {5, 10, 9});
    CHECK_FALSE(space_rebalance_check(cfg, relaxed, 0).has_value());
}

TEST_CASE("naive space threshold fires only when full") {
    Scenario sc = capacity_scenario(12);  // fleet 36 below: share 12 = capacity
    PolicyConfig cfg;
    cfg.kind = PolicyConfig::Kind::OnDemandRebalance;
    cfg.space_lookahead = 0;

    Simulation almost = make_state(sc, {11, 12, 12});
    CHECK_FALSE(space_rebalance_check(cfg, almost, 0).has_value());

    Simulation full = make_state(sc, {12, 11, 12});
    auto act = space_rebalance_check(cfg, full, 0);
    REQUIRE(act.has_value());
    CHECK(act->dest == 1);
}

TEST_CASE("space push picks the longest-idle vehicle") {
    Scenario sc = capacity_scenario(12);
    PolicyConfig cfg;
    cfg.kind = PolicyConfig::Kind::OnDemandRebalance;
    Simulation sim = make_state(sc, {10, 2, 12});
    SimulationTestPeer::move_idle(sim, 3, 0, -50.0);  // idle the longest
    auto act = space_rebalance_check(cfg, sim, 0);
    REQUIRE(act.has_value());
    CHECK(act->vehicle == 3);
}

TEST_CASE("demand pull targets the nearest donor") {
    Scenario sc = capacity_scenario(12);
    PolicyConfig cfg;
    cfg.kind = PolicyConfig::Kind::OnDemandRebalance;
    cfg.demand_lookahead = 1;

    // SFO dry with one waiting request; OAK (17 km) beats SJC (49 km).
    Simulation sim = make_state(sc, {0, 6, 6});
    SimulationTestPeer::add_pending(sim, 10.0, 0, 2);
    auto act = demand_rebalance_check(cfg, sim, 0);
    REQUIRE(act.has_value());
    CHECK(act->type == PolicyAction::Type::DispatchRebalance);
    CHECK(act->dest == 0);
    CHECK(sim.vehicles()[act->vehicle].vertiport == 1);
}

TEST_CASE("demand pull stands down when the buffer holds") {
    Scenario sc = capacity_scenario(12);
    PolicyConfig cfg;
    cfg.kind = PolicyConfig::Kind::OnDemandRebalance;
    cfg.demand_lookahead = 1;

    // One idle vehicle and one pending: stock and coverage both satisfied.
    Simulation ok = make_state(sc, {1, 6, 6});
    SimulationTestPeer::add_pending(ok, 10.0, 0, 2);
    CHECK_FALSE(demand_rebalance_check(cfg, ok, 0).has_value());

    // No qualifying donor (a lone idle elsewhere must keep its own buffer).
    Simulation empty_net = make_state(sc, {0, 1, 0});
    SimulationTestPeer::add_pending(empty_net, 10.0, 0, 2);
    CHECK_FALSE(demand_rebalance_check(cfg, empty_net, 0).has_value());
}

TEST_CASE("request handling dispatches the longest-idle vehicle first-come-first-served") {
    Scenario sc = capacity_scenario(12);
    PolicyConfig cfg;
    cfg.kind = PolicyConfig::Kind::OnDemand;

    Simulation sim = make_state(sc, {2, 5, 5});
    SimulationTestPeer::move_idle(sim, 0, 0, 5.0);
    SimulationTestPeer::move_idle(sim, 1, 0, 2.0);  // idle longer
    const int rid = SimulationTestPeer::add_pending(sim, 20.0, 0, 1);
    SimulationTestPeer::set_clock(sim, 20.0);
    auto acts = on_request(cfg, sim, sim.request(rid));
    REQUIRE(acts.size() == 1);
    CHECK(acts[0].type == PolicyAction::Type::DispatchRevenue);
    CHECK(acts[0].vehicle == 1);
    CHECK(acts[0].request_id == rid);

    // No idle vehicle at the origin: the request just queues.
    Simulation dry = make_state(sc, {0, 5, 5});
    const int rid2 = SimulationTestPeer::add_pending(dry, 20.0, 0, 1);
    CHECK(on_request(cfg, dry, dry.request(rid2)).empty());

    // With rebalancing, the same situation pulls a ferry from a neighbor.
    cfg.kind = PolicyConfig::Kind::OnDemandRebalance;
    auto acts2 = on_request(cfg, dry, dry.request(rid2));
    REQUIRE(acts2.size() == 1);
    CHECK(acts2[0].type == PolicyAction::Type::DispatchRebalance);
    CHECK(acts2[0].dest == 0);
}

TEST_CASE("ready vehicles serve the oldest pending request") {
    Scenario sc = capacity_scenario(12);
    PolicyConfig cfg;
    cfg.kind = PolicyConfig::Kind::OnDemand;
    Simulation sim = make_state(sc, {1, 5, 5});
    const int first = SimulationTestPeer::add_pending(sim, 10.0, 0, 1);
    SimulationTestPeer::add_pending(sim, 11.0, 0, 2);
    auto acts = on_vehicle_ready(cfg, sim, 0);
    REQUIRE(acts.size() == 1);
    CHECK(acts[0].request_id == first);
}

TEST_CASE("scheduled departures carry the oldest matching request or fly empty") {
    Scenario sc = capacity_scenario(12);
    PolicyConfig cfg;
    cfg.kind = PolicyConfig::Kind::Scheduled;

    Simulation sim = make_state(sc, {3, 5, 5});
    SimulationTestPeer::add_pending(sim, 9.0, 0, 2);
    const int match = SimulationTestPeer::add_pending(sim, 10.0, 0, 1);
    auto act = on_scheduled_departure(cfg, sim, 0, 1);
    REQUIRE(act.has_value());
    CHECK(act->type == PolicyAction::Type::DispatchRevenue);
    CHECK(act->request_id == match);

    // Nothing pending on the route: the slot flies empty while a spare
    // vehicle remains.
    Simulation spare = make_state(sc, {3, 5, 5});
    auto empty_act = on_scheduled_departure(cfg, spare, 0, 2);
    REQUIRE(empty_act.has_value());
    CHECK(empty_act->type == PolicyAction::Type::DispatchScheduledEmpty);

    // The last idle vehicle is kept for revenue work.
    Simulation last = make_state(sc, {1, 5, 5});
    CHECK_FALSE(on_scheduled_departure(cfg, last, 0, 2).has_value());

    // No idle vehicle at all: the slot is skipped.
    Simulation none = make_state(sc, {0, 5, 5});
    CHECK_FALSE(on_scheduled_departure(cfg, none, 0, 2).has_value());
}

TEST_CASE("schedule slots are evenly spaced with staggered phases") {
    const Network net = bay3_network();
    DemandModel demand;
    demand.kind = DemandModel::Kind::Uniform;
    demand.rate_per_hour = 9.0;
    demand.n_vertiports = 3;

    const auto entries = build_schedule(net, demand, 1440.0);
    // 9/h over 6 routes = 1.5/h each; slots at 0.6 utilization = 2.5/h.
    const double headway = 36.0 / 1.5;
    std::map<std::pair<int, int>, std::vector<double>> by_route;
    for (const ScheduleEntry& e : entries) by_route[{e.origin, e.dest}].push_back(e.time);
    REQUIRE(by_route.size() == 6);
    for (auto& [route, times] : by_route) {
        CHECK(times.size() == static_cast<size_t>(1440.0 / headway));
        for (size_t i = 1; i < times.size(); ++i) {
            CHECK(times[i] - times[i - 1] == doctest::Approx(headway));
        }
    }
    // The two routes out of one port do not share slot times.
    CHECK(std::abs(by_route[{0, 1}][0] - by_route[{0, 2}][0]) ==
          doctest::Approx(headway / 2.0));

    // Sorted by time, zero demand gives an empty schedule.
    for (size_t i = 1; i < entries.size(); ++i) CHECK(entries[i].time >= entries[i - 1].time);
    demand.rate_per_hour = 0.0;
    CHECK(build_schedule(net, demand, 1440.0).empty());
}

TEST_CASE("explicit headways override the demand-derived schedule") {
    const Network net = bay3_network();
    DemandModel demand;
    demand.rate_per_hour = 9.0;
    demand.n_vertiports = 3;
    PolicyConfig cfg;
    cfg.kind = PolicyConfig::Kind::Scheduled;
    cfg.schedule_headways[{0, 1}] = 120.0;
    const auto entries = build_schedule(net, demand, 1440.0, cfg);
    int count01 = 0;
    for (const ScheduleEntry& e : entries) {
        if (e.origin == 0 && e.dest == 1) ++count01;
    }
    CHECK(count01 == 12);
}

TEST_CASE("empty flights never carry a request over a full run") {
    Scenario sc = bay3_scenario(1.0, 12);
    sc.demand.rate_per_hour = 15.0;
    sc.horizon = 720.0;
    for (auto kind : {PolicyConfig::Kind::OnDemandRebalance, PolicyConfig::Kind::Scheduled}) {
        sc.policy.kind = kind;
        SimResult r = Simulation(sc, 31).run();
        for (const FlightRecord& f : r.flights) {
            if (f.purpose != FlightPurpose::Revenue) CHECK(f.request_id == -1);
        }
    }
}

TEST_CASE("scheduled dispatches happen only at schedule times") {
    Scenario sc = bay3_scenario(1.0, 12);
    sc.demand.rate_per_hour = 12.0;
    sc.horizon = 720.0;
    sc.policy.kind = PolicyConfig::Kind::Scheduled;
    SimResult r = Simulation(sc, 77).run();

    std::set<long long> slot_keys;
    for (const ScheduleEntry& e : build_schedule(sc.network, sc.demand, sc.horizon, sc.policy)) {
        slot_keys.insert(std::llround(e.time * 1e6));
    }
    for (const FlightRecord& f : r.flights) {
        CHECK(slot_keys.count(std::llround(f.t_request_matched * 1e6)) == 1);
    }
}
