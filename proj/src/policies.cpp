#include "uamsim/policies.hpp"

#include <algorithm>
#include <stdexcept>

#include "uamsim/engine.hpp"

namespace uamsim {

void PolicyConfig::validate() const {
    if (space_lookahead < 0) throw std::invalid_argument("space_lookahead must be >= 0");
    if (demand_lookahead < 1) throw std::invalid_argument("demand_lookahead must be >= 1");
    for (const auto& [route, headway] : schedule_headways) {
        if (headway <= 0.0) throw std::invalid_argument("schedule headway must be > 0");
    }
}

const char* to_string(PolicyConfig::Kind k) {
    switch (k) {
        case PolicyConfig::Kind::OnDemand: return "on_demand";
        case PolicyConfig::Kind::OnDemandRebalance: return "on_demand_rebalance";
        case PolicyConfig::Kind::Scheduled: return "scheduled";
    }
    return "?";
}

PolicyConfig::Kind policy_kind_from_string(const std::string& name) {
    if (name == "on_demand") return PolicyConfig::Kind::OnDemand;
    if (name == "on_demand_rebalance") return PolicyConfig::Kind::OnDemandRebalance;
    if (name == "scheduled") return PolicyConfig::Kind::Scheduled;
    throw std::invalid_argument("unknown policy kind: " + name);
}

std::optional<PolicyAction> demand_rebalance_check(const PolicyConfig& cfg, const Simulation& sim,
                                                   int vertiport, int idle_consumed,
                                                   int pending_consumed) {
    // Two triggers, one ferry per event. Stock: the on-site pool (idle plus
    // turnaround) with ferries already launched here must hold the
    // look-ahead buffer, whether or not anyone is waiting yet. Coverage:
    // the waiting backlog must not exceed committed supply of any kind
    // (every inbound flight becomes servable after its turnaround, and a
    // fresh ferry would be no faster).
    const VertiportState& here = sim.vertiports()[vertiport];
    const int on_site =
        sim.idle_count(vertiport) - idle_consumed + sim.turnaround_count(vertiport);
    const int stock = on_site + here.inbound_rebalance;
    const int coverage = on_site + here.inbound_total;
    const int pending = static_cast<int>(here.pending_requests.size()) - pending_consumed;
    if (stock >= cfg.demand_lookahead && coverage >= pending) return std::nullopt;

    // Donor: nearest vertiport that can give a vehicle away and still hold
    // the look-ahead buffer itself; when the whole system is tight no donor
    // qualifies and the pull stands down. Ties prefer more idle vehicles,
    // then the lowest id.
    int donor = -1;
    double donor_dist = 0.0;
    int donor_idle = 0;
    const int n = sim.network().n_vertiports();
    for (int u = 0; u < n; ++u) {
        if (u == vertiport) continue;
        const int idle_u = sim.idle_count(u);
        if (idle_u < cfg.demand_lookahead + 1) continue;
        const double d = sim.distance_km(u, vertiport);
        if (donor < 0 || d < donor_dist || (d == donor_dist && idle_u > donor_idle)) {
            donor = u;
            donor_dist = d;
            donor_idle = idle_u;
        }
    }
    if (donor < 0) return std::nullopt;
    return PolicyAction::rebalance(sim.longest_idle_vehicle(donor), vertiport,
                                   PolicyAction::RebalanceReason::DemandPull);
}

std::optional<PolicyAction> space_rebalance_check(const PolicyConfig& cfg, const Simulation& sim,
                                                  int vertiport, int exclude_vehicle) {
    const VertiportState& s = sim.vertiports()[vertiport];
    const int capacity = sim.network().vertiports[vertiport].parking_capacity;
    // Idle vehicles with local requests waiting are about to fly revenue;
    // ejecting one would trade a served request for an empty flight.
    if (!s.pending_requests.empty()) return std::nullopt;
    // Grounded vehicles are what hoards space. Landing reservations clear by
    // themselves within minutes, and vehicles already cleared to leave free
    // their slots at takeoff, so both stay out of the squeeze measure; the
    // latter also keeps one congestion episode from ejecting several idles.
    int departing = 0;
    for (int v : s.parked) {
        if (sim.vehicles()[v].state == VehicleState::GroundHold) ++departing;
    }
    const int occupancy = static_cast<int>(s.parked.size()) - departing;
    // Push when the port nears its parking limit, and also when it hoards
    // well past the fleet's even share: the strategy keeps the fleet evenly
    // distributed, not just below capacity. The share band is twice the
    // look-ahead wide, so upkeep corrects real skews rather than chasing
    // every fluctuation of the arrival flow.
    const int n = sim.network().n_vertiports();
    const int even_share = (sim.scenario().fleet_size + n - 1) / n;
    const int trigger =
        std::min(capacity - cfg.space_lookahead, even_share + 3 * cfg.space_lookahead);
    if (occupancy < trigger) return std::nullopt;

    const int vehicle = sim.longest_idle_vehicle(vertiport, exclude_vehicle);
    if (vehicle < 0) return std::nullopt;

    // Destination: the nearest qualifying vertiport (ties: lowest id), so
    // the correction burns as little flight time as possible. It must keep
    // the look-ahead buffer after accepting the vehicle and sit below the
    // even share by the same band; a push that merely relocates the squeeze
    // would bounce straight back.
    const int required = cfg.space_lookahead + 1;
    int dest = -1;
    double dest_dist = 0.0;
    for (int u = 0; u < n; ++u) {
        if (u == vertiport) continue;
        const int free_u = sim.free_slots(u);
        if (free_u < required) continue;
        if (static_cast<int>(sim.vertiports()[u].parked.size()) >
            even_share - 3 * cfg.space_lookahead) continue;
        const double d = sim.distance_km(vertiport, u);
        if (dest < 0 || d < dest_dist) {
            dest = u;
            dest_dist = d;
        }
    }
    if (dest < 0) return std::nullopt;
    return PolicyAction::rebalance(vehicle, dest, PolicyAction::RebalanceReason::SpacePush);
}

std::vector<PolicyAction> on_request(const PolicyConfig& cfg, const Simulation& sim,
                                     const Request& request) {
    std::vector<PolicyAction> actions;
    if (cfg.kind == PolicyConfig::Kind::Scheduled) return actions;  // wait for the schedule

    int consumed = 0;
    const int vehicle = sim.longest_idle_vehicle(request.origin);
    if (vehicle >= 0) {
        // FCFS: the new arrival went to the back; serve the oldest pending.
        const int oldest = sim.vertiports()[request.origin].pending_requests.front();
        actions.push_back(PolicyAction::revenue(vehicle, oldest));
        consumed = 1;
    }
    if (cfg.kind == PolicyConfig::Kind::OnDemandRebalance) {
        if (auto pull = demand_rebalance_check(cfg, sim, request.origin, consumed, consumed)) {
            actions.push_back(*pull);
        }
    }
    return actions;
}

std::vector<PolicyAction> on_vehicle_ready(const PolicyConfig& cfg, const Simulation& sim,
                                           int vehicle) {
    std::vector<PolicyAction> actions;
    if (cfg.kind == PolicyConfig::Kind::Scheduled) return actions;  // dispatch only on schedule

    const int vertiport = sim.vehicles()[vehicle].vertiport;
    int exclude = -1;
    if (!sim.vertiports()[vertiport].pending_requests.empty()) {
        actions.push_back(
            PolicyAction::revenue(vehicle, sim.vertiports()[vertiport].pending_requests.front()));
        exclude = vehicle;
    } else if (cfg.kind == PolicyConfig::Kind::OnDemandRebalance) {
        // No local work: ferry toward the deepest uncovered backlog, or,
        // lacking one, top up the vertiport whose standing stock has fallen
        // below the look-ahead buffer. Draining flows get refilled as they
        // happen instead of after requests start waiting.
        int target = -1;
        int worst_uncovered = 0;
        int stock_target = -1;
        int lowest_stock = cfg.demand_lookahead;
        const int n = sim.network().n_vertiports();
        for (int v = 0; v < n; ++v) {
            if (v == vertiport) continue;
            const VertiportState& s = sim.vertiports()[v];
            const int on_site = sim.idle_count(v) + sim.turnaround_count(v);
            const int uncovered =
                static_cast<int>(s.pending_requests.size()) - on_site - s.inbound_total;
            if (uncovered > worst_uncovered) {
                worst_uncovered = uncovered;
                target = v;
            }
            const int stock = on_site + s.inbound_rebalance;
            if (stock < lowest_stock) {
                lowest_stock = stock;
                stock_target = v;
            }
        }
        if (target < 0 && stock_target >= 0 &&
            sim.idle_count(vertiport) >= cfg.demand_lookahead + 1) {
            target = stock_target;  // donor keeps its own buffer
        }
        if (target >= 0) {
            actions.push_back(PolicyAction::rebalance(vehicle, target,
                                                      PolicyAction::RebalanceReason::DemandPull));
            exclude = vehicle;
        }
    }
    if (cfg.kind == PolicyConfig::Kind::OnDemandRebalance) {
        if (auto push = space_rebalance_check(cfg, sim, vertiport, exclude)) {
            actions.push_back(*push);
        }
    }
    return actions;
}

std::optional<PolicyAction> on_occupancy_increase(const PolicyConfig& cfg, const Simulation& sim,
                                                  int vertiport) {
    if (cfg.kind != PolicyConfig::Kind::OnDemandRebalance) return std::nullopt;
    return space_rebalance_check(cfg, sim, vertiport);
}

std::optional<PolicyAction> on_scheduled_departure(const PolicyConfig& /*cfg*/,
                                                   const Simulation& sim, int origin, int dest) {
    const int vehicle = sim.longest_idle_vehicle(origin);
    if (vehicle < 0) return std::nullopt;  // slot skipped, counted unfulfilled
    for (int rid : sim.vertiports()[origin].pending_requests) {
        if (sim.request(rid).dest == dest) return PolicyAction::revenue(vehicle, rid);
    }
    // Fly the slot empty only while the origin keeps a spare aircraft;
    // repositioning the last one starves the very next revenue slot.
    if (sim.idle_count(origin) < 2) return std::nullopt;
    return PolicyAction::scheduled_empty(vehicle, dest);
}

std::vector<ScheduleEntry> build_schedule(const Network& network, const DemandModel& demand,
                                          double horizon_minutes, const PolicyConfig& cfg) {
    std::vector<ScheduleEntry> entries;
    DemandModel model = demand;
    model.n_vertiports = network.n_vertiports();
    std::vector<int> routes_from(network.n_vertiports(), 0);
    for (const Route& r : network.routes) {
        double headway = 0.0;
        auto it = cfg.schedule_headways.find({r.origin, r.dest});
        if (it != cfg.schedule_headways.end()) {
            headway = it->second;
        } else {
            const double rate = route_mean_rate(model, r.origin, r.dest);
            if (rate <= 0.0) continue;  // no scheduled flights on a dead route
            // Slots run above the expected route demand (utilization 0.6).
            // At parity the route is a critical queue and waits diverge; the
            // margin keeps the mean wait near headway/2 while limiting how
            // many scheduled departures fly empty.
            headway = 36.0 / rate;
        }
        // Stagger phases of the routes sharing an origin so the port's
        // departure slots spread over the cycle instead of coinciding.
        const int local = routes_from[r.origin]++;
        const double phase = headway * (0.25 + 0.5 * (local % 2));
        for (double t = phase; t < horizon_minutes; t += headway) {
            entries.push_back({t, r.origin, r.dest});
        }
    }
    std::sort(entries.begin(), entries.end(), [](const ScheduleEntry& a, const ScheduleEntry& b) {
        if (a.time != b.time) return a.time < b.time;
        if (a.origin != b.origin) return a.origin < b.origin;
        return a.dest < b.dest;
    });
    return entries;
}

}  // namespace uamsim
