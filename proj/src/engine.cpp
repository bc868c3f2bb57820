#include "uamsim/engine.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace uamsim {

void Scenario::validate() const {
    network.validate();
    if (network.n_vertiports() < 1) throw std::invalid_argument("network has no vertiports");
    if (fleet_size <= 0) throw std::invalid_argument("fleet_size must be positive");
    if (horizon <= 0.0) throw std::invalid_argument("horizon must be positive");
    if (turnaround_mean < 0.0) throw std::invalid_argument("turnaround_mean must be >= 0");
    if (turnaround_std < 0.0) throw std::invalid_argument("turnaround_std must be >= 0");
    if (takeoff_duration < 0.0) throw std::invalid_argument("takeoff_duration must be >= 0");
    if (landing_duration < 0.0) throw std::invalid_argument("landing_duration must be >= 0");
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    demand.validate();
    policy.validate();
}

std::vector<int> initial_placement(const Scenario& scenario) {
    const int n = scenario.network.n_vertiports();
    std::vector<int> placement(scenario.fleet_size);
    std::vector<int> count(n, 0);
    for (int k = 0; k < scenario.fleet_size; ++k) {
        placement[k] = k % n;
        ++count[k % n];
    }
    for (int v = 0; v < n; ++v) {
        if (count[v] > scenario.network.vertiports[v].parking_capacity) {
            throw std::invalid_argument(
                "fleet exceeds parking capacity: vertiport " + std::to_string(v) + " holds " +
                std::to_string(count[v]) + " of capacity " +
                std::to_string(scenario.network.vertiports[v].parking_capacity));
        }
    }
    return placement;
}

double Simulation::sample_turnaround(RandomStream& rng, double mean, double std_dev) {
    if (std_dev <= 0.0) return std::max(0.0, mean);
    double x = rng.normal(mean, std_dev);
    while (x < 0.0) x = rng.normal(mean, std_dev);
    return x;
}

Simulation::Simulation(Scenario scenario, uint64_t seed)
    : Simulation(std::move(scenario), seed, {}) {}

Simulation::Simulation(Scenario scenario, uint64_t seed, std::vector<Request> requests)
    : scenario_(std::move(scenario)) {
    scenario_.demand.n_vertiports = scenario_.network.n_vertiports();
    scenario_.validate();
    const bool injected = !requests.empty();

    const std::vector<int> placement = initial_placement(scenario_);
    const int n = scenario_.network.n_vertiports();
    vertiport_states_.resize(n);
    for (int v = 0; v < n; ++v) vertiport_states_[v].id = v;

    vehicles_.resize(scenario_.fleet_size);
    ledger_.fleet_size = scenario_.fleet_size;
    ledger_.horizon = scenario_.horizon;
    ledger_.per_vehicle.assign(scenario_.fleet_size, {});
    for (int k = 0; k < scenario_.fleet_size; ++k) {
        vehicles_[k].id = k;
        vehicles_[k].vertiport = placement[k];
        vertiport_states_[placement[k]].parked.insert(k);
    }

    // Independent named streams: demand arrivals, turnaround, policy, noise.
    RandomStream arrival_stream = RandomStream::derive(seed, 1);
    turnaround_stream_ = RandomStream::derive(seed, 2);
    policy_stream_ = RandomStream::derive(seed, 3);
    RandomStream noise_stream = RandomStream::derive(seed, 4);

    requests_ = injected ? std::move(requests)
                         : generate_requests(scenario_.demand, scenario_.horizon, arrival_stream,
                                             noise_stream);
    ledger_.generated_requests = static_cast<int>(requests_.size());
    for (const Request& r : requests_) schedule(r.t_submit, EventType::RequestArrival, r.id);

    if (scenario_.policy.kind == PolicyConfig::Kind::Scheduled) {
        schedule_entries_ =
            build_schedule(scenario_.network, scenario_.demand, scenario_.horizon, scenario_.policy);
        for (int i = 0; i < static_cast<int>(schedule_entries_.size()); ++i) {
            schedule(schedule_entries_[i].time, EventType::ScheduledDeparture, i);
        }
    }
}

void Simulation::schedule(double t, EventType type, int payload) {
    queue_.push(Event{t, next_seq_++, type, payload});
}

double Simulation::block_time(int origin, int dest) const {
    return travel_time(scenario_.network, origin, dest);
}

// Takeoff and landing are segments of the block flight time; short hops are
// split evenly so the cruise segment never goes negative.
double Simulation::takeoff_segment(int flight_id) const {
    const FlightRecord& f = flights_[flight_id];
    return std::min(scenario_.takeoff_duration, block_time(f.origin, f.dest) / 2.0);
}

double Simulation::landing_segment(int flight_id) const {
    const FlightRecord& f = flights_[flight_id];
    return std::min(scenario_.landing_duration, block_time(f.origin, f.dest) / 2.0);
}

int Simulation::idle_count(int vertiport) const {
    int count = 0;
    for (int v : vertiport_states_[vertiport].parked) {
        if (vehicles_[v].state == VehicleState::Idle) ++count;
    }
    return count;
}

int Simulation::turnaround_count(int vertiport) const {
    int count = 0;
    for (int v : vertiport_states_[vertiport].parked) {
        if (vehicles_[v].state == VehicleState::Turnaround) ++count;
    }
    return count;
}

int Simulation::longest_idle_vehicle(int vertiport, int exclude_vehicle) const {
    int best = -1;
    double best_since = 0.0;
    for (int v : vertiport_states_[vertiport].parked) {
        if (v == exclude_vehicle || vehicles_[v].state != VehicleState::Idle) continue;
        if (best < 0 || vehicles_[v].state_entered_at < best_since) {
            best = v;
            best_since = vehicles_[v].state_entered_at;
        }
    }
    return best;
}

int Simulation::free_slots(int vertiport) const {
    const VertiportState& s = vertiport_states_[vertiport];
    return scenario_.network.vertiports[vertiport].parking_capacity -
           static_cast<int>(s.parked.size()) - s.reserved_slots;
}

double Simulation::distance_km(int a, int b) const {
    const int idx = scenario_.network.route_index(a, b);
    if (idx >= 0) return scenario_.network.routes[idx].distance_km;
    const Vertiport& va = scenario_.network.vertiports[a];
    const Vertiport& vb = scenario_.network.vertiports[b];
    return great_circle_distance(va.lat, va.lon, vb.lat, vb.lon);
}

void Simulation::transition_vehicle(int vehicle, VehicleState to, double t) {
    VehicleRecord& rec = vehicles_[vehicle];
    ledger_.per_vehicle[vehicle][static_cast<int>(rec.state)] += t - rec.state_entered_at;

    Transition tr;
    tr.t = t;
    tr.vehicle = vehicle;
    tr.from = rec.state;
    tr.to = to;
    tr.vertiport = rec.vertiport;
    tr.flight = rec.flight;
    if (rec.flight >= 0) {
        tr.origin = flights_[rec.flight].origin;
        tr.dest = flights_[rec.flight].dest;
        tr.purpose = flights_[rec.flight].purpose;
    }
    transitions_.push_back(tr);

    rec.state = to;
    rec.state_entered_at = t;
}

void Simulation::apply_actions(const std::vector<PolicyAction>& actions) {
    for (const PolicyAction& a : actions) apply(a);
}

void Simulation::apply(const PolicyAction& action) {
    switch (action.type) {
        case PolicyAction::Type::NoOp:
            return;
        case PolicyAction::Type::DispatchRevenue: {
            const Request& req = requests_[action.request_id];
            VertiportState& s = vertiport_states_[req.origin];
            auto it = std::find(s.pending_requests.begin(), s.pending_requests.end(),
                                action.request_id);
            assert(it != s.pending_requests.end() && "revenue dispatch for unqueued request");
            s.pending_requests.erase(it);
            dispatch(action.vehicle, req.dest, FlightPurpose::Revenue, action.request_id);
            return;
        }
        case PolicyAction::Type::DispatchRebalance:
            if (action.reason == PolicyAction::RebalanceReason::SpacePush) {
                ++ledger_.rebalance_pushes;
            } else {
                ++ledger_.rebalance_pulls;
            }
            dispatch(action.vehicle, action.dest, FlightPurpose::Rebalance, -1);
            return;
        case PolicyAction::Type::DispatchScheduledEmpty:
            dispatch(action.vehicle, action.dest, FlightPurpose::ScheduledEmpty, -1);
            return;
    }
}

void Simulation::dispatch(int vehicle, int dest, FlightPurpose purpose, int request_id) {
    VehicleRecord& rec = vehicles_[vehicle];
    assert(rec.state == VehicleState::Idle && "dispatched vehicle must be idle");
    const int origin = rec.vertiport;
    assert(origin != dest);

    FlightRecord f;
    f.id = static_cast<int>(flights_.size());
    f.vehicle = vehicle;
    f.origin = origin;
    f.dest = dest;
    f.purpose = purpose;
    f.request_id = request_id;
    f.t_request_matched = clock_;
    flights_.push_back(f);
    rec.flight = f.id;
    if (purpose == FlightPurpose::Rebalance) ++vertiport_states_[dest].inbound_rebalance;
    ++vertiport_states_[dest].inbound_total;

    transition_vehicle(vehicle, VehicleState::GroundHold, clock_);

    const Vertiport& vp = scenario_.network.vertiports[origin];
    VertiportState& s = vertiport_states_[origin];
    const double t_clear =
        std::max(clock_ + vp.taxi_out, s.last_takeoff_clearance + vp.departure_separation);
    s.last_takeoff_clearance = t_clear;
    schedule(t_clear, EventType::TakeoffStart, f.id);
}

void Simulation::grant_landing(int flight_id, double t_clear) {
    FlightRecord& f = flights_[flight_id];
    VertiportState& s = vertiport_states_[f.dest];
    f.t_slot_reserved = clock_;
    ++s.reserved_slots;
    s.last_landing_clearance = t_clear;
    f.t_landing_start = t_clear;
    schedule(t_clear, EventType::LandingStart, flight_id);
}

void Simulation::try_clear_arrivals(int vertiport) {
    VertiportState& s = vertiport_states_[vertiport];
    const Vertiport& vp = scenario_.network.vertiports[vertiport];
    int granted = 0;
    while (!s.air_hold_queue.empty() && free_slots(vertiport) > 0) {
        const int fid = s.air_hold_queue.front();
        s.air_hold_queue.pop_front();
        const double t_clear =
            std::max(clock_, s.last_landing_clearance + vp.arrival_separation);
        grant_landing(fid, t_clear);
        ++granted;
    }
    if (granted > 0 && clock_ < scenario_.horizon) {
        if (auto a = on_occupancy_increase(scenario_.policy, *this, vertiport)) apply(*a);
    }
}

void Simulation::finalize_flight(int flight_id) {
    FlightRecord& f = flights_[flight_id];
    const double to_seg = takeoff_segment(flight_id);
    const double ld_seg = landing_segment(flight_id);
    const double cruise = block_time(f.origin, f.dest) - to_seg - ld_seg;
    --vertiport_states_[f.dest].inbound_total;
    if (f.purpose == FlightPurpose::Revenue) {
        ledger_.served.push_back(
            {f.request_id, requests_[f.request_id].t_submit, f.t_takeoff, f.t_landing_done});
    } else {
        if (f.purpose == FlightPurpose::Rebalance) --vertiport_states_[f.dest].inbound_rebalance;
        ledger_.additional_takeoff += to_seg;
        ledger_.additional_cruise += cruise;
        ledger_.additional_landing += ld_seg;
        if (f.purpose == FlightPurpose::Rebalance) {
            ledger_.rebalancing_minutes += to_seg + cruise + ld_seg;
            ++ledger_.rebalance_flights;
        } else {
            ++ledger_.scheduled_empty_flights;
        }
    }
    vehicles_[f.vehicle].flight = -1;
}

void Simulation::handle(const Event& e) {
    assert(e.t >= clock_ - 1e-9 && "event queue dispatched into the past");
    clock_ = e.t;
    switch (e.type) {
        case EventType::RequestArrival: {
            const Request& req = requests_[e.payload];
            vertiport_states_[req.origin].pending_requests.push_back(req.id);
            if (clock_ < scenario_.horizon) {
                apply_actions(on_request(scenario_.policy, *this, req));
            }
            return;
        }
        case EventType::TakeoffStart: {
            FlightRecord& f = flights_[e.payload];
            f.t_takeoff = clock_;
            transition_vehicle(f.vehicle, VehicleState::TakingOff, clock_);
            vertiport_states_[f.origin].parked.erase(f.vehicle);
            vehicles_[f.vehicle].vertiport = -1;
            schedule(clock_ + takeoff_segment(e.payload), EventType::TakeoffDone, e.payload);
            try_clear_arrivals(f.origin);  // the departure freed one slot
            return;
        }
        case EventType::TakeoffDone: {
            const FlightRecord& f = flights_[e.payload];
            transition_vehicle(f.vehicle, VehicleState::EnRoute, clock_);
            const double cruise =
                block_time(f.origin, f.dest) - takeoff_segment(e.payload) - landing_segment(e.payload);
            schedule(clock_ + cruise, EventType::ArriveFix, e.payload);
            return;
        }
        case EventType::ArriveFix: {
            FlightRecord& f = flights_[e.payload];
            f.t_enter_dest_airspace = clock_;
            transition_vehicle(f.vehicle, VehicleState::AirHold, clock_);
            vertiport_states_[f.dest].air_hold_queue.push_back(e.payload);
            try_clear_arrivals(f.dest);
            return;
        }
        case EventType::LandingStart: {
            const FlightRecord& f = flights_[e.payload];
            transition_vehicle(f.vehicle, VehicleState::Landing, clock_);
            schedule(clock_ + landing_segment(e.payload), EventType::LandingDone, e.payload);
            return;
        }
        case EventType::LandingDone: {
            FlightRecord& f = flights_[e.payload];
            f.t_landing_done = clock_;
            VertiportState& s = vertiport_states_[f.dest];
            --s.reserved_slots;
            s.parked.insert(f.vehicle);
            vehicles_[f.vehicle].vertiport = f.dest;
            transition_vehicle(f.vehicle, VehicleState::Turnaround, clock_);
            finalize_flight(e.payload);
            const double dt = sample_turnaround(turnaround_stream_, scenario_.turnaround_mean,
                                                scenario_.turnaround_std) +
                              scenario_.network.vertiports[f.dest].taxi_in;
            schedule(clock_ + dt, EventType::TurnaroundDone, f.vehicle);
            return;
        }
        case EventType::TurnaroundDone: {
            transition_vehicle(e.payload, VehicleState::Idle, clock_);
            if (clock_ < scenario_.horizon) {
                apply_actions(on_vehicle_ready(scenario_.policy, *this, e.payload));
            }
            return;
        }
        case EventType::ScheduledDeparture: {
            const ScheduleEntry& entry = schedule_entries_[e.payload];
            if (clock_ >= scenario_.horizon) return;
            if (auto a = on_scheduled_departure(scenario_.policy, *this, entry.origin, entry.dest)) {
                apply(*a);
            } else {
                ++ledger_.scheduled_slots_skipped;
            }
            return;
        }
    }
}

void Simulation::force_drain_air_holds() {
    for (VertiportState& s : vertiport_states_) {
        const Vertiport& vp = scenario_.network.vertiports[s.id];
        while (!s.air_hold_queue.empty()) {
            const int fid = s.air_hold_queue.front();
            s.air_hold_queue.pop_front();
            grant_landing(fid, std::max(clock_, s.last_landing_clearance + vp.arrival_separation));
        }
    }
}

SimResult Simulation::run() {
    SimResult result;
    while (true) {
        while (!queue_.empty()) {
            const Event e = queue_.top();
            queue_.pop();
            handle(e);
        }
        bool stuck = false;
        for (const VertiportState& s : vertiport_states_) {
            if (!s.air_hold_queue.empty()) stuck = true;
        }
        if (!stuck) break;
        // No departures will ever free a slot again; land the stragglers past
        // the parking constraint so the drain terminates.
        if (result.force_drain_time < 0.0) result.force_drain_time = clock_;
        force_drain_air_holds();
    }

    // Close the ledger: idling accrues to the nominal horizon only.
    for (VehicleRecord& rec : vehicles_) {
        assert(rec.state == VehicleState::Idle && "drained run left a vehicle mid-operation");
        if (rec.state_entered_at < scenario_.horizon) {
            ledger_.per_vehicle[rec.id][static_cast<int>(VehicleState::Idle)] +=
                scenario_.horizon - rec.state_entered_at;
        }
    }

    std::vector<char> matched(requests_.size(), 0);
    for (const FlightRecord& f : flights_) {
        if (f.request_id >= 0) matched[f.request_id] = 1;
    }
    for (const Request& r : requests_) {
        if (!matched[r.id]) {
            ++ledger_.unfulfilled_requests;
            ledger_.unfulfilled_wait_minutes += scenario_.horizon - r.t_submit;
        }
    }

    result.ledger = std::move(ledger_);
    result.flights = std::move(flights_);
    result.requests = std::move(requests_);
    result.transitions = std::move(transitions_);
    return result;
}

}  // namespace uamsim
