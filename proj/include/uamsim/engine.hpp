#pragma once

#include <cstdint>
#include <deque>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "uamsim/demand.hpp"
#include "uamsim/metrics.hpp"
#include "uamsim/network.hpp"
#include "uamsim/policies.hpp"
#include "uamsim/rng.hpp"

namespace uamsim {

/// Full experiment description: network, fleet, demand, policy, durations.
struct Scenario {
    Network network;
    int fleet_size = 36;
    DemandModel demand;
    PolicyConfig policy;

    double horizon = 1440.0;        // minutes
    double turnaround_mean = 10.0;  // minutes
    double turnaround_std = 5.0;    // minutes
    double takeoff_duration = 3.0;  // minutes
    double landing_duration = 3.0;  // minutes
    int replications = 5;

    void validate() const;  // throws std::invalid_argument
};

struct VehicleRecord {
    int id = 0;
    VehicleState state = VehicleState::Idle;
    int vertiport = -1;       // valid for ground states; -1 while airborne
    int flight = -1;          // active flight id, -1 when none
    double state_entered_at = 0.0;
};

/// Per-flight lifecycle timestamps. A timestamp is negative until reached.
struct FlightRecord {
    int id = -1;
    int vehicle = -1;
    int origin = -1;
    int dest = -1;
    FlightPurpose purpose = FlightPurpose::Revenue;
    int request_id = -1;  // >= 0 iff purpose == Revenue
    double t_request_matched = -1.0;
    double t_slot_reserved = -1.0;  // destination slot reservation (landing grant)
    double t_takeoff = -1.0;
    double t_enter_dest_airspace = -1.0;
    double t_landing_start = -1.0;
    double t_landing_done = -1.0;
};

/// Mutable per-vertiport resource state: parking, fix clearances, queues.
struct VertiportState {
    int id = 0;
    std::set<int> parked;    // vehicle ids on the ground (idle/hold/turnaround)
    int reserved_slots = 0;  // landing clearances granted, vehicle not yet down
    std::deque<int> air_hold_queue;      // flight ids, FCFS
    std::deque<int> pending_requests;    // request ids, FCFS
    int inbound_rebalance = 0;           // dispatched ferries not yet landed
    int inbound_total = 0;               // all dispatched flights not yet landed
    double last_landing_clearance = -1e18;
    double last_takeoff_clearance = -1e18;
};

/// One vehicle state transition, in chronological order.
struct Transition {
    double t = 0.0;
    int vehicle = -1;
    VehicleState from = VehicleState::Idle;
    VehicleState to = VehicleState::Idle;
    int vertiport = -1;  // ground location, or -1 while airborne
    int origin = -1;     // route endpoints for airborne states
    int dest = -1;
    int flight = -1;
    FlightPurpose purpose = FlightPurpose::Revenue;
};

struct SimResult {
    TimeLedger ledger;
    std::vector<FlightRecord> flights;
    std::vector<Request> requests;
    std::vector<Transition> transitions;
    /// Time at which stuck post-horizon arrivals were force-landed past the
    /// parking constraint to guarantee the drain terminates; -1 if unused.
    double force_drain_time = -1.0;
};

/// Deterministic discrete-event simulation of one scenario replication.
/// Events are processed in (time, sequence-number) order; the event log is a
/// pure function of (scenario, seed). A single run is strictly
/// single-threaded; independent replications may run concurrently.
class Simulation {
  public:
    Simulation(Scenario scenario, uint64_t seed);
    /// Test entry point: run against an externally supplied request list
    /// instead of sampling the scenario's demand model.
    Simulation(Scenario scenario, uint64_t seed, std::vector<Request> requests);

    /// Process all events until the horizon, drain in-flight operations,
    /// and return the completed ledgers and logs.
    SimResult run();

    // Read-only views for policy decision functions.
    const Scenario& scenario() const { return scenario_; }
    const Network& network() const { return scenario_.network; }
    double now() const { return clock_; }
    const std::vector<VehicleRecord>& vehicles() const { return vehicles_; }
    const std::vector<VertiportState>& vertiports() const { return vertiport_states_; }
    const Request& request(int id) const { return requests_[id]; }

    int idle_count(int vertiport) const;
    int turnaround_count(int vertiport) const;
    /// Longest-idle vehicle at a vertiport (ties: lowest id); -1 when none.
    int longest_idle_vehicle(int vertiport, int exclude_vehicle = -1) const;
    int free_slots(int vertiport) const;
    double distance_km(int a, int b) const;

    /// Truncated-below-zero Normal(turnaround_mean, turnaround_std) sample;
    /// negative draws are rejected and redrawn. std 0 gives the mean exactly.
    static double sample_turnaround(RandomStream& rng, double mean, double std_dev);

  private:
    enum class EventType : uint8_t {
        RequestArrival,
        TakeoffStart,
        TakeoffDone,
        ArriveFix,
        LandingStart,
        LandingDone,
        TurnaroundDone,
        ScheduledDeparture,
    };

    struct Event {
        double t;
        uint64_t seq;
        EventType type;
        int payload;  // request/flight/vehicle/schedule index per type
        bool operator>(const Event& other) const {
            if (t != other.t) return t > other.t;
            return seq > other.seq;
        }
    };

    void schedule(double t, EventType type, int payload);
    void handle(const Event& e);

    void transition_vehicle(int vehicle, VehicleState to, double t);
    void apply_actions(const std::vector<PolicyAction>& actions);
    void apply(const PolicyAction& action);
    void dispatch(int vehicle, int dest, FlightPurpose purpose, int request_id);

    /// Grant queued landing clearances while slots are available. Each grant
    /// reserves a slot and books separation; occupancy-increase policy hooks
    /// fire after the queue settles.
    void try_clear_arrivals(int vertiport);
    void grant_landing(int flight_id, double t_clear);
    void finalize_flight(int flight_id);
    void force_drain_air_holds();

    /// Segment of the block flight time spent in TakingOff / Landing states.
    double takeoff_segment(int flight_id) const;
    double landing_segment(int flight_id) const;
    double block_time(int origin, int dest) const;

    Scenario scenario_;
    double clock_ = 0.0;
    uint64_t next_seq_ = 0;
    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue_;

    std::vector<VehicleRecord> vehicles_;
    std::vector<VertiportState> vertiport_states_;
    std::vector<Request> requests_;
    std::vector<FlightRecord> flights_;
    std::vector<ScheduleEntry> schedule_entries_;
    std::vector<Transition> transitions_;

    TimeLedger ledger_;
    RandomStream turnaround_stream_;
    RandomStream policy_stream_;  // reserved for stochastic policies

    friend class SimulationTestPeer;
};

/// Round-robin initial placement: vehicle k starts Idle at vertiport k mod n.
/// Throws when the fleet exceeds total parking capacity.
std::vector<int> initial_placement(const Scenario& scenario);

}  // namespace uamsim
