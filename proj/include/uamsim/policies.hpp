#pragma once

#include <map>
#include <optional>
#include <vector>

#include "uamsim/demand.hpp"
#include "uamsim/network.hpp"

namespace uamsim {

class Simulation;

/// Fleet-management policy selection and look-ahead thresholds.
/// space_lookahead 0 reproduces the naive rule (rebalance only when a
/// vertiport is full); demand_lookahead 1 reproduces the naive rule
/// (rebalance only when a vertiport has no idle aircraft).
struct PolicyConfig {
    enum class Kind { OnDemand, OnDemandRebalance, Scheduled };

    Kind kind = Kind::OnDemandRebalance;
    int space_lookahead = 2;   // free-slot buffer kept at each vertiport
    int demand_lookahead = 2;  // minimum committed stock kept at each vertiport
    /// Optional fixed headways (minutes) per directed route, overriding the
    /// demand-derived schedule. Scheduled policy only.
    std::map<std::pair<int, int>, double> schedule_headways;

    void validate() const;  // throws std::invalid_argument
};

const char* to_string(PolicyConfig::Kind k);
PolicyConfig::Kind policy_kind_from_string(const std::string& name);

struct PolicyAction {
    enum class Type { DispatchRevenue, DispatchRebalance, DispatchScheduledEmpty, NoOp };
    enum class RebalanceReason { None, SpacePush, DemandPull };

    Type type = Type::NoOp;
    int vehicle = -1;
    int dest = -1;
    int request_id = -1;
    RebalanceReason reason = RebalanceReason::None;

    static PolicyAction revenue(int vehicle, int request_id) {
        return {Type::DispatchRevenue, vehicle, -1, request_id, RebalanceReason::None};
    }
    static PolicyAction rebalance(int vehicle, int dest, RebalanceReason reason) {
        return {Type::DispatchRebalance, vehicle, dest, -1, reason};
    }
    static PolicyAction scheduled_empty(int vehicle, int dest) {
        return {Type::DispatchScheduledEmpty, vehicle, dest, -1, RebalanceReason::None};
    }
};

/// One fixed departure slot of the Scheduled policy.
struct ScheduleEntry {
    double time = 0.0;
    int origin = 0;
    int dest = 0;
};

// Policies are pure decision functions: they read the simulation state and
// emit actions, and never mutate engine state. Vehicles consumed by an
// earlier action of the same event are invisible to later triggers.

/// Reaction to a just-arrived request (already queued at its origin).
std::vector<PolicyAction> on_request(const PolicyConfig& cfg, const Simulation& sim,
                                     const Request& request);

/// Reaction to a vehicle that just became Idle.
std::vector<PolicyAction> on_vehicle_ready(const PolicyConfig& cfg, const Simulation& sim,
                                           int vehicle);

/// Reaction to an occupancy increase (landing-slot reservation) at vertiport v.
std::optional<PolicyAction> on_occupancy_increase(const PolicyConfig& cfg, const Simulation& sim,
                                                  int vertiport);

/// Dispatch decision for one fixed schedule slot. nullopt = slot skipped.
std::optional<PolicyAction> on_scheduled_departure(const PolicyConfig& cfg, const Simulation& sim,
                                                   int origin, int dest);

/// Pull an idle aircraft toward vertiport v when v has fewer than
/// demand_lookahead idle aircraft and pending requests. Donor is the nearest
/// vertiport with an idle vehicle (ties: most idle, then lowest id).
/// `idle_consumed` / `pending_consumed` discount vehicles and requests
/// already committed by earlier actions within the same event.
std::optional<PolicyAction> demand_rebalance_check(const PolicyConfig& cfg, const Simulation& sim,
                                                   int vertiport, int idle_consumed = 0,
                                                   int pending_consumed = 0);

/// Push the longest-idle aircraft out of vertiport v when its occupancy is
/// within space_lookahead of capacity, toward the vertiport with the most
/// free slots (ties: lowest id; destinations need > space_lookahead free
/// slots). `exclude_vehicle` discounts a vehicle committed earlier in the
/// same event.
std::optional<PolicyAction> space_rebalance_check(const PolicyConfig& cfg, const Simulation& sim,
                                                  int vertiport, int exclude_vehicle = -1);

/// Fixed departure times per directed route, evenly spaced with headway
/// 60 / (expected requests/hour on the route), phase offset headway/2.
/// Routes with zero expected rate get no scheduled flights.
std::vector<ScheduleEntry> build_schedule(const Network& network, const DemandModel& demand,
                                          double horizon_minutes,
                                          const PolicyConfig& cfg = PolicyConfig{});

}  // namespace uamsim
