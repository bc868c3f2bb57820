#pragma once

#include <array>
#include <vector>

namespace uamsim {

/// Vehicle lifecycle states, in transition order.
enum class VehicleState {
    Idle = 0,
    GroundHold = 1,
    TakingOff = 2,
    EnRoute = 3,
    AirHold = 4,
    Landing = 5,
    Turnaround = 6,
};
constexpr int kNumVehicleStates = 7;
const char* to_string(VehicleState s);

enum class FlightPurpose { Revenue = 0, Rebalance = 1, ScheduledEmpty = 2 };
const char* to_string(FlightPurpose p);

/// A matched request, with the timestamps that define its delay and
/// completion. t_landing_done may exceed the horizon (drain tail).
struct ServedRequest {
    int request_id = -1;
    double t_submit = 0.0;
    double t_takeoff = 0.0;
    double t_landing_done = 0.0;
};

/// Accumulated per-state time for one run, plus the flight-purpose split
/// needed by the cost function. All durations are minutes.
struct TimeLedger {
    int fleet_size = 0;
    double horizon = 0.0;

    /// [vehicle][state] minutes. Per vehicle the buckets sum to the horizon,
    /// plus the tail of an operation that was still in flight at the horizon.
    std::vector<std::array<double, kNumVehicleStates>> per_vehicle;

    // Takeoff / cruise / landing minutes of flights that flew in addition to
    // customer requests (rebalancing or over-scheduled).
    double additional_takeoff = 0.0;
    double additional_cruise = 0.0;
    double additional_landing = 0.0;
    double rebalancing_minutes = 0.0;  // takeoff+cruise+landing of Rebalance flights only

    std::vector<ServedRequest> served;  // in dispatch order
    int generated_requests = 0;
    int unfulfilled_requests = 0;
    double unfulfilled_wait_minutes = 0.0;  // sum of (horizon - t_submit) over unfulfilled
    int scheduled_slots_skipped = 0;
    int rebalance_flights = 0;
    int rebalance_pushes = 0;  // space-driven
    int rebalance_pulls = 0;   // demand-driven
    int scheduled_empty_flights = 0;

    double state_total(VehicleState s) const;
    double total_minutes() const;  // sum over all vehicles and states
};

/// Cost per minute of accumulated time in each segment.
struct CostWeights {
    double idling = 1.0;
    double ground_holding = 5.0;
    double air_holding = 100.0;
    double cruising = 50.0;
    double takeoff = 150.0;
    double landing = 150.0;
    double demand_delay = 100.0;
};

struct ThroughputReport {
    double completed_per_hour = 0.0;
    /// Completed/hour with demand delay under 1, 5, 15, 30, 60, 120 minutes.
    static constexpr std::array<double, 6> kDelayBuckets = {1, 5, 15, 30, 60, 120};
    std::array<double, 6> bucket_per_hour{};
    double mean_demand_delay = 0.0;
    int completed = 0;
};

struct UtilizationShares {
    double en_route = 0.0;  // revenue takeoff + cruise + landing
    double air_holding = 0.0;
    double ground_holding = 0.0;
    double idling = 0.0;
    double turnaround = 0.0;
    double rebalancing_or_overscheduled = 0.0;

    double sum() const {
        return en_route + air_holding + ground_holding + idling + turnaround +
               rebalancing_or_overscheduled;
    }
};

struct MeanCi {
    double mean = 0.0;
    double ci_half_width = 0.0;  // normal-approximation 95% interval
    int n = 0;
};

/// Minutes from request submission to takeoff of the aircraft serving it.
double demand_delay(const ServedRequest& r);

/// Weighted per-minute operating cost above the nominal demand-serving cost.
/// Ground/air holding and demand delay are charged for all flights; cruise,
/// takeoff and landing are charged only for the additional (rebalancing or
/// over-scheduled) flights. Unfulfilled requests contribute their accrued
/// waiting time to the delay term. Throws on t_simulation <= 0.
double marginal_cost(const TimeLedger& ledger, const CostWeights& weights, double t_simulation);

/// Category shares of total fleet time. Shares sum to 1.
UtilizationShares time_utilization(const TimeLedger& ledger);

/// Hourly completion rates over the horizon. Only requests whose flight
/// finished landing within the horizon count as completed.
ThroughputReport throughput(const TimeLedger& ledger);

/// Mean and 95% confidence interval across replication values.
MeanCi aggregate(const std::vector<double>& replication_values);

}  // namespace uamsim
