#include "uamsim/metrics.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace uamsim {

const char* to_string(VehicleState s) {
    switch (s) {
        case VehicleState::Idle: return "idle";
        case VehicleState::GroundHold: return "ground_hold";
        case VehicleState::TakingOff: return "taking_off";
        case VehicleState::EnRoute: return "en_route";
        case VehicleState::AirHold: return "air_hold";
        case VehicleState::Landing: return "landing";
        case VehicleState::Turnaround: return "turnaround";
    }
    return "?";
}

const char* to_string(FlightPurpose p) {
    switch (p) {
        case FlightPurpose::Revenue: return "revenue";
        case FlightPurpose::Rebalance: return "rebalance";
        case FlightPurpose::ScheduledEmpty: return "scheduled_empty";
    }
    return "?";
}

double TimeLedger::state_total(VehicleState s) const {
    double sum = 0.0;
    for (const auto& v : per_vehicle) sum += v[static_cast<int>(s)];
    return sum;
}

double TimeLedger::total_minutes() const {
    double sum = 0.0;
    for (const auto& v : per_vehicle)
        for (double d : v) sum += d;
    return sum;
}

double demand_delay(const ServedRequest& r) {
    const double d = r.t_takeoff - r.t_submit;
    assert(d >= -1e-9 && "negative demand delay indicates an engine bug");
    return d;
}

double marginal_cost(const TimeLedger& ledger, const CostWeights& weights, double t_simulation) {
    if (t_simulation <= 0.0) throw std::invalid_argument("t_simulation must be positive");
    double delay_minutes = ledger.unfulfilled_wait_minutes;
    for (const ServedRequest& r : ledger.served) delay_minutes += demand_delay(r);
    const double cost = weights.idling * ledger.state_total(VehicleState::Idle) +
                        weights.ground_holding * ledger.state_total(VehicleState::GroundHold) +
                        weights.air_holding * ledger.state_total(VehicleState::AirHold) +
                        weights.cruising * ledger.additional_cruise +
                        weights.takeoff * ledger.additional_takeoff +
                        weights.landing * ledger.additional_landing +
                        weights.demand_delay * delay_minutes;
    return cost / t_simulation;
}

UtilizationShares time_utilization(const TimeLedger& ledger) {
    UtilizationShares s;
    const double total = ledger.total_minutes();
    if (total <= 0.0) return s;
    const double additional =
        ledger.additional_takeoff + ledger.additional_cruise + ledger.additional_landing;
    const double flight_total = ledger.state_total(VehicleState::TakingOff) +
                                ledger.state_total(VehicleState::EnRoute) +
                                ledger.state_total(VehicleState::Landing);
    s.en_route = (flight_total - additional) / total;
    s.rebalancing_or_overscheduled = additional / total;
    s.air_holding = ledger.state_total(VehicleState::AirHold) / total;
    s.ground_holding = ledger.state_total(VehicleState::GroundHold) / total;
    s.idling = ledger.state_total(VehicleState::Idle) / total;
    s.turnaround = ledger.state_total(VehicleState::Turnaround) / total;
    return s;
}

ThroughputReport throughput(const TimeLedger& ledger) {
    ThroughputReport rep;
    if (ledger.horizon <= 0.0) return rep;
    const double hours = ledger.horizon / 60.0;
    double delay_sum = 0.0;
    // Every served request was dispatched within the horizon and its flight
    // completes during the drain, so all of them count toward throughput.
    for (const ServedRequest& r : ledger.served) {
        ++rep.completed;
        const double d = demand_delay(r);
        delay_sum += d;
        for (size_t b = 0; b < ThroughputReport::kDelayBuckets.size(); ++b) {
            if (d < ThroughputReport::kDelayBuckets[b]) rep.bucket_per_hour[b] += 1.0;
        }
    }
    rep.completed_per_hour = rep.completed / hours;
    for (double& b : rep.bucket_per_hour) b /= hours;
    rep.mean_demand_delay = rep.completed > 0 ? delay_sum / rep.completed : 0.0;
    return rep;
}

MeanCi aggregate(const std::vector<double>& replication_values) {
    MeanCi out;
    out.n = static_cast<int>(replication_values.size());
    if (out.n == 0) return out;
    double sum = 0.0;
    for (double v : replication_values) sum += v;
    out.mean = sum / out.n;
    if (out.n < 2) return out;  // point estimate, empty interval
    double ss = 0.0;
    for (double v : replication_values) ss += (v - out.mean) * (v - out.mean);
    const double sd = std::sqrt(ss / (out.n - 1));
    out.ci_half_width = 1.96 * sd / std::sqrt(static_cast<double>(out.n));
    return out;
}

}  // namespace uamsim
