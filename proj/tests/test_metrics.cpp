#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "uamsim/metrics.hpp"
#include "uamsim/rng.hpp"

using namespace uamsim;

namespace {

TimeLedger idle_only_ledger(int fleet, double horizon) {
    TimeLedger l;
    l.fleet_size = fleet;
    l.horizon = horizon;
    l.per_vehicle.assign(fleet, {});
    for (auto& v : l.per_vehicle) v[static_cast<int>(VehicleState::Idle)] = horizon;
    return l;
}

TimeLedger random_ledger(RandomStream& rng) {
    TimeLedger l;
    l.fleet_size = 4;
    l.horizon = 600.0;
    l.per_vehicle.assign(4, {});
    for (auto& v : l.per_vehicle) {
        for (double& d : v) d = rng.uniform(0.0, 120.0);
    }
    l.additional_takeoff = rng.uniform(0.0, 30.0);
    l.additional_cruise = rng.uniform(0.0, 120.0);
    l.additional_landing = rng.uniform(0.0, 30.0);
    l.served.push_back({0, 10.0, 10.0 + rng.uniform(0.0, 20.0), 60.0});
    l.generated_requests = 2;
    l.unfulfilled_requests = 1;
    l.unfulfilled_wait_minutes = rng.uniform(0.0, 60.0);
    return l;
}

}  // namespace

TEST_CASE("demand delay is the takeoff-minus-submit difference") {
    CHECK(demand_delay({0, 100.0, 112.0, 130.0}) == doctest::Approx(12.0));
    CHECK(demand_delay({0, 100.0, 100.0, 120.0}) == doctest::Approx(0.0));
}

TEST_CASE("zero-demand cost collapses to the idling term") {
    const TimeLedger l = idle_only_ledger(36, 1440.0);
    CHECK(marginal_cost(l, CostWeights{}, 1440.0) == doctest::Approx(36.0));
    const TimeLedger empty = idle_only_ledger(0, 1440.0);
    CHECK(marginal_cost(empty, CostWeights{}, 1440.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(marginal_cost(l, CostWeights{}, 0.0), std::invalid_argument);
}

TEST_CASE("cost never decreases when a weight increases") {
    RandomStream rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const TimeLedger l = random_ledger(rng);
        const CostWeights base;
        const double j0 = marginal_cost(l, base, l.horizon);
        for (int w = 0; w < 7; ++w) {
            CostWeights bumped = base;
            switch (w) {
                case 0: bumped.idling += 10; break;
                case 1: bumped.ground_holding += 10; break;
                case 2: bumped.air_holding += 10; break;
                case 3: bumped.cruising += 10; break;
                case 4: bumped.takeoff += 10; break;
                case 5: bumped.landing += 10; break;
                case 6: bumped.demand_delay += 10; break;
            }
            CHECK(marginal_cost(l, bumped, l.horizon) >= j0 - 1e-9);
        }
    }
}

TEST_CASE("unfulfilled requests contribute their accrued waiting time") {
    TimeLedger l = idle_only_ledger(1, 100.0);
    l.generated_requests = 1;
    l.unfulfilled_requests = 1;
    l.unfulfilled_wait_minutes = 40.0;  // submitted at t=60, horizon 100
    CostWeights w;
    CHECK(marginal_cost(l, w, 100.0) ==
          doctest::Approx((1.0 * 100.0 + 100.0 * 40.0) / 100.0));
}

TEST_CASE("utilization shares partition the fleet time") {
    const TimeLedger idle = idle_only_ledger(5, 300.0);
    CHECK(time_utilization(idle).idling == doctest::Approx(1.0));
    CHECK(time_utilization(idle).sum() == doctest::Approx(1.0));

    RandomStream rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const TimeLedger l = random_ledger(rng);
        CHECK(time_utilization(l).sum() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("throughput buckets are monotone in the delay threshold") {
    TimeLedger l = idle_only_ledger(3, 600.0);
    RandomStream rng(23);
    for (int i = 0; i < 40; ++i) {
        const double submit = rng.uniform(0.0, 500.0);
        l.served.push_back({i, submit, submit + rng.uniform(0.0, 150.0), submit + 40.0});
    }
    l.generated_requests = 40;
    const ThroughputReport rep = throughput(l);
    CHECK(rep.completed == 40);
    for (size_t b = 1; b < rep.bucket_per_hour.size(); ++b) {
        CHECK(rep.bucket_per_hour[b] >= rep.bucket_per_hour[b - 1]);
    }
    CHECK(rep.bucket_per_hour.back() <= rep.completed_per_hour + 1e-12);

    const ThroughputReport none = throughput(idle_only_ledger(3, 600.0));
    CHECK(none.completed == 0);
    CHECK(none.completed_per_hour == doctest::Approx(0.0));
}

TEST_CASE("aggregation gives the normal-approximation confidence interval") {
    const MeanCi identical = aggregate({3.0, 3.0, 3.0, 3.0});
    CHECK(identical.mean == doctest::Approx(3.0));
    CHECK(identical.ci_half_width == doctest::Approx(0.0));

    const MeanCi pair = aggregate({10.0, 14.0});
    CHECK(pair.mean == doctest::Approx(12.0));
    CHECK(pair.ci_half_width == doctest::Approx(3.92));

    const MeanCi single = aggregate({7.0});
    CHECK(single.mean == doctest::Approx(7.0));
    CHECK(single.ci_half_width == doctest::Approx(0.0));  // point estimate

    // The interval shrinks like 1/sqrt(n).
    RandomStream rng(31);
    std::vector<double> small, large;
    for (int i = 0; i < 20; ++i) small.push_back(rng.normal(5.0, 1.0));
    for (int i = 0; i < 2000; ++i) large.push_back(rng.normal(5.0, 1.0));
    CHECK(aggregate(large).ci_half_width < aggregate(small).ci_half_width / 5.0);
}
