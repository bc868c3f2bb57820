#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "uamsim/demand.hpp"
#include "uamsim/network.hpp"

using namespace uamsim;

namespace {

// Analytic density of the default morning/midday/evening mixture,
// independent of the production implementation.
double oracle_density(double t) {
    const auto normal = [](double x, double mu, double s) {
        return std::exp(-0.5 * (x - mu) * (x - mu) / (s * s)) / (s * std::sqrt(2.0 * M_PI));
    };
    return normal(t, 8, 2) + normal(t, 12, 8) + normal(t, 16, 2);
}

DemandModel gmm_model(double peak, int n_vertiports = 3) {
    DemandModel m;
    m.kind = DemandModel::Kind::GaussianMixture;
    m.rate_per_hour = peak;
    m.n_vertiports = n_vertiports;
    return m;
}

DemandModel uniform_model(double rate, double noise = 0.25, int n_vertiports = 3) {
    DemandModel m;
    m.rate_per_hour = rate;
    m.noise_fraction = noise;
    m.n_vertiports = n_vertiports;
    return m;
}

}  // namespace

TEST_CASE("uniform rate is constant in time") {
    const DemandModel m = uniform_model(30.0);
    for (double t : {0.0, 6.5, 12.0, 23.9}) CHECK(rate_at(m, t) == doctest::Approx(30.0));
}

TEST_CASE("mixture density matches the analytic oracle") {
    const auto mix = DemandModel::default_mixture();
    CHECK(mixture_density(mix, 8.0) == doctest::Approx(0.2435462).epsilon(1e-5));
    CHECK(mixture_density(mix, 12.0) == doctest::Approx(0.1038588).epsilon(1e-5));
    CHECK(mixture_density(mix, 8.0) == doctest::Approx(oracle_density(8.0)));
}

TEST_CASE("mixture rate is scaled so the daily maximum equals the peak rate") {
    const DemandModel m = gmm_model(30.0);
    // Noon sits at ~42.6% of the morning/evening peaks.
    CHECK(rate_at(m, 12.0) / 30.0 == doctest::Approx(0.4263).epsilon(0.002));
    // Near-zero demand around midnight.
    CHECK(rate_at(m, 0.0) / 30.0 < 0.07);
    // Grid-scan peak location: just inside of the 8h/16h modes.
    const double peak_t = peak_hour(m);
    CHECK((std::abs(peak_t - 8.0) < 0.1 || std::abs(peak_t - 16.0) < 0.1));
}

TEST_CASE("peak normalizer handles the degenerate cases") {
    DemandModel single = gmm_model(10.0);
    single.mixture = {{12.0, 2.0, 1.0}};
    const double density_at_mode = 1.0 / (2.0 * std::sqrt(2.0 * M_PI));
    CHECK(peak_normalizer(single) == doctest::Approx(10.0 / density_at_mode).epsilon(1e-4));
    CHECK(std::abs(peak_hour(single) - 12.0) < 0.02);

    DemandModel zero = gmm_model(0.0);
    CHECK(rate_at(zero, 8.0) == doctest::Approx(0.0));
}

TEST_CASE("request generation is deterministic and well-formed") {
    const DemandModel m = uniform_model(30.0);
    const auto a = generate_requests(m, 1440.0, 42);
    const auto b = generate_requests(m, 1440.0, 42);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].t_submit == b[i].t_submit);
        CHECK(a[i].origin == b[i].origin);
        CHECK(a[i].dest == b[i].dest);
        CHECK(a[i].id == static_cast<int>(i));
        CHECK(a[i].origin != a[i].dest);
        CHECK(a[i].t_submit >= 0.0);
        CHECK(a[i].t_submit < 1440.0);
        if (i > 0) CHECK(a[i].t_submit >= a[i - 1].t_submit);
    }
    CHECK(generate_requests(uniform_model(0.0), 1440.0, 42).empty());
}

TEST_CASE("uniform mean count matches the poisson expectation") {
    // 9/h over 24h = 216 expected; mean over 200 seeds within 3 standard errors.
    const DemandModel m = uniform_model(9.0);
    double total = 0.0;
    const int seeds = 200;
    for (int s = 0; s < seeds; ++s) total += generate_requests(m, 1440.0, 1000 + s).size();
    const double mean = total / seeds;
    const double tol = 3.0 * std::sqrt(216.0) / std::sqrt(static_cast<double>(seeds));
    CHECK(std::abs(mean - 216.0) <= tol);
}

TEST_CASE("mixture mean count matches the integrated rate") {
    const DemandModel m = gmm_model(30.0);
    const double expected = mean_rate(m) * 24.0;
    double total = 0.0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) total += generate_requests(m, 1440.0, 2000 + s).size();
    const double mean = total / seeds;
    const double tol = 3.0 * std::sqrt(expected) / std::sqrt(static_cast<double>(seeds));
    CHECK(std::abs(mean - expected) <= tol);
}

TEST_CASE("thinned arrivals follow the mixture rate profile") {
    const DemandModel m = gmm_model(30.0);
    std::vector<double> counts(24, 0.0);
    for (int s = 0; s < 50; ++s) {
        for (const Request& r : generate_requests(m, 1440.0, 3000 + s)) {
            counts[static_cast<int>(r.t_submit / 60.0) % 24] += 1.0;
        }
    }
    std::vector<double> expected(24);
    for (int h = 0; h < 24; ++h) expected[h] = rate_at(m, h + 0.5);
    double mc = 0, me = 0;
    for (int h = 0; h < 24; ++h) {
        mc += counts[h] / 24;
        me += expected[h] / 24;
    }
    double num = 0, dc = 0, de = 0;
    for (int h = 0; h < 24; ++h) {
        num += (counts[h] - mc) * (expected[h] - me);
        dc += (counts[h] - mc) * (counts[h] - mc);
        de += (expected[h] - me) * (expected[h] - me);
    }
    const double pearson = num / std::sqrt(dc * de);
    CHECK(pearson > 0.9);
}

TEST_CASE("noise-free uniform inter-arrivals pass a ks test against the exponential") {
    const DemandModel m = uniform_model(30.0, 0.0);
    std::vector<double> gaps;
    for (int s = 0; s < 50; ++s) {
        const auto reqs = generate_requests(m, 1440.0, 4000 + s);
        for (size_t i = 1; i < reqs.size(); ++i) {
            gaps.push_back(reqs[i].t_submit - reqs[i - 1].t_submit);
        }
    }
    std::sort(gaps.begin(), gaps.end());
    const double rate_per_min = 30.0 / 60.0;
    double d_stat = 0.0;
    for (size_t i = 0; i < gaps.size(); ++i) {
        const double cdf = 1.0 - std::exp(-rate_per_min * gaps[i]);
        d_stat = std::max(d_stat, std::abs(cdf - (i + 1.0) / gaps.size()));
        d_stat = std::max(d_stat, std::abs(cdf - static_cast<double>(i) / gaps.size()));
    }
    const double critical = 1.628 / std::sqrt(static_cast<double>(gaps.size()));  // alpha 0.01
    CHECK(d_stat < critical);
}

TEST_CASE("imbalanced models shift request origins") {
    const DemandModel base = gmm_model(30.0);

    // Identical per-origin mixtures reproduce the shared-model rate curve.
    DemandModel even = imbalance(base, {DemandModel::default_mixture(),
                                        DemandModel::default_mixture(),
                                        DemandModel::default_mixture()});
    for (double t : {0.0, 8.0, 12.0, 16.0, 20.0}) {
        CHECK(rate_at(even, t) == doctest::Approx(rate_at(base, t)).epsilon(1e-9));
    }

    // Doubling one origin's weights gives it half of all requests.
    auto heavy = DemandModel::default_mixture();
    for (auto& c : heavy) c.weight = 2.0;
    DemandModel skewed = imbalance(
        base, {heavy, DemandModel::default_mixture(), DemandModel::default_mixture()});
    int from0 = 0, total = 0;
    for (int s = 0; s < 40; ++s) {
        for (const Request& r : generate_requests(skewed, 1440.0, 5000 + s)) {
            ++total;
            if (r.origin == 0) ++from0;
        }
    }
    CHECK(static_cast<double>(from0) / total == doctest::Approx(0.5).epsilon(0.05));

    // A zero-weight origin emits nothing.
    auto dead = DemandModel::default_mixture();
    for (auto& c : dead) c.weight = 0.0;
    DemandModel silent = imbalance(
        base, {dead, DemandModel::default_mixture(), DemandModel::default_mixture()});
    for (const Request& r : generate_requests(silent, 1440.0, 6001)) CHECK(r.origin != 0);

    CHECK_THROWS_AS(imbalance(base, {DemandModel::default_mixture()}), std::invalid_argument);
}
