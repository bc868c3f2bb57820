#pragma once

#include <vector>

#include "uamsim/rng.hpp"

namespace uamsim {

/// One travel demand: the unit of throughput.
struct Request {
    int id = 0;
    double t_submit = 0.0;  // simulation minutes
    int origin = 0;
    int dest = 0;
};

struct MixtureComponent {
    double mean_hour = 0.0;
    double std_hour = 1.0;
    double weight = 1.0;
};

/// Stochastic request generator. Uniform demand has a constant rate;
/// GaussianMixture demand scales a mixture density so its maximum over the
/// day equals `rate_per_hour` (the peak rate). When `per_origin` is nonempty
/// the model is geographically imbalanced: each origin has its own mixture
/// and destinations are drawn uniformly among the other vertiports.
struct DemandModel {
    enum class Kind { Uniform, GaussianMixture };

    Kind kind = Kind::Uniform;
    double rate_per_hour = 0.0;  // base rate (Uniform) or peak rate (GaussianMixture)
    std::vector<MixtureComponent> mixture = default_mixture();
    double noise_fraction = 0.25;
    int n_vertiports = 0;
    std::vector<double> od_weights;                         // per directed pair; empty = uniform
    std::vector<std::vector<MixtureComponent>> per_origin;  // nonempty = imbalanced

    /// Morning peak, broad midday shoulder, evening peak.
    static std::vector<MixtureComponent> default_mixture() {
        return {{8.0, 2.0, 1.0}, {12.0, 8.0, 1.0}, {16.0, 2.0, 1.0}};
    }

    void validate() const;  // throws std::invalid_argument
};

/// Mixture density at hour-of-day t (weights are not normalized).
double mixture_density(const std::vector<MixtureComponent>& mixture, double t_hours);

/// Maximum of the model's (summed) mixture density over [0, 24), located by a
/// dense grid scan with step 0.01 h.
double peak_density(const DemandModel& model);

/// Scale factor such that max over t of scaled rate equals rate_per_hour.
double peak_normalizer(const DemandModel& model);

/// Hour-of-day at which the mixture density peaks (grid scan, step 0.01 h).
double peak_hour(const DemandModel& model);

/// Total request rate (requests/hour, pre-noise) at hour-of-day t in [0, 24).
double rate_at(const DemandModel& model, double t_hours);

/// Mean of rate_at over a full day (requests/hour).
double mean_rate(const DemandModel& model);

/// Expected requests/hour on a directed OD pair, from the day-mean total rate
/// and the pair's share of od_weights (or the origin-mixture share when the
/// model is imbalanced).
double route_mean_rate(const DemandModel& model, int origin, int dest);

/// Nonhomogeneous Poisson sample over [0, horizon) minutes via thinning
/// against the constant envelope max_t rate * (1 + noise_fraction).
/// Mean-one multiplicative noise u ~ Uniform(1-nf, 1+nf) modulates the
/// instantaneous rate, redrawn every 15 minutes from `noise_stream`.
/// Output is sorted by t_submit with dense ids starting at 0.
std::vector<Request> generate_requests(const DemandModel& model, double horizon_minutes,
                                       RandomStream& arrival_stream, RandomStream& noise_stream);

/// Convenience overload deriving both streams from one seed.
std::vector<Request> generate_requests(const DemandModel& model, double horizon_minutes,
                                       uint64_t seed);

/// Geographically imbalanced variant of `model`: one mixture per origin
/// vertiport. Throws when the mixture count differs from n_vertiports.
DemandModel imbalance(const DemandModel& model,
                      std::vector<std::vector<MixtureComponent>> per_origin_mixtures);

}  // namespace uamsim
