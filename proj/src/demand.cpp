#include "uamsim/demand.hpp"

#include <cmath>
#include <stdexcept>

#include "uamsim/network.hpp"

namespace uamsim {

namespace {

constexpr double kScanStepHours = 0.01;
constexpr double kNoiseIntervalMinutes = 15.0;

double total_density(const DemandModel& model, double t_hours) {
    if (!model.per_origin.empty()) {
        double sum = 0.0;
        for (const auto& mix : model.per_origin) sum += mixture_density(mix, t_hours);
        return sum;
    }
    return mixture_density(model.mixture, t_hours);
}

}  // namespace

void DemandModel::validate() const {
    if (rate_per_hour < 0.0) throw std::invalid_argument("demand rate must be >= 0");
    if (noise_fraction < 0.0 || noise_fraction >= 1.0)
        throw std::invalid_argument("noise_fraction must lie in [0, 1)");
    const auto check_mixture = [](const std::vector<MixtureComponent>& mix) {
        for (const MixtureComponent& c : mix) {
            if (c.std_hour <= 0.0) throw std::invalid_argument("mixture std must be > 0");
            if (c.weight < 0.0) throw std::invalid_argument("mixture weight must be >= 0");
        }
    };
    check_mixture(mixture);
    for (const auto& mix : per_origin) check_mixture(mix);
    if (!per_origin.empty() && static_cast<int>(per_origin.size()) != n_vertiports)
        throw std::invalid_argument("per-origin mixture count must equal vertiport count");
    if (!od_weights.empty()) {
        if (static_cast<int>(od_weights.size()) != od_pair_count(n_vertiports))
            throw std::invalid_argument("od_weights size must equal directed pair count");
        double sum = 0.0;
        for (double w : od_weights) {
            if (w < 0.0) throw std::invalid_argument("od_weights must be >= 0");
            sum += w;
        }
        if (sum <= 0.0) throw std::invalid_argument("od_weights must not all be zero");
    }
}

double mixture_density(const std::vector<MixtureComponent>& mixture, double t_hours) {
    double sum = 0.0;
    for (const MixtureComponent& c : mixture) {
        const double z = (t_hours - c.mean_hour) / c.std_hour;
        sum += c.weight * std::exp(-0.5 * z * z) / (c.std_hour * 2.5066282746310002);
    }
    return sum;
}

double peak_density(const DemandModel& model) {
    double best = 0.0;
    for (double t = 0.0; t < 24.0; t += kScanStepHours) {
        best = std::max(best, total_density(model, t));
    }
    return best;
}

double peak_hour(const DemandModel& model) {
    double best = 0.0, best_t = 0.0;
    for (double t = 0.0; t < 24.0; t += kScanStepHours) {
        const double v = total_density(model, t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }
    return best_t;
}

double peak_normalizer(const DemandModel& model) {
    const double peak = peak_density(model);
    if (peak <= 0.0) return 0.0;
    return model.rate_per_hour / peak;
}

double rate_at(const DemandModel& model, double t_hours) {
    if (model.kind == DemandModel::Kind::Uniform) return model.rate_per_hour;
    return peak_normalizer(model) * total_density(model, t_hours);
}

double mean_rate(const DemandModel& model) {
    if (model.kind == DemandModel::Kind::Uniform) return model.rate_per_hour;
    const double scale = peak_normalizer(model);
    if (scale <= 0.0) return 0.0;
    double sum = 0.0;
    int n = 0;
    for (double t = 0.0; t < 24.0; t += kScanStepHours) {
        sum += total_density(model, t);
        ++n;
    }
    return scale * sum / n;
}

double route_mean_rate(const DemandModel& model, int origin, int dest) {
    const double total = mean_rate(model);
    if (total <= 0.0 || model.n_vertiports < 2) return 0.0;
    if (!model.per_origin.empty()) {
        // Share of a full day's density contributed by this origin.
        double origin_sum = 0.0, all_sum = 0.0;
        for (double t = 0.0; t < 24.0; t += kScanStepHours) {
            origin_sum += mixture_density(model.per_origin[origin], t);
            all_sum += total_density(model, t);
        }
        if (all_sum <= 0.0) return 0.0;
        return total * (origin_sum / all_sum) / (model.n_vertiports - 1);
    }
    if (model.od_weights.empty()) return total / od_pair_count(model.n_vertiports);
    double sum = 0.0;
    for (double w : model.od_weights) sum += w;
    return total * model.od_weights[od_pair_index(model.n_vertiports, origin, dest)] / sum;
}

std::vector<Request> generate_requests(const DemandModel& model, double horizon_minutes,
                                       RandomStream& arrival_stream, RandomStream& noise_stream) {
    if (horizon_minutes <= 0.0) throw std::invalid_argument("horizon must be positive");
    model.validate();

    std::vector<Request> out;
    const double envelope = model.rate_per_hour * (1.0 + model.noise_fraction);
    if (envelope <= 0.0) return out;
    if (model.n_vertiports < 2)
        throw std::invalid_argument("demand generation needs at least two vertiports");

    const int n_intervals =
        static_cast<int>(std::ceil(horizon_minutes / kNoiseIntervalMinutes)) + 1;
    std::vector<double> noise(n_intervals);
    for (double& u : noise)
        u = noise_stream.uniform(1.0 - model.noise_fraction, 1.0 + model.noise_fraction);

    // OD sampling table for the shared-mixture models.
    std::vector<double> od_cdf;
    const int n = model.n_vertiports;
    if (model.per_origin.empty()) {
        od_cdf.resize(od_pair_count(n));
        double sum = 0.0;
        for (int i = 0; i < od_pair_count(n); ++i) {
            sum += model.od_weights.empty() ? 1.0 : model.od_weights[i];
            od_cdf[i] = sum;
        }
        for (double& c : od_cdf) c /= sum;
    }

    const double envelope_per_minute = envelope / 60.0;
    double t = 0.0;
    int next_id = 0;
    while (true) {
        t += arrival_stream.exponential(envelope_per_minute);
        if (t >= horizon_minutes) break;
        const double hour = std::fmod(t / 60.0, 24.0);
        const double u_interval = noise[static_cast<int>(t / kNoiseIntervalMinutes)];
        const double lambda = rate_at(model, hour) * u_interval;
        if (arrival_stream.uniform01() >= lambda / envelope) continue;

        Request req;
        req.id = next_id++;
        req.t_submit = t;
        if (model.per_origin.empty()) {
            const double x = arrival_stream.uniform01();
            int idx = 0;
            while (idx + 1 < static_cast<int>(od_cdf.size()) && x >= od_cdf[idx]) ++idx;
            const auto [o, d] = od_pair_at(n, idx);
            req.origin = o;
            req.dest = d;
        } else {
            // Origin in proportion to its instantaneous density share.
            const double total = total_density(model, hour);
            const double x = arrival_stream.uniform01() * total;
            double acc = 0.0;
            int origin = n - 1;
            for (int o = 0; o < n; ++o) {
                acc += mixture_density(model.per_origin[o], hour);
                if (x < acc) {
                    origin = o;
                    break;
                }
            }
            int dest = arrival_stream.uniform_int(n - 1);
            if (dest >= origin) ++dest;
            req.origin = origin;
            req.dest = dest;
        }
        out.push_back(req);
    }
    return out;
}

std::vector<Request> generate_requests(const DemandModel& model, double horizon_minutes,
                                       uint64_t seed) {
    RandomStream arrivals = RandomStream::derive(seed, /*tag=*/1);
    RandomStream noise = RandomStream::derive(seed, /*tag=*/4);
    return generate_requests(model, horizon_minutes, arrivals, noise);
}

DemandModel imbalance(const DemandModel& model,
                      std::vector<std::vector<MixtureComponent>> per_origin_mixtures) {
    if (static_cast<int>(per_origin_mixtures.size()) != model.n_vertiports)
        throw std::invalid_argument("need exactly one mixture per origin vertiport");
    DemandModel out = model;
    out.kind = DemandModel::Kind::GaussianMixture;
    out.per_origin = std::move(per_origin_mixtures);
    out.od_weights.clear();
    return out;
}

}  // namespace uamsim
