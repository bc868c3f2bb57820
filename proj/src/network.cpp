#include "uamsim/network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace uamsim {

namespace {
constexpr double kEarthRadiusKm = 6371.0;
constexpr double kDegToRad = 0.017453292519943295;
}  // namespace

double great_circle_distance(double lat_a, double lon_a, double lat_b, double lon_b) {
    const double phi1 = lat_a * kDegToRad;
    const double phi2 = lat_b * kDegToRad;
    const double dphi = (lat_b - lat_a) * kDegToRad;
    const double dlam = (lon_b - lon_a) * kDegToRad;
    const double s1 = std::sin(dphi / 2.0);
    const double s2 = std::sin(dlam / 2.0);
    const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

int Network::route_index(int origin, int dest) const {
    for (int i = 0; i < n_routes(); ++i) {
        if (routes[i].origin == origin && routes[i].dest == dest) return i;
    }
    return -1;
}

void Network::validate() const {
    const int n = n_vertiports();
    for (const Vertiport& v : vertiports) {
        if (v.lat < -90.0 || v.lat > 90.0 || v.lon < -180.0 || v.lon > 180.0)
            throw std::invalid_argument("vertiport " + v.name + ": coordinates out of range");
        if (v.parking_capacity < 0)
            throw std::invalid_argument("vertiport " + v.name + ": negative parking capacity");
        if (v.arrival_separation < 0.0 || v.departure_separation < 0.0 || v.taxi_in < 0.0 ||
            v.taxi_out < 0.0)
            throw std::invalid_argument("vertiport " + v.name + ": negative duration");
    }
    for (const Route& r : routes) {
        if (r.origin == r.dest) throw std::invalid_argument("route with identical endpoints");
        if (r.origin < 0 || r.origin >= n || r.dest < 0 || r.dest >= n)
            throw std::invalid_argument("route references unknown vertiport");
        if (r.distance_km <= 0.0) throw std::invalid_argument("route distance must be positive");
    }
    if (cruise_speed_kmh <= 0.0) throw std::invalid_argument("cruise speed must be positive");
}

double travel_time(const Network& network, int origin, int dest) {
    const int idx = network.route_index(origin, dest);
    if (idx < 0) {
        throw std::invalid_argument("no route from vertiport " + std::to_string(origin) +
                                    " to vertiport " + std::to_string(dest));
    }
    return network.routes[idx].distance_km / network.cruise_speed_kmh * 60.0;
}

double normalized_capacity(int total_capacity, int fleet_size) {
    if (fleet_size <= 0) throw std::invalid_argument("fleet size must be positive");
    return static_cast<double>(total_capacity) / static_cast<double>(fleet_size);
}

int size_vertiports(double c_n, int fleet_size, int n_vertiports) {
    if (c_n <= 0.0) throw std::invalid_argument("normalized capacity must be positive");
    if (fleet_size <= 0) throw std::invalid_argument("fleet size must be positive");
    if (n_vertiports <= 0) throw std::invalid_argument("vertiport count must be positive");
    const double per_vertiport = c_n * static_cast<double>(fleet_size) / n_vertiports;
    return static_cast<int>(std::ceil(per_vertiport - 1e-9));
}

Network make_complete_network(std::vector<Vertiport> vertiports, double cruise_speed_kmh) {
    Network net;
    net.vertiports = std::move(vertiports);
    net.cruise_speed_kmh = cruise_speed_kmh;
    const int n = net.n_vertiports();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const Vertiport& a = net.vertiports[i];
            const Vertiport& b = net.vertiports[j];
            net.routes.push_back({i, j, great_circle_distance(a.lat, a.lon, b.lat, b.lon)});
        }
    }
    net.validate();
    return net;
}

int od_pair_count(int n_vertiports) { return n_vertiports * (n_vertiports - 1); }

int od_pair_index(int n_vertiports, int origin, int dest) {
    return origin * (n_vertiports - 1) + (dest > origin ? dest - 1 : dest);
}

std::pair<int, int> od_pair_at(int n_vertiports, int index) {
    const int origin = index / (n_vertiports - 1);
    int dest = index % (n_vertiports - 1);
    if (dest >= origin) ++dest;
    return {origin, dest};
}

}  // namespace uamsim
