#pragma once

#include <string>
#include <vector>

namespace uamsim {

/// Ground facility where aircraft land, park, turn around, and depart.
/// Separations are the minimum spacing between consecutive movements through
/// the single approach fix / single departure fix.
struct Vertiport {
    int id = 0;
    std::string name;
    double lat = 0.0;
    double lon = 0.0;
    int parking_capacity = 0;
    int n_approach_fixes = 1;
    int n_departure_fixes = 1;
    double arrival_separation = 1.0;    // minutes
    double departure_separation = 1.0;  // minutes
    double taxi_in = 0.0;               // minutes
    double taxi_out = 0.0;              // minutes
};

/// Directed flight corridor between two vertiports.
struct Route {
    int origin = 0;
    int dest = 0;
    double distance_km = 0.0;
};

/// Static vertiport network: locations, directed routes, and cruise speed.
/// Immutable after construction; safe to share across concurrent runs.
struct Network {
    std::vector<Vertiport> vertiports;
    std::vector<Route> routes;
    double cruise_speed_kmh = 140.0;

    int n_vertiports() const { return static_cast<int>(vertiports.size()); }
    int n_routes() const { return static_cast<int>(routes.size()); }

    /// Index of route (origin, dest) in `routes`, or -1 when absent.
    int route_index(int origin, int dest) const;

    void validate() const;  // throws std::invalid_argument on violation
};

/// Haversine distance in km (Earth radius 6371 km).
double great_circle_distance(double lat_a, double lon_a, double lat_b, double lon_b);

/// En-route flight time in minutes for an existing route.
/// Throws std::invalid_argument when (origin, dest) is not in the network.
double travel_time(const Network& network, int origin, int dest);

/// c_n = total parking capacity / fleet size. Throws on fleet_size <= 0.
double normalized_capacity(int total_capacity, int fleet_size);

/// Per-vertiport parking capacity for a target normalized capacity.
/// Ceiling division guarantees total capacity >= c_n * fleet_size.
int size_vertiports(double c_n, int fleet_size, int n_vertiports);

/// Complete directed graph over the given vertiports with haversine distances.
Network make_complete_network(std::vector<Vertiport> vertiports, double cruise_speed_kmh);

/// Enumeration helpers for directed origin-destination pairs, ordered
/// lexicographically: (0,1), (0,2), ..., (1,0), (1,2), ...
int od_pair_count(int n_vertiports);
int od_pair_index(int n_vertiports, int origin, int dest);
std::pair<int, int> od_pair_at(int n_vertiports, int index);

}  // namespace uamsim
