#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uamsim/design.hpp"
#include "uamsim/experiments.hpp"
#include "uamsim/scenario_io.hpp"

namespace py = pybind11;
using namespace uamsim;

namespace {

py::dict summary_dict(const RunSummary& s) {
    py::dict d;
    d["seed"] = s.seed;
    d["generated"] = s.generated;
    d["completed"] = s.completed;
    d["unfulfilled"] = s.unfulfilled;
    d["throughput_per_hour"] = s.throughput.completed_per_hour;
    d["mean_demand_delay_minutes"] = s.mean_demand_delay;
    d["marginal_cost"] = s.marginal_cost;
    py::dict util;
    util["en_route"] = s.utilization.en_route;
    util["air_holding"] = s.utilization.air_holding;
    util["ground_holding"] = s.utilization.ground_holding;
    util["idling"] = s.utilization.idling;
    util["turnaround"] = s.utilization.turnaround;
    util["rebalancing_or_overscheduled"] = s.utilization.rebalancing_or_overscheduled;
    d["utilization"] = util;
    d["air_holding_minutes"] = s.air_holding_minutes;
    d["rebalance_flights"] = s.rebalance_flights;
    d["scheduled_empty_flights"] = s.scheduled_empty_flights;
    return d;
}

}  // namespace

PYBIND11_MODULE(uamsim, m) {
    m.doc() = "Vertiport-network fleet simulator";

    py::class_<MixtureComponent>(m, "MixtureComponent")
        .def(py::init<>())
        .def(py::init([](double mean, double std, double weight) {
                 return MixtureComponent{mean, std, weight};
             }),
             py::arg("mean_hour"), py::arg("std_hour"), py::arg("weight") = 1.0)
        .def_readwrite("mean_hour", &MixtureComponent::mean_hour)
        .def_readwrite("std_hour", &MixtureComponent::std_hour)
        .def_readwrite("weight", &MixtureComponent::weight);

    py::class_<Request>(m, "Request")
        .def_readonly("id", &Request::id)
        .def_readonly("t_submit", &Request::t_submit)
        .def_readonly("origin", &Request::origin)
        .def_readonly("dest", &Request::dest)
        .def("__repr__", [](const Request& r) {
            return "Request(id=" + std::to_string(r.id) + ", t=" + std::to_string(r.t_submit) +
                   ", " + std::to_string(r.origin) + "->" + std::to_string(r.dest) + ")";
        });

    py::enum_<DemandModel::Kind>(m, "DemandKind")
        .value("Uniform", DemandModel::Kind::Uniform)
        .value("GaussianMixture", DemandModel::Kind::GaussianMixture);

    py::class_<DemandModel>(m, "DemandModel")
        .def(py::init<>())
        .def_readwrite("kind", &DemandModel::kind)
        .def_readwrite("rate_per_hour", &DemandModel::rate_per_hour)
        .def_readwrite("mixture", &DemandModel::mixture)
        .def_readwrite("noise_fraction", &DemandModel::noise_fraction)
        .def_readwrite("n_vertiports", &DemandModel::n_vertiports)
        .def_readwrite("od_weights", &DemandModel::od_weights);

    py::class_<Scenario>(m, "Scenario")
        .def_readwrite("fleet_size", &Scenario::fleet_size)
        .def_readwrite("demand", &Scenario::demand)
        .def_readwrite("horizon", &Scenario::horizon)
        .def_readwrite("turnaround_mean", &Scenario::turnaround_mean)
        .def_readwrite("turnaround_std", &Scenario::turnaround_std)
        .def_readwrite("takeoff_duration", &Scenario::takeoff_duration)
        .def_readwrite("landing_duration", &Scenario::landing_duration)
        .def_property(
            "policy_kind",
            [](const Scenario& s) { return std::string(to_string(s.policy.kind)); },
            [](Scenario& s, const std::string& name) {
                s.policy.kind = policy_kind_from_string(name);
            });

    m.def("great_circle_distance", &great_circle_distance, py::arg("lat_a"), py::arg("lon_a"),
          py::arg("lat_b"), py::arg("lon_b"), "Haversine distance in km.");
    m.def("normalized_capacity", &normalized_capacity, py::arg("total_capacity"),
          py::arg("fleet_size"));
    m.def("size_vertiports", &size_vertiports, py::arg("c_n"), py::arg("fleet_size"),
          py::arg("n_vertiports"));
    m.def("estimate_dmax", &estimate_dmax, py::arg("fleet_size"), py::arg("t_operation_minutes"),
          "Upper-bound servable demand rate (requests/hour).");
    m.def("measure_unimpeded_operation_time", &measure_unimpeded_operation_time,
          py::arg("scenario"));
    m.def("rate_at", &rate_at, py::arg("model"), py::arg("t_hours"));
    m.def("peak_normalizer", &peak_normalizer, py::arg("model"));
    m.def(
        "generate_requests",
        [](const DemandModel& model, double horizon, uint64_t seed) {
            return generate_requests(model, horizon, seed);
        },
        py::arg("model"), py::arg("horizon_minutes"), py::arg("seed"));

    m.def("bay3_scenario", &bay3_scenario, py::arg("normalized_capacity") = 1.0,
          py::arg("fleet_size") = 36, "Three-vertiport Bay Area study scenario.");
    m.def(
        "parse_scenario", [](const std::string& text) { return parse_scenario_json(text).scenario; },
        py::arg("json_text"), "Parse a scenario JSON document.");
    m.def(
        "run",
        [](const Scenario& scenario, uint64_t seed) {
            SimResult result = Simulation(scenario, seed).run();
            return summary_dict(summarize(result, CostWeights{}, seed));
        },
        py::arg("scenario"), py::arg("seed"), "Run one replication, return summary metrics.");
    m.def(
        "run_replications",
        [](const Scenario& scenario, uint64_t base_seed, int replications) {
            py::list out;
            for (const RunSummary& s :
                 run_replications(scenario, CostWeights{}, base_seed, replications)) {
                out.append(summary_dict(s));
            }
            return out;
        },
        py::arg("scenario"), py::arg("base_seed"), py::arg("replications") = 5);
}
