#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <filesystem>
#include <optional>
#include <sstream>

#include "uavlink/config.hpp"
#include "uavlink/decision.hpp"
#include "uavlink/errors.hpp"
#include "uavlink/geo.hpp"
#include "uavlink/los.hpp"
#include "uavlink/protocol.hpp"
#include "uavlink/radio.hpp"
#include "uavlink/simulation.hpp"
#include "uavlink/world.hpp"

namespace py = pybind11;
using namespace uavlink;

namespace {

template <typename F>
auto from_text(const std::string& text, F&& loader) {
  std::istringstream in(text);
  return loader(in);
}

template <typename F>
std::string to_text(F&& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "UAV to ground-node link decisions, line of sight and protocol simulation";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputDomainError>(m, "InputDomainError", base.ptr());
  py::register_exception<GeometryError>(m, "GeometryError", base.ptr());
  py::register_exception<DegenerateFitError>(m, "DegenerateFitError", base.ptr());
  py::register_exception<QueryError>(m, "QueryError", base.ptr());
  py::register_exception<ContractViolation>(m, "ContractViolation", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<LoadError>(m, "LoadError", base.ptr());

  // geo
  py::class_<GeoCoord>(m, "GeoCoord")
      .def(py::init<double, double, double>(), py::arg("lat"), py::arg("lon"), py::arg("alt") = 0.0)
      .def_readwrite("lat", &GeoCoord::lat)
      .def_readwrite("lon", &GeoCoord::lon)
      .def_readwrite("alt", &GeoCoord::alt)
      .def(py::self == py::self)
      .def("__repr__", [](const GeoCoord& g) {
        return "GeoCoord(lat=" + std::to_string(g.lat) + ", lon=" + std::to_string(g.lon) +
               ", alt=" + std::to_string(g.alt) + ")";
      });

  py::class_<LocalPoint>(m, "LocalPoint")
      .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z") = 0.0)
      .def_readwrite("x", &LocalPoint::x)
      .def_readwrite("y", &LocalPoint::y)
      .def_readwrite("z", &LocalPoint::z)
      .def(py::self == py::self)
      .def("__repr__", [](const LocalPoint& p) {
        return "LocalPoint(x=" + std::to_string(p.x) + ", y=" + std::to_string(p.y) +
               ", z=" + std::to_string(p.z) + ")";
      });

  py::enum_<ProjectionMode>(m, "ProjectionMode")
      .value("Scaled", ProjectionMode::Scaled)
      .value("Equirectangular", ProjectionMode::Equirectangular);

  py::class_<ProjectionConfig>(m, "ProjectionConfig")
      .def(py::init<>())
      .def(py::init([](double ref_lat, double ref_lon, double scale, ProjectionMode mode) {
             return ProjectionConfig{ref_lat, ref_lon, scale, mode};
           }),
           py::arg("ref_lat") = 22.0, py::arg("ref_lon") = 39.0, py::arg("scale") = kDefaultScale,
           py::arg("mode") = ProjectionMode::Equirectangular)
      .def_readwrite("ref_lat", &ProjectionConfig::ref_lat)
      .def_readwrite("ref_lon", &ProjectionConfig::ref_lon)
      .def_readwrite("scale", &ProjectionConfig::scale)
      .def_readwrite("mode", &ProjectionConfig::mode);

  m.def("to_local", &to_local, py::arg("coord"), py::arg("cfg"));
  m.def("to_geo", &to_geo, py::arg("point"), py::arg("cfg"));
  m.def("distance", &distance, py::arg("a"), py::arg("b"));
  m.def(
      "trilaterate",
      [](const std::vector<std::pair<LocalPoint, double>>& anchors) {
        std::vector<RangeAnchor> a;
        for (const auto& [p, r] : anchors) {
          a.push_back({p, r});
        }
        return trilaterate(a);
      },
      py::arg("anchors"), "Position from a list of (LocalPoint, range_m) pairs.");

  // radio
  py::enum_<Environment>(m, "Environment")
      .value("Indoor", Environment::Indoor)
      .value("Outdoor", Environment::Outdoor);

  py::class_<RssiSample>(m, "RssiSample")
      .def(py::init([](double d, double rssi, Environment env) { return RssiSample{d, rssi, env}; }),
           py::arg("distance_m"), py::arg("rssi_dbm"), py::arg("environment") = Environment::Outdoor)
      .def_readwrite("distance_m", &RssiSample::distance_m)
      .def_readwrite("rssi_dbm", &RssiSample::rssi_dbm)
      .def_readwrite("environment", &RssiSample::environment);

  py::class_<PathLossModel>(m, "PathLossModel")
      .def(py::init([](double intercept, double exponent, double ref) {
             return PathLossModel{intercept, exponent, ref};
           }),
           py::arg("intercept_dbm"), py::arg("exponent"), py::arg("ref_distance_m") = 1.0)
      .def_readwrite("intercept_dbm", &PathLossModel::intercept_dbm)
      .def_readwrite("exponent", &PathLossModel::exponent)
      .def_readwrite("ref_distance_m", &PathLossModel::ref_distance_m)
      .def(py::self == py::self);

  py::class_<LinkThresholds>(m, "LinkThresholds")
      .def(py::init([](double rssi0, double alpha, double beta) {
             return LinkThresholds{rssi0, alpha, beta};
           }),
           py::arg("rssi_threshold_dbm") = kDefaultRssiThresholdDbm,
           py::arg("alpha_m") = kDefaultAlphaM, py::arg("beta_m") = kDefaultBetaM)
      .def_readwrite("rssi_threshold_dbm", &LinkThresholds::rssi_threshold_dbm)
      .def_readwrite("alpha_m", &LinkThresholds::alpha_m)
      .def_readwrite("beta_m", &LinkThresholds::beta_m);

  m.def("predict_rssi", &predict_rssi, py::arg("model"), py::arg("distance_m"));
  m.def("invert_distance", &invert_distance, py::arg("model"), py::arg("rssi_dbm"));
  m.def(
      "fit_model", [](const std::vector<RssiSample>& s) { return fit_model(s); }, py::arg("samples"));
  m.def("derive_threshold_distance", &derive_threshold_distance, py::arg("model"),
        py::arg("rssi_threshold_dbm"));
  m.def("default_indoor_model", &default_indoor_model);
  m.def("default_outdoor_model", &default_outdoor_model);
  m.def("default_thresholds", &default_thresholds);
  m.def("derive_thresholds", &derive_thresholds, py::arg("indoor"), py::arg("outdoor"),
        py::arg("rssi_threshold_dbm"));
  m.def(
      "load_measurements",
      [](const std::string& text) {
        return from_text(text, [](std::istream& in) { return load_measurements(in); });
      },
      py::arg("text"));

  // world
  py::class_<NodeRecord>(m, "NodeRecord")
      .def_readonly("id", &NodeRecord::id)
      .def_readonly("mac", &NodeRecord::mac)
      .def_readonly("geo", &NodeRecord::geo)
      .def_readonly("position", &NodeRecord::position);

  py::class_<BoxDims>(m, "BoxDims")
      .def_readonly("dx", &BoxDims::dx)
      .def_readonly("dy", &BoxDims::dy)
      .def_readonly("dz", &BoxDims::dz);

  py::class_<Obstacle>(m, "Obstacle")
      .def(py::init([](int id, const LocalPoint& corner, double dx, double dy, double dz) {
             Obstacle o;
             o.id = id;
             o.corner = corner;
             o.dims = {dx, dy, dz};
             return o;
           }),
           py::arg("id"), py::arg("corner"), py::arg("dx"), py::arg("dy"), py::arg("dz"))
      .def_readonly("id", &Obstacle::id)
      .def_readonly("corner", &Obstacle::corner)
      .def_readonly("dims", &Obstacle::dims)
      .def("contains", &Obstacle::contains);

  py::class_<Waypoint>(m, "Waypoint")
      .def_readonly("t_s", &Waypoint::t_s)
      .def_readonly("position", &Waypoint::position);

  m.def(
      "load_nodes",
      [](const std::string& text, const ProjectionConfig& cfg) {
        return from_text(text, [&](std::istream& in) { return load_nodes(in, cfg); });
      },
      py::arg("text"), py::arg("cfg") = ProjectionConfig{});
  m.def(
      "load_obstacles",
      [](const std::string& text, const ProjectionConfig& cfg) {
        return from_text(text, [&](std::istream& in) { return load_obstacles(in, cfg); });
      },
      py::arg("text"), py::arg("cfg") = ProjectionConfig{});
  m.def(
      "load_waypoints",
      [](const std::string& text) {
        return from_text(text, [](std::istream& in) { return load_waypoints(in); });
      },
      py::arg("text"));
  m.def(
      "nearest_node",
      [](const LocalPoint& uav, const NodeDb& db) {
        const auto n = nearest_node(uav, db);
        return py::make_tuple(n.node, n.distance_m);
      },
      py::arg("uav"), py::arg("nodes"));

  // los
  m.def(
      "segment_intersects_box",
      [](const LocalPoint& a, const LocalPoint& b, const Obstacle& o) {
        return segment_intersects_box({a, b}, o);
      },
      py::arg("a"), py::arg("b"), py::arg("obstacle"));
  m.def(
      "first_blocking_obstacle",
      [](const LocalPoint& a, const LocalPoint& b, const ObstacleDb& db) -> py::object {
        const auto hit = first_blocking_obstacle({a, b}, db);
        if (!hit) {
          return py::none();
        }
        return py::make_tuple(hit->obstacle, hit->t_entry);
      },
      py::arg("a"), py::arg("b"), py::arg("obstacles"),
      "(Obstacle, t_entry) of the first box on the segment, or None.");
  m.def(
      "los_clear",
      [](const LocalPoint& a, const LocalPoint& b, const ObstacleDb& db) {
        return los_clear({a, b}, db);
      },
      py::arg("a"), py::arg("b"), py::arg("obstacles"));

  // decision
  py::enum_<DecisionKind>(m, "DecisionKind")
      .value("TransmitNear", DecisionKind::TransmitNear)
      .value("TransmitLosClear", DecisionKind::TransmitLosClear)
      .value("BlockedByObstacle", DecisionKind::BlockedByObstacle)
      .value("OutOfRange", DecisionKind::OutOfRange);
  m.def("is_transmit", &is_transmit, py::arg("kind"));

  py::class_<Decision>(m, "Decision")
      .def_readonly("tick_index", &Decision::tick_index)
      .def_readonly("time_s", &Decision::time_s)
      .def_readonly("uav", &Decision::uav)
      .def_readonly("node_id", &Decision::node_id)
      .def_readonly("d_min_m", &Decision::d_min_m)
      .def_readonly("kind", &Decision::kind)
      .def_readonly("blocking_obstacle_id", &Decision::blocking_obstacle_id);

  m.def("decide", &decide, py::arg("uav"), py::arg("nodes"), py::arg("obstacles"),
        py::arg("thresholds") = default_thresholds());

  // protocol
  py::enum_<ChannelMode>(m, "ChannelMode")
      .value("Deterministic", ChannelMode::Deterministic)
      .value("Stochastic", ChannelMode::Stochastic);

  py::class_<ChannelConfig>(m, "ChannelConfig")
      .def(py::init<>())
      .def_readwrite("mode", &ChannelConfig::mode)
      .def_readwrite("noise_sigma_db", &ChannelConfig::noise_sigma_db)
      .def_readwrite("timeout_ms", &ChannelConfig::timeout_ms)
      .def_readwrite("base_latency_ms", &ChannelConfig::base_latency_ms)
      .def_readwrite("seed", &ChannelConfig::seed);

  py::class_<EnergyModel>(m, "EnergyModel")
      .def(py::init([](double tx, double rx, double idle) { return EnergyModel{tx, rx, idle}; }),
           py::arg("e_tx_j") = 0.5, py::arg("e_rx_j") = 0.25, py::arg("e_idle_j") = 0.01)
      .def_readwrite("e_tx_j", &EnergyModel::e_tx_j)
      .def_readwrite("e_rx_j", &EnergyModel::e_rx_j)
      .def_readwrite("e_idle_j", &EnergyModel::e_idle_j);

  py::class_<EnergyLedger>(m, "EnergyLedger")
      .def_readonly("optimized_j", &EnergyLedger::optimized_j)
      .def_readonly("baseline_j", &EnergyLedger::baseline_j)
      .def_readonly("savings_fraction", &EnergyLedger::savings_fraction);

  py::class_<ProtocolEvent>(m, "ProtocolEvent")
      .def_readonly("tick_index", &ProtocolEvent::tick_index)
      .def_readonly("node_id", &ProtocolEvent::node_id)
      .def_readonly("delivered", &ProtocolEvent::delivered)
      .def_readonly("rssi_dbm", &ProtocolEvent::rssi_dbm)
      .def_readonly("elapsed_ms", &ProtocolEvent::elapsed_ms);

  m.def(
      "account", [](const std::vector<Decision>& d, const EnergyModel& em) { return account(d, em); },
      py::arg("decisions"), py::arg("energy") = EnergyModel{});

  // simulation
  py::class_<SimulationSettings>(m, "SimulationSettings")
      .def(py::init<>())
      .def_readwrite("projection", &SimulationSettings::projection)
      .def_readwrite("thresholds", &SimulationSettings::thresholds)
      .def_readwrite("channel_model", &SimulationSettings::channel_model)
      .def_readwrite("channel", &SimulationSettings::channel)
      .def_readwrite("energy", &SimulationSettings::energy)
      .def_readwrite("uav_mac", &SimulationSettings::uav_mac);

  py::class_<SimulationRun>(m, "SimulationRun")
      .def_readonly("settings", &SimulationRun::settings)
      .def_readonly("decisions", &SimulationRun::decisions)
      .def_readonly("events", &SimulationRun::events)
      .def_readonly("ledger", &SimulationRun::ledger)
      .def("count", &SimulationRun::count)
      .def("decisions_csv", [](const SimulationRun& r) {
        return to_text([&](std::ostream& out) { write_decisions(out, r.decisions); });
      })
      .def("events_csv", [](const SimulationRun& r) {
        return to_text([&](std::ostream& out) { write_events(out, r.events); });
      })
      .def("summary", [](const SimulationRun& r) {
        return to_text([&](std::ostream& out) { write_summary(out, r); });
      });

  m.def("simulate", &simulate, py::arg("waypoints"), py::arg("nodes"), py::arg("obstacles"),
        py::arg("settings") = SimulationSettings{});

  py::class_<RunConfig>(m, "RunConfig")
      .def_readonly("nodes_path", &RunConfig::nodes_path)
      .def_property_readonly("obstacles_path",
                             [](const RunConfig& c) -> std::optional<std::filesystem::path> {
                               if (c.obstacles_path.empty()) return std::nullopt;
                               return c.obstacles_path;
                             })
      .def_readonly("waypoints_path", &RunConfig::waypoints_path)
      .def_readonly("indoor_model", &RunConfig::indoor_model)
      .def_readonly("outdoor_model", &RunConfig::outdoor_model)
      .def_readonly("settings", &RunConfig::settings);
  m.def("load_run_config", &load_run_config, py::arg("path"));
}
