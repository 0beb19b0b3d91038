#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "uavlink/config.hpp"
#include "uavlink/csv.hpp"
#include "uavlink/errors.hpp"
#include "uavlink/los.hpp"
#include "uavlink/radio.hpp"
#include "uavlink/simulation.hpp"
#include "uavlink/world.hpp"

namespace uavlink::cli {
namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
};

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open " + path.string());
  }
  return in;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) {
    throw ConfigError("cannot write " + path.string());
  }
}

NodeDb read_nodes(const fs::path& path, const ProjectionConfig& proj) {
  auto in = open_input(path);
  return load_nodes(in, proj, path.string());
}

ObstacleDb read_obstacles(const fs::path& path, const ProjectionConfig& proj) {
  if (path.empty()) {
    return {};
  }
  auto in = open_input(path);
  return load_obstacles(in, proj, path.string());
}

WaypointTable read_waypoints(const fs::path& path) {
  auto in = open_input(path);
  return load_waypoints(in, path.string());
}

int cmd_simulate(const GlobalOptions& g, std::ostream& out) {
  if (g.config.empty()) {
    throw ConfigError("simulate needs --config PATH");
  }
  RunConfig cfg = load_run_config(g.config);
  if (g.seed) {
    cfg.settings.channel.seed = *g.seed;
  }
  const ProjectionConfig& proj = cfg.settings.projection;
  const NodeDb nodes = read_nodes(cfg.nodes_path, proj);
  const ObstacleDb obstacles = read_obstacles(cfg.obstacles_path, proj);
  const WaypointTable waypoints = read_waypoints(cfg.waypoints_path);

  const SimulationRun run = simulate(waypoints, nodes, obstacles, cfg.settings);

  const fs::path out_dir(g.out_dir);
  fs::create_directories(out_dir);
  std::ostringstream decisions;
  write_decisions(decisions, run.decisions);
  std::ostringstream events;
  write_events(events, run.events);
  std::ostringstream summary;
  write_summary(summary, run);
  write_file(out_dir / "decisions.csv", decisions.str());
  write_file(out_dir / "events.csv", events.str());
  write_file(out_dir / "summary.txt", summary.str());
  out << summary.str();
  return kExitOk;
}

struct CalibrateOptions {
  std::string measurements;
  std::string environment = "all";
  std::optional<double> rssi_threshold;
  std::string model_out;
};

int cmd_calibrate(const GlobalOptions& g, const CalibrateOptions& c, std::ostream& out) {
  double rssi0 = kDefaultRssiThresholdDbm;
  if (!g.config.empty()) {
    rssi0 = load_run_config(g.config).settings.thresholds.rssi_threshold_dbm;
  }
  if (c.rssi_threshold) {
    rssi0 = *c.rssi_threshold;
  }
  auto in = open_input(c.measurements);
  std::vector<RssiSample> samples = load_measurements(in, c.measurements);
  if (c.environment != "all") {
    samples = filter_environment(samples, parse_environment(c.environment));
  }
  const PathLossModel model = fit_model(samples);
  using csv::format_double;
  out << "environment=" << c.environment << '\n'
      << "samples=" << samples.size() << '\n'
      << "intercept_dbm=" << format_double(model.intercept_dbm) << '\n'
      << "exponent=" << format_double(model.exponent) << '\n'
      << "ref_distance_m=" << format_double(model.ref_distance_m) << '\n'
      << "residual_rms_db=" << format_double(residual_rms(model, samples)) << '\n'
      << "rssi_threshold_dbm=" << format_double(rssi0) << '\n'
      << "crossing_m=" << format_double(derive_threshold_distance(model, rssi0)) << '\n';
  if (!c.model_out.empty()) {
    std::ostringstream text;
    write_model(text, model);
    write_file(c.model_out, text.str());
    out << "model_file=" << c.model_out << '\n';
  }
  return kExitOk;
}

struct LosOptions {
  std::string nodes;
  std::string obstacles;
  std::string waypoints;
  std::optional<std::size_t> from_waypoint;
  std::string from;
  int node_id = 0;
};

GeoCoord parse_geo_triplet(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
    } catch (const std::exception&) {
      throw ConfigError("--from expects LAT,LON,ALT, got '" + text + "'");
    }
  }
  if (parts.size() != 3) {
    throw ConfigError("--from expects LAT,LON,ALT, got '" + text + "'");
  }
  return {parts[0], parts[1], parts[2]};
}

int cmd_los(const GlobalOptions& g, const LosOptions& o, std::ostream& out) {
  ProjectionConfig proj;
  fs::path nodes_path = o.nodes;
  fs::path obstacles_path = o.obstacles;
  fs::path waypoints_path = o.waypoints;
  if (!g.config.empty()) {
    const RunConfig cfg = load_run_config(g.config);
    proj = cfg.settings.projection;
    if (nodes_path.empty()) nodes_path = cfg.nodes_path;
    if (obstacles_path.empty()) obstacles_path = cfg.obstacles_path;
    if (waypoints_path.empty()) waypoints_path = cfg.waypoints_path;
  }
  if (nodes_path.empty()) {
    throw ConfigError("los needs --nodes or --config");
  }
  if (o.from.empty() == !o.from_waypoint.has_value()) {
    throw ConfigError("los needs exactly one of --from-waypoint or --from");
  }

  const NodeDb nodes = read_nodes(nodes_path, proj);
  const ObstacleDb obstacles = read_obstacles(obstacles_path, proj);
  GeoCoord uav_geo;
  if (o.from_waypoint) {
    if (waypoints_path.empty()) {
      throw ConfigError("--from-waypoint needs --waypoints or --config");
    }
    const WaypointTable table = read_waypoints(waypoints_path);
    if (*o.from_waypoint >= table.size()) {
      throw ConfigError("waypoint index " + std::to_string(*o.from_waypoint) + " out of range (" +
                        std::to_string(table.size()) + " waypoints)");
    }
    uav_geo = table[*o.from_waypoint].position;
  } else {
    uav_geo = parse_geo_triplet(o.from);
  }
  const NodeRecord* node = find_node(nodes, o.node_id);
  if (node == nullptr) {
    throw QueryError("node id " + std::to_string(o.node_id) + " not in " + nodes_path.string());
  }
  const LocalPoint uav = to_local(uav_geo, proj);
  using csv::format_double;
  out << "node_id=" << node->id << '\n'
      << "distance_m=" << format_double(distance(uav, node->position)) << '\n';
  if (uav == node->position) {
    out << "result=clear\n";
    return kExitOk;
  }
  const auto blockage = first_blocking_obstacle({uav, node->position}, obstacles);
  if (blockage) {
    out << "result=blocked\n"
        << "obstacle_id=" << blockage->obstacle.id << '\n'
        << "t_entry=" << format_double(blockage->t_entry) << '\n';
  } else {
    out << "result=clear\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"UAV to ground-node link planner and protocol simulator", "uavlink"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--config", g.config, "Run configuration file");
  app.add_option("--seed", g.seed, "Override the channel seed");
  app.add_option("--out", g.out_dir, "Output directory for simulate")->capture_default_str();

  auto* simulate_cmd = app.add_subcommand("simulate", "Replay the waypoint table and write decisions, events and summary");

  CalibrateOptions cal;
  auto* calibrate_cmd = app.add_subcommand("calibrate", "Fit a log-distance model to RSSI measurements");
  calibrate_cmd->add_option("--measurements", cal.measurements, "measurements.csv")->required();
  calibrate_cmd->add_option("--environment", cal.environment, "indoor, outdoor or all")
      ->check(CLI::IsMember({"indoor", "outdoor", "all"}))
      ->capture_default_str();
  calibrate_cmd->add_option("--rssi-threshold", cal.rssi_threshold, "RSSI_0 in signed dBm");
  calibrate_cmd->add_option("--model-out", cal.model_out, "Write the fitted model here");

  LosOptions los;
  auto* los_cmd = app.add_subcommand("los", "Line-of-sight check from a UAV position to one node");
  los_cmd->add_option("--nodes", los.nodes, "nodes.csv");
  los_cmd->add_option("--obstacles", los.obstacles, "obstacles.csv");
  los_cmd->add_option("--waypoints", los.waypoints, "waypoints.csv");
  los_cmd->add_option("--from-waypoint", los.from_waypoint, "Zero-based waypoint index");
  los_cmd->add_option("--from", los.from, "UAV position as LAT,LON,ALT");
  los_cmd->add_option("--node-id", los.node_id, "Target node id")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (simulate_cmd->parsed()) {
      return cmd_simulate(g, out);
    }
    if (calibrate_cmd->parsed()) {
      return cmd_calibrate(g, cal, out);
    }
    return cmd_los(g, los, out);
  } catch (const LoadError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const InputDomainError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DegenerateFitError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const QueryError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return kExitInputError;
}

}  // namespace uavlink::cli
