#include "uavlink/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <map>
#include <set>

#include "uavlink/csv.hpp"
#include "uavlink/errors.hpp"

namespace uavlink {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"files", {"nodes", "obstacles", "waypoints"}},
      {"projection", {"mode", "ref_lat", "ref_lon", "scale"}},
      {"thresholds",
       {"mode", "rssi_threshold_dbm", "alpha_m", "beta_m", "indoor_model", "outdoor_model"}},
      {"channel", {"mode", "noise_sigma_db", "timeout_ms", "base_latency_ms", "seed"}},
      {"energy", {"e_tx_j", "e_rx_j", "e_idle_j"}},
      {"uav", {"mac"}},
  };
  return keys;
}

pt::ptree read_ini(std::istream& in, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  return tree;
}

template <typename T>
T get_or(const pt::ptree& tree, const std::string& key, T fallback, const std::string& source) {
  const auto value = tree.get_optional<std::string>(key);
  if (!value) {
    return fallback;
  }
  try {
    return tree.get<T>(key);
  } catch (const pt::ptree_bad_data&) {
    throw ConfigError(source + ": bad value for '" + key + "': '" + *value + "'");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

PathLossModel parse_model(std::istream& in, const std::string& source) {
  const pt::ptree tree = read_ini(in, source);
  for (const auto& [key, _] : tree) {
    if (key != "intercept_dbm" && key != "exponent" && key != "ref_distance_m") {
      throw ConfigError(source + ": unknown model key '" + key + "'");
    }
  }
  if (!tree.get_optional<std::string>("intercept_dbm") || !tree.get_optional<std::string>("exponent")) {
    throw ConfigError(source + ": model needs intercept_dbm and exponent");
  }
  PathLossModel m;
  m.intercept_dbm = get_or(tree, "intercept_dbm", 0.0, source);
  m.exponent = get_or(tree, "exponent", 0.0, source);
  m.ref_distance_m = get_or(tree, "ref_distance_m", 1.0, source);
  try {
    validate(m);
  } catch (const InputDomainError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return m;
}

PathLossModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open model file " + path.string());
  }
  return parse_model(in, path.string());
}

void write_model(std::ostream& out, const PathLossModel& m) {
  out << "intercept_dbm = " << csv::format_double(m.intercept_dbm) << '\n'
      << "exponent = " << csv::format_double(m.exponent) << '\n'
      << "ref_distance_m = " << csv::format_double(m.ref_distance_m) << '\n';
}

RunConfig parse_run_config(std::istream& in, const std::filesystem::path& base_dir,
                           const std::string& source) {
  const pt::ptree tree = read_ini(in, source);
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end() || !body.data().empty()) {
      throw ConfigError(source + ": unknown section or top-level key '" + section + "'");
    }
    for (const auto& [key, _] : body) {
      if (!it->second.contains(key)) {
        throw ConfigError(source + ": unknown key '" + key + "' in [" + section + "]");
      }
    }
  }

  RunConfig cfg;
  const auto nodes = tree.get_optional<std::string>("files.nodes");
  const auto waypoints = tree.get_optional<std::string>("files.waypoints");
  if (!nodes || !waypoints) {
    throw ConfigError(source + ": [files] needs nodes and waypoints");
  }
  cfg.nodes_path = resolve(base_dir, *nodes);
  cfg.waypoints_path = resolve(base_dir, *waypoints);
  if (const auto obstacles = tree.get_optional<std::string>("files.obstacles")) {
    cfg.obstacles_path = resolve(base_dir, *obstacles);
  }

  ProjectionConfig& proj = cfg.settings.projection;
  const auto proj_mode = get_or<std::string>(tree, "projection.mode", "equirectangular", source);
  if (proj_mode == "equirectangular") {
    proj.mode = ProjectionMode::Equirectangular;
  } else if (proj_mode == "scaled") {
    proj.mode = ProjectionMode::Scaled;
  } else {
    throw ConfigError(source + ": projection.mode must be equirectangular or scaled");
  }
  proj.ref_lat = get_or(tree, "projection.ref_lat", proj.ref_lat, source);
  proj.ref_lon = get_or(tree, "projection.ref_lon", proj.ref_lon, source);
  proj.scale = get_or(tree, "projection.scale", proj.scale, source);

  const double rssi0 = get_or(tree, "thresholds.rssi_threshold_dbm", kDefaultRssiThresholdDbm, source);
  if (const auto p = tree.get_optional<std::string>("thresholds.indoor_model")) {
    cfg.indoor_model = load_model_file(resolve(base_dir, *p));
  }
  if (const auto p = tree.get_optional<std::string>("thresholds.outdoor_model")) {
    cfg.outdoor_model = load_model_file(resolve(base_dir, *p));
  }
  const auto th_mode = get_or<std::string>(tree, "thresholds.mode", "derive", source);
  LinkThresholds th;
  if (th_mode == "derive") {
    cfg.threshold_mode = ThresholdMode::Derive;
    th = {rssi0, derive_threshold_distance(cfg.indoor_model, rssi0),
          derive_threshold_distance(cfg.outdoor_model, rssi0)};
  } else if (th_mode == "fixed") {
    cfg.threshold_mode = ThresholdMode::Fixed;
    if (!tree.get_optional<std::string>("thresholds.alpha_m") ||
        !tree.get_optional<std::string>("thresholds.beta_m")) {
      throw ConfigError(source + ": fixed thresholds need alpha_m and beta_m");
    }
    th = {rssi0, get_or(tree, "thresholds.alpha_m", 0.0, source),
          get_or(tree, "thresholds.beta_m", 0.0, source)};
  } else {
    throw ConfigError(source + ": thresholds.mode must be derive or fixed");
  }
  try {
    validate(th);
  } catch (const InputDomainError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  cfg.settings.thresholds = th;
  cfg.settings.channel_model = cfg.outdoor_model;

  ChannelConfig& ch = cfg.settings.channel;
  const auto ch_mode = get_or<std::string>(tree, "channel.mode", "deterministic", source);
  if (ch_mode == "deterministic") {
    ch.mode = ChannelMode::Deterministic;
  } else if (ch_mode == "stochastic") {
    ch.mode = ChannelMode::Stochastic;
  } else {
    throw ConfigError(source + ": channel.mode must be deterministic or stochastic");
  }
  ch.noise_sigma_db = get_or(tree, "channel.noise_sigma_db", ch.noise_sigma_db, source);
  ch.timeout_ms = get_or(tree, "channel.timeout_ms", ch.timeout_ms, source);
  ch.base_latency_ms = get_or(tree, "channel.base_latency_ms", ch.base_latency_ms, source);
  ch.seed = get_or(tree, "channel.seed", ch.seed, source);

  EnergyModel& em = cfg.settings.energy;
  em.e_tx_j = get_or(tree, "energy.e_tx_j", em.e_tx_j, source);
  em.e_rx_j = get_or(tree, "energy.e_rx_j", em.e_rx_j, source);
  em.e_idle_j = get_or(tree, "energy.e_idle_j", em.e_idle_j, source);

  cfg.settings.uav_mac = get_or<std::string>(tree, "uav.mac", cfg.settings.uav_mac, source);

  try {
    validate(proj);
    validate(ch);
    validate(em);
  } catch (const InputDomainError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  if (!is_valid_mac(cfg.settings.uav_mac)) {
    throw ConfigError(source + ": uav.mac must be 16 hex digits");
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path.string());
  }
  RunConfig cfg = parse_run_config(in, path.parent_path(), path.string());
  for (const auto* p : {&cfg.nodes_path, &cfg.waypoints_path, &cfg.obstacles_path}) {
    if (!p->empty() && !std::filesystem::is_regular_file(*p)) {
      throw ConfigError(path.string() + ": referenced file does not exist: " + p->string());
    }
  }
  return cfg;
}

}  // namespace uavlink
