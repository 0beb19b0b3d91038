#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>

#include "uavlink/radio.hpp"
#include "uavlink/simulation.hpp"

namespace uavlink {

enum class ThresholdMode {
  Derive,  // alpha/beta from the indoor/outdoor curves at rssi_threshold_dbm
  Fixed,   // alpha/beta given explicitly
};

/// Everything a simulate run needs. Relative file paths are resolved against
/// the directory holding the config file.
struct RunConfig {
  std::filesystem::path nodes_path;
  std::filesystem::path obstacles_path;  // empty: no obstacles
  std::filesystem::path waypoints_path;
  ThresholdMode threshold_mode = ThresholdMode::Derive;
  PathLossModel indoor_model = default_indoor_model();
  PathLossModel outdoor_model = default_outdoor_model();
  SimulationSettings settings;
};

/// Parses INI-style text (`[section]` headers, `key = value`, ';' comments).
/// Sections: files, projection, thresholds, channel, energy, uav. Unknown
/// sections or keys are rejected. Does not touch the filesystem except to
/// read model files named in [thresholds].
RunConfig parse_run_config(std::istream& in, const std::filesystem::path& base_dir,
                           const std::string& source = "config");

/// Reads and parses `path`, then checks that every referenced file exists.
RunConfig load_run_config(const std::filesystem::path& path);

/// Model file: `intercept_dbm`, `exponent`, `ref_distance_m` as key = value lines.
PathLossModel load_model_file(const std::filesystem::path& path);
PathLossModel parse_model(std::istream& in, const std::string& source = "model");
void write_model(std::ostream& out, const PathLossModel& m);

}  // namespace uavlink
