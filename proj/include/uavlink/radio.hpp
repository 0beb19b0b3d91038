#pragma once

#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace uavlink {

enum class Environment { Indoor, Outdoor };

std::string_view to_string(Environment env);
Environment parse_environment(std::string_view text);  // "indoor" | "outdoor"

struct RssiSample {
  double distance_m = 1.0;
  double rssi_dbm = 0.0;
  Environment environment = Environment::Outdoor;
};

/// Log-distance path loss:
///   rssi(d) = intercept - 10 * exponent * log10(d / ref_distance)
struct PathLossModel {
  double intercept_dbm = 0.0;
  double exponent = 2.0;
  double ref_distance_m = 1.0;

  bool operator==(const PathLossModel&) const = default;
};

/// RSSI_0 and the two distance band edges derived from it.
/// All RSSI values are signed dBm; a link is viable when rssi >= rssi_threshold_dbm.
struct LinkThresholds {
  double rssi_threshold_dbm = -30.0;
  double alpha_m = 162.0;
  double beta_m = 725.0;

  bool operator==(const LinkThresholds&) const = default;
};

inline constexpr double kDefaultRssiThresholdDbm = -30.0;
inline constexpr double kDefaultAlphaM = 162.0;
inline constexpr double kDefaultBetaM = 725.0;
inline constexpr double kDefaultIndoorExponent = 2.8;
inline constexpr double kDefaultOutdoorExponent = 2.0;

void validate(const PathLossModel& m);
void validate(const LinkThresholds& th);

double predict_rssi(const PathLossModel& m, double distance_m);
double invert_distance(const PathLossModel& m, double rssi_dbm);

/// Ordinary least squares of rssi against log10(distance), ref_distance = 1 m.
/// Needs at least two distinct distances and a decreasing trend.
PathLossModel fit_model(std::span<const RssiSample> samples);

double residual_sum_of_squares(const PathLossModel& m, std::span<const RssiSample> samples);
double residual_rms(const PathLossModel& m, std::span<const RssiSample> samples);

/// Distance at which the model's curve crosses the RSSI threshold.
double derive_threshold_distance(const PathLossModel& m, double rssi_threshold_dbm);

// Default curves. Intercepts are back-solved so that the default threshold
// crossings sit at exactly 162 m (indoor) and 725 m (outdoor).
PathLossModel default_indoor_model();
PathLossModel default_outdoor_model();

LinkThresholds derive_thresholds(const PathLossModel& indoor, const PathLossModel& outdoor,
                                 double rssi_threshold_dbm);
LinkThresholds default_thresholds();

/// measurements.csv: `distance_m,rssi_dbm,environment`.
std::vector<RssiSample> load_measurements(std::istream& in, std::string source = "measurements.csv");
void write_measurements(std::ostream& out, std::span<const RssiSample> samples);

std::vector<RssiSample> filter_environment(std::span<const RssiSample> samples, Environment env);

}  // namespace uavlink
