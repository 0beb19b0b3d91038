#include "uavlink/radio.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "uavlink/csv.hpp"
#include "uavlink/errors.hpp"

namespace uavlink {

std::string_view to_string(Environment env) {
  return env == Environment::Indoor ? "indoor" : "outdoor";
}

Environment parse_environment(std::string_view text) {
  if (text == "indoor") {
    return Environment::Indoor;
  }
  if (text == "outdoor") {
    return Environment::Outdoor;
  }
  throw InputDomainError("unknown environment '" + std::string(text) +
                         "' (expected indoor or outdoor)");
}

void validate(const PathLossModel& m) {
  if (!std::isfinite(m.intercept_dbm)) {
    throw InputDomainError("path loss intercept is not finite");
  }
  if (!std::isfinite(m.exponent) || m.exponent <= 0.0) {
    throw InputDomainError("path loss exponent must be positive");
  }
  if (!std::isfinite(m.ref_distance_m) || m.ref_distance_m <= 0.0) {
    throw InputDomainError("path loss reference distance must be positive");
  }
}

void validate(const LinkThresholds& th) {
  if (!std::isfinite(th.rssi_threshold_dbm) || !std::isfinite(th.alpha_m) ||
      !std::isfinite(th.beta_m) || th.alpha_m <= 0.0 || th.alpha_m >= th.beta_m) {
    throw InputDomainError("invalid thresholds: require 0 < alpha < beta (alpha=" +
                           std::to_string(th.alpha_m) + ", beta=" + std::to_string(th.beta_m) +
                           ")");
  }
}

double predict_rssi(const PathLossModel& m, double distance_m) {
  validate(m);
  if (!(distance_m > 0.0) || !std::isfinite(distance_m)) {
    throw InputDomainError("distance must be positive: " + std::to_string(distance_m));
  }
  return m.intercept_dbm - 10.0 * m.exponent * std::log10(distance_m / m.ref_distance_m);
}

double invert_distance(const PathLossModel& m, double rssi_dbm) {
  validate(m);
  if (!std::isfinite(rssi_dbm)) {
    throw InputDomainError("rssi is not finite");
  }
  return m.ref_distance_m * std::pow(10.0, (m.intercept_dbm - rssi_dbm) / (10.0 * m.exponent));
}

PathLossModel fit_model(std::span<const RssiSample> samples) {
  if (samples.size() < 2) {
    throw DegenerateFitError("need at least 2 samples to fit, got " +
                             std::to_string(samples.size()));
  }
  for (const auto& s : samples) {
    if (!(s.distance_m > 0.0) || !std::isfinite(s.distance_m) || !std::isfinite(s.rssi_dbm)) {
      throw InputDomainError("sample with non-positive distance or non-finite rssi");
    }
  }
  const bool one_distance = std::all_of(samples.begin(), samples.end(), [&](const RssiSample& s) {
    return s.distance_m == samples.front().distance_m;
  });
  if (one_distance) {
    throw DegenerateFitError("need at least 2 distinct distances to fit");
  }

  const double n = static_cast<double>(samples.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& s : samples) {
    mean_x += std::log10(s.distance_m);
    mean_y += s.rssi_dbm;
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& s : samples) {
    const double dx = std::log10(s.distance_m) - mean_x;
    sxx += dx * dx;
    sxy += dx * (s.rssi_dbm - mean_y);
  }
  const double slope = sxy / sxx;
  const double exponent = -slope / 10.0;
  if (!(exponent > 0.0)) {
    throw DegenerateFitError("fitted RSSI does not decrease with distance");
  }
  return {mean_y - slope * mean_x, exponent, 1.0};
}

double residual_sum_of_squares(const PathLossModel& m, std::span<const RssiSample> samples) {
  double sum = 0.0;
  for (const auto& s : samples) {
    const double r = s.rssi_dbm - predict_rssi(m, s.distance_m);
    sum += r * r;
  }
  return sum;
}

double residual_rms(const PathLossModel& m, std::span<const RssiSample> samples) {
  if (samples.empty()) {
    return 0.0;
  }
  return std::sqrt(residual_sum_of_squares(m, samples) / static_cast<double>(samples.size()));
}

double derive_threshold_distance(const PathLossModel& m, double rssi_threshold_dbm) {
  return invert_distance(m, rssi_threshold_dbm);
}

PathLossModel default_indoor_model() {
  return {kDefaultRssiThresholdDbm + 10.0 * kDefaultIndoorExponent * std::log10(kDefaultAlphaM),
          kDefaultIndoorExponent, 1.0};
}

PathLossModel default_outdoor_model() {
  return {kDefaultRssiThresholdDbm + 10.0 * kDefaultOutdoorExponent * std::log10(kDefaultBetaM),
          kDefaultOutdoorExponent, 1.0};
}

LinkThresholds derive_thresholds(const PathLossModel& indoor, const PathLossModel& outdoor,
                                 double rssi_threshold_dbm) {
  LinkThresholds th{rssi_threshold_dbm, derive_threshold_distance(indoor, rssi_threshold_dbm),
                    derive_threshold_distance(outdoor, rssi_threshold_dbm)};
  validate(th);
  return th;
}

LinkThresholds default_thresholds() {
  return derive_thresholds(default_indoor_model(), default_outdoor_model(),
                           kDefaultRssiThresholdDbm);
}

std::vector<RssiSample> load_measurements(std::istream& in, std::string source) {
  const csv::Table table = csv::read(in, std::move(source));
  if (table.empty()) {
    throw LoadError(table.source, 1, "missing header");
  }
  const auto dcol = table.column("distance_m");
  const auto rcol = table.column("rssi_dbm");
  const auto ecol = table.column("environment");
  if (!dcol || !rcol || !ecol) {
    throw LoadError(table.source, table.header_line,
                    "header must contain distance_m,rssi_dbm,environment");
  }
  std::vector<RssiSample> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    RssiSample s;
    s.distance_m = csv::parse_double(table, row, *dcol);
    s.rssi_dbm = csv::parse_double(table, row, *rcol);
    if (s.distance_m <= 0.0) {
      throw LoadError(table.source, row.line, "distance_m must be positive");
    }
    try {
      s.environment = parse_environment(row.fields[*ecol]);
    } catch (const InputDomainError& e) {
      throw LoadError(table.source, row.line, e.what());
    }
    out.push_back(s);
  }
  return out;
}

void write_measurements(std::ostream& out, std::span<const RssiSample> samples) {
  out << "distance_m,rssi_dbm,environment\n";
  for (const auto& s : samples) {
    out << csv::format_double(s.distance_m) << ',' << csv::format_double(s.rssi_dbm) << ','
        << to_string(s.environment) << '\n';
  }
}

std::vector<RssiSample> filter_environment(std::span<const RssiSample> samples, Environment env) {
  std::vector<RssiSample> out;
  std::copy_if(samples.begin(), samples.end(), std::back_inserter(out),
               [env](const RssiSample& s) { return s.environment == env; });
  return out;
}

}  // namespace uavlink
