#pragma once

#include <span>

namespace uavlink {

/// WGS-84 position as delivered by a GPS fix (degrees, metres).
struct GeoCoord {
  double lat = 0.0;
  double lon = 0.0;
  double alt = 0.0;

  bool operator==(const GeoCoord&) const = default;
};

/// Planar position in the run's local frame. x grows with longitude, y with
/// latitude, z is altitude in metres.
struct LocalPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const LocalPoint&) const = default;

  LocalPoint operator+(const LocalPoint& o) const { return {x + o.x, y + o.y, z + o.z}; }
  LocalPoint operator-(const LocalPoint& o) const { return {x - o.x, y - o.y, z - o.z}; }
  LocalPoint operator*(double s) const { return {x * s, y * s, z * s}; }
};

enum class ProjectionMode {
  // x = (lon - ref_lon) * scale, y = (lat - ref_lat) * scale. Units are not metres.
  Scaled,
  // Metres, using fixed per-degree lengths evaluated at ref_lat.
  Equirectangular,
};

inline constexpr double kDefaultScale = 100000.0;
inline constexpr double kMetersPerDegreeLon = 111320.0;  // at the equator, times cos(lat)
inline constexpr double kMetersPerDegreeLat = 110574.0;

struct ProjectionConfig {
  double ref_lat = 22.0;
  double ref_lon = 39.0;
  double scale = kDefaultScale;  // only used in Scaled mode
  ProjectionMode mode = ProjectionMode::Equirectangular;
};

void validate(const GeoCoord& g);
void validate(const LocalPoint& p);
void validate(const ProjectionConfig& cfg);

LocalPoint to_local(const GeoCoord& g, const ProjectionConfig& cfg);
GeoCoord to_geo(const LocalPoint& p, const ProjectionConfig& cfg);

/// Euclidean 3D distance.
double distance(const LocalPoint& a, const LocalPoint& b);

/// A known anchor position and the measured range to the unknown point.
struct RangeAnchor {
  LocalPoint position;
  double range_m = 0.0;
};

struct TrilaterationFix {
  LocalPoint position;
  // RMS of (horizontal distance to anchor - measured range) at the solution.
  double residual_rms = 0.0;
};

/// Linearized least-squares position from >= 3 anchors that are not collinear
/// in the xy-plane. Ranges are treated as horizontal ranges; only x and y are
/// solved. z is the mean of the anchor altitudes weighted by 1 / (1 + range).
/// Throws GeometryError for fewer than 3 anchors or collinear anchors, and
/// InputDomainError for negative or non-finite ranges.
TrilaterationFix trilaterate_fix(std::span<const RangeAnchor> anchors);

LocalPoint trilaterate(std::span<const RangeAnchor> anchors);

}  // namespace uavlink
