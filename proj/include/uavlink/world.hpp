#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "uavlink/geo.hpp"

namespace uavlink {

/// A fixed ground node: id, 64-bit radio address and position.
struct NodeRecord {
  int id = 0;
  std::string mac;  // exactly 16 hex digits
  GeoCoord geo;
  LocalPoint position;

  bool operator==(const NodeRecord&) const = default;
};

struct BoxDims {
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;

  bool operator==(const BoxDims&) const = default;
};

/// Axis-aligned box standing on the ground (corner.z == 0). It occupies the
/// closed set corner + (a*dx, b*dy, c*dz) for a, b, c in [0, 1].
struct Obstacle {
  int id = 0;
  GeoCoord geo_corner;  // south-west corner as loaded
  LocalPoint corner;
  BoxDims dims;

  bool operator==(const Obstacle&) const = default;

  LocalPoint max_corner() const { return {corner.x + dims.dx, corner.y + dims.dy, corner.z + dims.dz}; }
  bool contains(const LocalPoint& p) const;
};

/// A prior location sample: the position the UAV is expected to have t_s
/// seconds after the start of the run.
struct Waypoint {
  double t_s = 0.0;
  GeoCoord position;

  bool operator==(const Waypoint&) const = default;
};

using NodeDb = std::vector<NodeRecord>;
using ObstacleDb = std::vector<Obstacle>;
using WaypointTable = std::vector<Waypoint>;

bool is_valid_mac(std::string_view mac);

/// nodes.csv: `id,mac,lat,lon,alt_m`.
NodeDb load_nodes(std::istream& in, const ProjectionConfig& cfg, std::string source = "nodes.csv");

/// obstacles.csv in either `id,lat,lon,dx_m,dy_m,dz_m` or
/// `id,lat1,lon1,lat2,lon2,height_m` form, chosen by the header. Two-corner
/// rows are converted to corner + dims in the local frame.
ObstacleDb load_obstacles(std::istream& in, const ProjectionConfig& cfg,
                          std::string source = "obstacles.csv");

/// waypoints.csv: `t_s,lat,lon,alt_m`, strictly increasing t_s >= 0.
WaypointTable load_waypoints(std::istream& in, std::string source = "waypoints.csv");

// Canonical writers. Obstacles are always written in corner + dims form.
void write_nodes(std::ostream& out, const NodeDb& db);
void write_obstacles(std::ostream& out, const ObstacleDb& db);
void write_waypoints(std::ostream& out, const WaypointTable& table);

struct NearestNode {
  NodeRecord node;
  double distance_m = 0.0;
};

/// Node with the smallest 3D distance to the UAV; ties go to the lowest id.
/// Throws QueryError on an empty database.
NearestNode nearest_node(const LocalPoint& uav, const NodeDb& db);

const NodeRecord* find_node(const NodeDb& db, int id);

}  // namespace uavlink
