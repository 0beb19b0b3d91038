#include "uavlink/world.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "uavlink/csv.hpp"
#include "uavlink/errors.hpp"

namespace uavlink {
namespace {

struct Columns {
  std::vector<std::size_t> index;
};

// Resolves the named columns or throws at the header line.
Columns require_columns(const csv::Table& t, std::initializer_list<std::string_view> names) {
  Columns cols;
  for (const auto name : names) {
    const auto idx = t.column(name);
    if (!idx) {
      throw LoadError(t.source, t.header_line, "missing column '" + std::string(name) + "'");
    }
    cols.index.push_back(*idx);
  }
  return cols;
}

// Geo validation and projection errors become load errors at the row.
template <typename F>
auto at_row(const csv::Table& t, const csv::Row& row, F&& f) {
  try {
    return f();
  } catch (const InputDomainError& e) {
    throw LoadError(t.source, row.line, e.what());
  }
}

int parse_id(const csv::Table& t, const csv::Row& row, std::size_t col, std::set<int>& seen) {
  const long long raw = csv::parse_int(t, row, col);
  if (raw < 0 || raw > 1'000'000'000) {
    throw LoadError(t.source, row.line, "id out of range: " + std::to_string(raw));
  }
  const int id = static_cast<int>(raw);
  if (!seen.insert(id).second) {
    throw LoadError(t.source, row.line, "duplicate id " + std::to_string(id));
  }
  return id;
}

}  // namespace

bool Obstacle::contains(const LocalPoint& p) const {
  const LocalPoint hi = max_corner();
  return p.x >= corner.x && p.x <= hi.x && p.y >= corner.y && p.y <= hi.y && p.z >= corner.z &&
         p.z <= hi.z;
}

bool is_valid_mac(std::string_view mac) {
  return mac.size() == 16 &&
         std::all_of(mac.begin(), mac.end(), [](unsigned char c) { return std::isxdigit(c); });
}

NodeDb load_nodes(std::istream& in, const ProjectionConfig& cfg, std::string source) {
  const csv::Table t = csv::read(in, std::move(source));
  if (t.empty() || t.rows.empty()) {
    throw LoadError(t.source, std::max<std::size_t>(t.header_line, 1), "no nodes");
  }
  const auto c = require_columns(t, {"id", "mac", "lat", "lon", "alt_m"}).index;
  NodeDb db;
  std::set<int> seen;
  for (const auto& row : t.rows) {
    NodeRecord node;
    node.id = parse_id(t, row, c[0], seen);
    node.mac = row.fields[c[1]];
    if (!is_valid_mac(node.mac)) {
      throw LoadError(t.source, row.line, "malformed MAC '" + node.mac + "' (need 16 hex digits)");
    }
    node.geo = {csv::parse_double(t, row, c[2]), csv::parse_double(t, row, c[3]),
                csv::parse_double(t, row, c[4])};
    node.position = at_row(t, row, [&] { return to_local(node.geo, cfg); });
    db.push_back(std::move(node));
  }
  return db;
}

ObstacleDb load_obstacles(std::istream& in, const ProjectionConfig& cfg, std::string source) {
  const csv::Table t = csv::read(in, std::move(source));
  ObstacleDb db;
  if (t.empty()) {
    return db;
  }
  const bool two_corner = t.column("lat1").has_value();
  const auto c = two_corner ? require_columns(t, {"id", "lat1", "lon1", "lat2", "lon2", "height_m"}).index
                            : require_columns(t, {"id", "lat", "lon", "dx_m", "dy_m", "dz_m"}).index;
  std::set<int> seen;
  for (const auto& row : t.rows) {
    Obstacle o;
    o.id = parse_id(t, row, c[0], seen);
    if (two_corner) {
      const GeoCoord g1{csv::parse_double(t, row, c[1]), csv::parse_double(t, row, c[2]), 0.0};
      const GeoCoord g2{csv::parse_double(t, row, c[3]), csv::parse_double(t, row, c[4]), 0.0};
      const double height = csv::parse_double(t, row, c[5]);
      const LocalPoint p1 = at_row(t, row, [&] { return to_local(g1, cfg); });
      const LocalPoint p2 = at_row(t, row, [&] { return to_local(g2, cfg); });
      // Both projections are increasing in lat and lon, so the min corner in
      // degrees is the min corner in the local frame.
      o.geo_corner = {std::min(g1.lat, g2.lat), std::min(g1.lon, g2.lon), 0.0};
      o.corner = to_local(o.geo_corner, cfg);
      o.dims = {std::abs(p2.x - p1.x), std::abs(p2.y - p1.y), height};
    } else {
      o.geo_corner = {csv::parse_double(t, row, c[1]), csv::parse_double(t, row, c[2]), 0.0};
      o.corner = at_row(t, row, [&] { return to_local(o.geo_corner, cfg); });
      o.dims = {csv::parse_double(t, row, c[3]), csv::parse_double(t, row, c[4]),
                csv::parse_double(t, row, c[5])};
    }
    if (!(o.dims.dx > 0.0) || !(o.dims.dy > 0.0) || !(o.dims.dz > 0.0)) {
      throw LoadError(t.source, row.line, "obstacle dimensions must be positive");
    }
    db.push_back(o);
  }
  return db;
}

WaypointTable load_waypoints(std::istream& in, std::string source) {
  const csv::Table t = csv::read(in, std::move(source));
  if (t.empty()) {
    throw LoadError(t.source, 1, "missing header");
  }
  const auto c = require_columns(t, {"t_s", "lat", "lon", "alt_m"}).index;
  WaypointTable table;
  for (const auto& row : t.rows) {
    Waypoint w;
    w.t_s = csv::parse_double(t, row, c[0]);
    w.position = {csv::parse_double(t, row, c[1]), csv::parse_double(t, row, c[2]),
                  csv::parse_double(t, row, c[3])};
    at_row(t, row, [&] {
      validate(w.position);
      return 0;
    });
    if (w.t_s < 0.0) {
      throw LoadError(t.source, row.line, "t_s must be non-negative");
    }
    if (!table.empty() && !(w.t_s > table.back().t_s)) {
      throw LoadError(t.source, row.line, "t_s must be strictly increasing");
    }
    table.push_back(w);
  }
  return table;
}

void write_nodes(std::ostream& out, const NodeDb& db) {
  using csv::format_double;
  out << "id,mac,lat,lon,alt_m\n";
  for (const auto& n : db) {
    out << n.id << ',' << n.mac << ',' << format_double(n.geo.lat) << ','
        << format_double(n.geo.lon) << ',' << format_double(n.geo.alt) << '\n';
  }
}

void write_obstacles(std::ostream& out, const ObstacleDb& db) {
  using csv::format_double;
  out << "id,lat,lon,dx_m,dy_m,dz_m\n";
  for (const auto& o : db) {
    out << o.id << ',' << format_double(o.geo_corner.lat) << ',' << format_double(o.geo_corner.lon)
        << ',' << format_double(o.dims.dx) << ',' << format_double(o.dims.dy) << ','
        << format_double(o.dims.dz) << '\n';
  }
}

void write_waypoints(std::ostream& out, const WaypointTable& table) {
  using csv::format_double;
  out << "t_s,lat,lon,alt_m\n";
  for (const auto& w : table) {
    out << format_double(w.t_s) << ',' << format_double(w.position.lat) << ','
        << format_double(w.position.lon) << ',' << format_double(w.position.alt) << '\n';
  }
}

NearestNode nearest_node(const LocalPoint& uav, const NodeDb& db) {
  if (db.empty()) {
    throw QueryError("nearest_node: node database is empty");
  }
  const NodeRecord* best = nullptr;
  double best_d = 0.0;
  for (const auto& node : db) {
    const double d = distance(uav, node.position);
    if (best == nullptr || d < best_d || (d == best_d && node.id < best->id)) {
      best = &node;
      best_d = d;
    }
  }
  return {*best, best_d};
}

const NodeRecord* find_node(const NodeDb& db, int id) {
  const auto it = std::find_if(db.begin(), db.end(), [id](const NodeRecord& n) { return n.id == id; });
  return it == db.end() ? nullptr : &*it;
}

}  // namespace uavlink
