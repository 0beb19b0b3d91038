#include "uavlink/decision.hpp"

#include "uavlink/csv.hpp"
#include "uavlink/errors.hpp"
#include "uavlink/los.hpp"

namespace uavlink {

std::string_view to_string(DecisionKind kind) {
  switch (kind) {
    case DecisionKind::TransmitNear:
      return "TransmitNear";
    case DecisionKind::TransmitLosClear:
      return "TransmitLosClear";
    case DecisionKind::BlockedByObstacle:
      return "BlockedByObstacle";
    case DecisionKind::OutOfRange:
      return "OutOfRange";
  }
  return "?";
}

DecisionKind parse_decision_kind(std::string_view text) {
  for (const auto kind : {DecisionKind::TransmitNear, DecisionKind::TransmitLosClear,
                          DecisionKind::BlockedByObstacle, DecisionKind::OutOfRange}) {
    if (text == to_string(kind)) {
      return kind;
    }
  }
  throw InputDomainError("unknown decision kind '" + std::string(text) + "'");
}

Decision decide(const LocalPoint& uav, const NodeDb& nodes, const ObstacleDb& obstacles,
                const LinkThresholds& th) {
  validate(th);
  validate(uav);
  const NearestNode nearest = nearest_node(uav, nodes);

  Decision d;
  d.uav = uav;
  d.node_id = nearest.node.id;
  d.d_min_m = nearest.distance_m;
  if (d.d_min_m < th.alpha_m) {
    d.kind = DecisionKind::TransmitNear;
  } else if (d.d_min_m > th.beta_m) {
    d.kind = DecisionKind::OutOfRange;
  } else {
    // alpha > 0, so the segment here is never degenerate.
    const auto blockage = first_blocking_obstacle({uav, nearest.node.position}, obstacles);
    if (blockage) {
      d.kind = DecisionKind::BlockedByObstacle;
      d.blocking_obstacle_id = blockage->obstacle.id;
    } else {
      d.kind = DecisionKind::TransmitLosClear;
    }
  }
  return d;
}

void write_decisions(std::ostream& out, std::span<const Decision> decisions) {
  using csv::format_double;
  out << "tick,t_s,uav_x,uav_y,uav_z,node_id,d_min_m,kind,blocking_obstacle_id\n";
  for (const auto& d : decisions) {
    out << d.tick_index << ',' << format_double(d.time_s) << ',' << format_double(d.uav.x) << ','
        << format_double(d.uav.y) << ',' << format_double(d.uav.z) << ',' << d.node_id << ','
        << format_double(d.d_min_m) << ',' << to_string(d.kind) << ',';
    if (d.blocking_obstacle_id) {
      out << *d.blocking_obstacle_id;
    }
    out << '\n';
  }
}

std::vector<Decision> read_decisions(std::istream& in, std::string source) {
  const csv::Table t = csv::read(in, std::move(source));
  if (t.empty()) {
    throw LoadError(t.source, 1, "missing header");
  }
  const std::vector<std::string> expected{"tick",  "t_s",     "uav_x", "uav_y",
                                          "uav_z", "node_id", "d_min_m", "kind",
                                          "blocking_obstacle_id"};
  if (t.header != expected) {
    throw LoadError(t.source, t.header_line, "unexpected decisions.csv header");
  }
  std::vector<Decision> out;
  for (const auto& row : t.rows) {
    Decision d;
    d.tick_index = static_cast<std::size_t>(csv::parse_int(t, row, 0));
    d.time_s = csv::parse_double(t, row, 1);
    d.uav = {csv::parse_double(t, row, 2), csv::parse_double(t, row, 3),
             csv::parse_double(t, row, 4)};
    d.node_id = static_cast<int>(csv::parse_int(t, row, 5));
    d.d_min_m = csv::parse_double(t, row, 6);
    try {
      d.kind = parse_decision_kind(row.fields[7]);
    } catch (const InputDomainError& e) {
      throw LoadError(t.source, row.line, e.what());
    }
    if (!row.fields[8].empty()) {
      d.blocking_obstacle_id = static_cast<int>(csv::parse_int(t, row, 8));
    }
    out.push_back(d);
  }
  return out;
}

}  // namespace uavlink
