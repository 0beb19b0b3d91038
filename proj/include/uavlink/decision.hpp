#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uavlink/geo.hpp"
#include "uavlink/radio.hpp"
#include "uavlink/world.hpp"

namespace uavlink {

enum class DecisionKind {
  TransmitNear,       // d_min < alpha, no obstacle check
  TransmitLosClear,   // alpha <= d_min <= beta, line of sight clear
  BlockedByObstacle,  // alpha <= d_min <= beta, line of sight blocked
  OutOfRange,         // d_min > beta
};

std::string_view to_string(DecisionKind kind);
DecisionKind parse_decision_kind(std::string_view text);

constexpr bool is_transmit(DecisionKind kind) {
  return kind == DecisionKind::TransmitNear || kind == DecisionKind::TransmitLosClear;
}

struct Decision {
  std::size_t tick_index = 0;
  double time_s = 0.0;
  LocalPoint uav;
  int node_id = 0;
  double d_min_m = 0.0;
  DecisionKind kind = DecisionKind::OutOfRange;
  std::optional<int> blocking_obstacle_id;  // set iff kind == BlockedByObstacle

  bool operator==(const Decision&) const = default;
};

/// One tick of the decision loop: nearest node, distance bands, then the
/// line-of-sight test for the middle band. d_min equal to alpha or beta falls
/// in the middle band. tick_index and time_s are left at zero.
Decision decide(const LocalPoint& uav, const NodeDb& nodes, const ObstacleDb& obstacles,
                const LinkThresholds& th);

/// decisions.csv: `tick,t_s,uav_x,uav_y,uav_z,node_id,d_min_m,kind,blocking_obstacle_id`.
void write_decisions(std::ostream& out, std::span<const Decision> decisions);
std::vector<Decision> read_decisions(std::istream& in, std::string source = "decisions.csv");

}  // namespace uavlink
