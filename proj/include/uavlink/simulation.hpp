#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "uavlink/decision.hpp"
#include "uavlink/geo.hpp"
#include "uavlink/protocol.hpp"
#include "uavlink/radio.hpp"
#include "uavlink/world.hpp"

namespace uavlink {

struct SimulationSettings {
  ProjectionConfig projection;
  LinkThresholds thresholds = default_thresholds();
  // Curve the channel uses to predict received power. With the outdoor model
  // that produced beta, every Transmit tick clears the threshold.
  PathLossModel channel_model = default_outdoor_model();
  ChannelConfig channel;
  EnergyModel energy;
  std::string uav_mac = kDefaultUavMac;
};

struct SimulationRun {
  SimulationSettings settings;
  std::vector<Decision> decisions;  // one per waypoint, in time order
  std::vector<ProtocolEvent> events;  // one per Transmit decision
  EnergyLedger ledger;

  std::size_t count(DecisionKind kind) const;
};

/// Replays the waypoint table: one decision per waypoint, an ACK exchange for
/// every Transmit decision, and the energy ledger over the whole run.
/// All inputs are validated before the first tick.
SimulationRun simulate(const WaypointTable& waypoints, const NodeDb& nodes,
                       const ObstacleDb& obstacles, const SimulationSettings& settings);

/// `key=value` lines: tick counts per kind, delivery counts and the energy ledger.
void write_summary(std::ostream& out, const SimulationRun& run);

}  // namespace uavlink
