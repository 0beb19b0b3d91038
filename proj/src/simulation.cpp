#include "uavlink/simulation.hpp"

#include <algorithm>

#include "uavlink/csv.hpp"
#include "uavlink/errors.hpp"

namespace uavlink {

std::size_t SimulationRun::count(DecisionKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      decisions.begin(), decisions.end(), [kind](const Decision& d) { return d.kind == kind; }));
}

SimulationRun simulate(const WaypointTable& waypoints, const NodeDb& nodes,
                       const ObstacleDb& obstacles, const SimulationSettings& settings) {
  validate(settings.projection);
  validate(settings.thresholds);
  validate(settings.channel_model);
  validate(settings.channel);
  validate(settings.energy);
  if (nodes.empty()) {
    throw QueryError("simulation needs at least one node");
  }
  if (!is_valid_mac(settings.uav_mac)) {
    throw InputDomainError("malformed UAV MAC '" + settings.uav_mac + "'");
  }
  std::vector<LocalPoint> track;
  track.reserve(waypoints.size());
  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    if (i > 0 && !(waypoints[i].t_s > waypoints[i - 1].t_s)) {
      throw InputDomainError("waypoint times must be strictly increasing");
    }
    track.push_back(to_local(waypoints[i].position, settings.projection));
  }

  SimulationRun run;
  run.settings = settings;
  Channel channel(settings.channel);
  for (std::size_t i = 0; i < track.size(); ++i) {
    Decision d = decide(track[i], nodes, obstacles, settings.thresholds);
    d.tick_index = i;
    d.time_s = waypoints[i].t_s;
    if (is_transmit(d.kind)) {
      const NodeRecord* node = find_node(nodes, d.node_id);
      run.events.push_back(channel.exchange(d, settings.channel_model, settings.thresholds,
                                            settings.uav_mac, node->mac));
    }
    run.decisions.push_back(d);
  }
  run.ledger = account(run.decisions, settings.energy);
  return run;
}

void write_summary(std::ostream& out, const SimulationRun& run) {
  const auto delivered = std::count_if(run.events.begin(), run.events.end(),
                                       [](const ProtocolEvent& e) { return e.delivered; });
  out << "ticks=" << run.decisions.size() << '\n';
  for (const auto kind : {DecisionKind::TransmitNear, DecisionKind::TransmitLosClear,
                          DecisionKind::BlockedByObstacle, DecisionKind::OutOfRange}) {
    out << "count_" << to_string(kind) << '=' << run.count(kind) << '\n';
  }
  out << "exchanges=" << run.events.size() << '\n';
  out << "delivered=" << delivered << '\n';
  out << "alpha_m=" << csv::format_double(run.settings.thresholds.alpha_m) << '\n';
  out << "beta_m=" << csv::format_double(run.settings.thresholds.beta_m) << '\n';
  out << "optimized_j=" << csv::format_double(run.ledger.optimized_j) << '\n';
  out << "baseline_j=" << csv::format_double(run.ledger.baseline_j) << '\n';
  out << "savings_fraction=" << csv::format_double(run.ledger.savings_fraction) << '\n';
}

}  // namespace uavlink
