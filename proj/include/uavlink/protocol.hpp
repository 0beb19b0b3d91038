#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "uavlink/decision.hpp"
#include "uavlink/radio.hpp"

namespace uavlink {

enum class FrameKind { AckRequest, AckReply };

struct Frame {
  FrameKind kind = FrameKind::AckRequest;
  std::string src_mac;
  std::string dst_mac;
  std::vector<std::uint8_t> payload;  // opaque application data
};

Frame make_ack_request(std::string src_mac, std::string dst_mac, std::vector<std::uint8_t> payload = {});
/// Reply addressed back to the request's sender. Throws ContractViolation if
/// `request` is not an AckRequest.
Frame make_ack_reply(const Frame& request, std::vector<std::uint8_t> payload = {});

/// Result of one ACK exchange as seen by the UAV.
struct ProtocolEvent {
  std::size_t tick_index = 0;
  int node_id = 0;
  bool delivered = false;
  double rssi_dbm = 0.0;   // channel-predicted at the tick's distance
  double elapsed_ms = 0.0; // equals the timeout when not delivered

  bool operator==(const ProtocolEvent&) const = default;
};

enum class ChannelMode { Deterministic, Stochastic };

struct ChannelConfig {
  ChannelMode mode = ChannelMode::Deterministic;
  double noise_sigma_db = 0.0;
  double timeout_ms = 1000.0;
  double base_latency_ms = 20.0;
  std::uint64_t seed = 1;
};

void validate(const ChannelConfig& ch);

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr const char* kDefaultUavMac = "0013A20040A1B2C3";

/// Simulated link that owns the seeded noise generator. One per run.
class Channel {
 public:
  explicit Channel(ChannelConfig config);

  /// ACK request to the tick's node and, if the received power clears the
  /// threshold, the node's reply. Distances below the model's reference
  /// distance are evaluated at the reference distance.
  /// Throws ContractViolation when `tick` is not a Transmit decision.
  ProtocolEvent exchange(const Decision& tick, const PathLossModel& model, const LinkThresholds& th,
                         const std::string& uav_mac = kDefaultUavMac,
                         const std::string& node_mac = "0000000000000000");

  const ChannelConfig& config() const { return config_; }
  /// Every frame put on the air so far, in order.
  const std::vector<Frame>& frames() const { return frames_; }

 private:
  double standard_normal();

  ChannelConfig config_;
  std::mt19937_64 rng_;
  std::vector<Frame> frames_;
};

/// Per-tick costs. The defaults are placeholders, not measured hardware values.
struct EnergyModel {
  double e_tx_j = 0.5;     // per transmission attempt
  double e_rx_j = 0.25;    // per listen window
  double e_idle_j = 0.01;  // per silent tick
};

void validate(const EnergyModel& em);

struct EnergyLedger {
  double optimized_j = 0.0;
  double baseline_j = 0.0;
  double savings_fraction = 0.0;  // 1 - optimized / baseline; 0 when baseline is 0

  bool operator==(const EnergyLedger&) const = default;
};

/// Optimized cost charges e_tx + e_rx on Transmit ticks and e_idle otherwise;
/// the always-ping baseline charges e_tx + e_rx on every tick.
EnergyLedger account(std::span<const Decision> decisions, const EnergyModel& em);

/// events.csv: `tick,node_id,delivered,rssi_dbm,elapsed_ms`.
void write_events(std::ostream& out, std::span<const ProtocolEvent> events);
std::vector<ProtocolEvent> read_events(std::istream& in, std::string source = "events.csv");

}  // namespace uavlink
