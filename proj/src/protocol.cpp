#include "uavlink/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uavlink/csv.hpp"
#include "uavlink/errors.hpp"

namespace uavlink {

Frame make_ack_request(std::string src_mac, std::string dst_mac, std::vector<std::uint8_t> payload) {
  return {FrameKind::AckRequest, std::move(src_mac), std::move(dst_mac), std::move(payload)};
}

Frame make_ack_reply(const Frame& request, std::vector<std::uint8_t> payload) {
  if (request.kind != FrameKind::AckRequest) {
    throw ContractViolation("can only reply to an AckRequest");
  }
  return {FrameKind::AckReply, request.dst_mac, request.src_mac, std::move(payload)};
}

void validate(const ChannelConfig& ch) {
  if (!std::isfinite(ch.noise_sigma_db) || ch.noise_sigma_db < 0.0) {
    throw InputDomainError("channel noise_sigma must be non-negative");
  }
  if (!std::isfinite(ch.timeout_ms) || !std::isfinite(ch.base_latency_ms) ||
      ch.base_latency_ms < 0.0 || !(ch.timeout_ms > ch.base_latency_ms)) {
    throw InputDomainError("channel timeout must exceed base latency");
  }
}

Channel::Channel(ChannelConfig config) : config_(config), rng_(config.seed) {
  validate(config_);
}

// Box-Muller on raw mt19937_64 output, so the stream is identical across
// standard library implementations.
double Channel::standard_normal() {
  constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53
  const double u1 = 1.0 - static_cast<double>(rng_() >> 11) * kInv53;  // (0, 1]
  const double u2 = static_cast<double>(rng_() >> 11) * kInv53;        // [0, 1)
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

ProtocolEvent Channel::exchange(const Decision& tick, const PathLossModel& model,
                                const LinkThresholds& th, const std::string& uav_mac,
                                const std::string& node_mac) {
  if (!is_transmit(tick.kind)) {
    throw ContractViolation("exchange called on a " + std::string(to_string(tick.kind)) + " tick");
  }
  const double effective_d = std::max(tick.d_min_m, model.ref_distance_m);
  ProtocolEvent ev;
  ev.tick_index = tick.tick_index;
  ev.node_id = tick.node_id;
  ev.rssi_dbm = predict_rssi(model, effective_d);

  double received = ev.rssi_dbm;
  if (config_.mode == ChannelMode::Stochastic) {
    received += config_.noise_sigma_db * standard_normal();
  }
  ev.delivered = received >= th.rssi_threshold_dbm;

  const Frame request = make_ack_request(uav_mac, node_mac);
  frames_.push_back(request);
  if (ev.delivered) {
    frames_.push_back(make_ack_reply(request));
    ev.elapsed_ms = config_.base_latency_ms + tick.d_min_m / kSpeedOfLight * 1000.0;
  } else {
    ev.elapsed_ms = config_.timeout_ms;
  }
  return ev;
}

void validate(const EnergyModel& em) {
  if (!(em.e_tx_j >= 0.0) || !(em.e_rx_j >= 0.0) || !(em.e_idle_j >= 0.0) ||
      !std::isfinite(em.e_tx_j) || !std::isfinite(em.e_rx_j) || !std::isfinite(em.e_idle_j)) {
    throw InputDomainError("energy costs must be finite and non-negative");
  }
  if (!(em.e_tx_j > em.e_idle_j)) {
    throw InputDomainError("e_tx must exceed e_idle");
  }
}

EnergyLedger account(std::span<const Decision> decisions, const EnergyModel& em) {
  validate(em);
  const double exchange_cost = em.e_tx_j + em.e_rx_j;
  EnergyLedger ledger;
  for (const auto& d : decisions) {
    ledger.optimized_j += is_transmit(d.kind) ? exchange_cost : em.e_idle_j;
  }
  ledger.baseline_j = static_cast<double>(decisions.size()) * exchange_cost;
  ledger.savings_fraction =
      ledger.baseline_j > 0.0 ? 1.0 - ledger.optimized_j / ledger.baseline_j : 0.0;
  return ledger;
}

void write_events(std::ostream& out, std::span<const ProtocolEvent> events) {
  using csv::format_double;
  out << "tick,node_id,delivered,rssi_dbm,elapsed_ms\n";
  for (const auto& e : events) {
    out << e.tick_index << ',' << e.node_id << ',' << (e.delivered ? 1 : 0) << ','
        << format_double(e.rssi_dbm) << ',' << format_double(e.elapsed_ms) << '\n';
  }
}

std::vector<ProtocolEvent> read_events(std::istream& in, std::string source) {
  const csv::Table t = csv::read(in, std::move(source));
  const std::vector<std::string> expected{"tick", "node_id", "delivered", "rssi_dbm", "elapsed_ms"};
  if (t.empty() || t.header != expected) {
    throw LoadError(t.source, std::max<std::size_t>(t.header_line, 1), "unexpected events.csv header");
  }
  std::vector<ProtocolEvent> out;
  for (const auto& row : t.rows) {
    ProtocolEvent e;
    e.tick_index = static_cast<std::size_t>(csv::parse_int(t, row, 0));
    e.node_id = static_cast<int>(csv::parse_int(t, row, 1));
    const long long delivered = csv::parse_int(t, row, 2);
    if (delivered != 0 && delivered != 1) {
      throw LoadError(t.source, row.line, "delivered must be 0 or 1");
    }
    e.delivered = delivered == 1;
    e.rssi_dbm = csv::parse_double(t, row, 3);
    e.elapsed_ms = csv::parse_double(t, row, 4);
    out.push_back(e);
  }
  return out;
}

}  // namespace uavlink
