// Acceptance suite: one PASS/FAIL line per criterion, each with its runtime budget.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/random_scene.hpp"
#include "cli.hpp"
#include "uavlink/config.hpp"
#include "uavlink/decision.hpp"
#include "uavlink/los.hpp"
#include "uavlink/protocol.hpp"
#include "uavlink/radio.hpp"
#include "uavlink/simulation.hpp"
#include "uavlink/world.hpp"

using namespace uavlink;
namespace fs = std::filesystem;

namespace {

const std::string kScenario = UAVLINK_DATA_DIR "/scenario";

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int number;
  std::string name;
  double budget_s;
  std::function<Outcome()> check;
};

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(10);
  ss << v;
  return ss.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("uavlink_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Crossing distance by hand: I - 10 n log10(d / d0) = R  =>  d = d0 * 10^((I - R) / (10 n)).
double hand_crossing(const PathLossModel& m, double rssi0) {
  return m.ref_distance_m * std::pow(10.0, (m.intercept_dbm - rssi0) / (10.0 * m.exponent));
}

std::vector<RssiSample> shipped_measurements() {
  std::ifstream in(UAVLINK_DATA_DIR "/measurements/measurements.csv");
  return load_measurements(in, "measurements.csv");
}

Outcome threshold_reproduction() {
  Outcome o;
  const double alpha = derive_threshold_distance(default_indoor_model(), kDefaultRssiThresholdDbm);
  const double beta = derive_threshold_distance(default_outdoor_model(), kDefaultRssiThresholdDbm);
  const auto samples = shipped_measurements();
  const double alpha_fit =
      derive_threshold_distance(fit_model(filter_environment(samples, Environment::Indoor)), kDefaultRssiThresholdDbm);
  const double beta_fit =
      derive_threshold_distance(fit_model(filter_environment(samples, Environment::Outdoor)), kDefaultRssiThresholdDbm);
  o.ok = std::abs(alpha - 162.0) <= 1.0 && std::abs(beta - 725.0) <= 1.0 &&
         std::abs(alpha_fit - 162.0) <= 5.0 && std::abs(beta_fit - 725.0) <= 5.0;
  o.detail = "alpha=" + fmt(alpha) + " beta=" + fmt(beta) + " refit alpha=" + fmt(alpha_fit) +
             " beta=" + fmt(beta_fit);
  return o;
}

Outcome outdoor_range() {
  const double beta = derive_threshold_distance(default_outdoor_model(), kDefaultRssiThresholdDbm);
  return {beta >= 700.0 && beta <= 750.0, "crossing=" + fmt(beta)};
}

Outcome decision_table() {
  const LinkThresholds th = default_thresholds();
  const double a = th.alpha_m;
  const double b = th.beta_m;
  const NodeDb nodes{{1, "0013A200400A0101", {}, {0.0, 0.0, 20.0}}};
  Obstacle wall;
  wall.id = 3;
  wall.corner = {5.0, -50.0, 0.0};
  wall.dims = {10.0, 100.0, 100.0};
  using K = DecisionKind;
  struct Case {
    double d;
    bool blocked;
    K expected;
  };
  const std::vector<Case> cases{
      {a / 2, false, K::TransmitNear},           {a / 2, true, K::TransmitNear},
      {a, false, K::TransmitLosClear},           {a, true, K::BlockedByObstacle},
      {(a + b) / 2, false, K::TransmitLosClear}, {(a + b) / 2, true, K::BlockedByObstacle},
      {b, false, K::TransmitLosClear},           {b, true, K::BlockedByObstacle},
      {2 * b, false, K::OutOfRange},             {2 * b, true, K::OutOfRange},
  };
  int passed = 0;
  std::string failures;
  for (const auto& c : cases) {
    const ObstacleDb obstacles = c.blocked ? ObstacleDb{wall} : ObstacleDb{};
    const Decision d = decide({c.d, 0.0, 20.0}, nodes, obstacles, th);
    if (d.kind == c.expected) {
      ++passed;
    } else {
      failures += " d=" + fmt(c.d) + (c.blocked ? "/blocked" : "/clear") + "->" + std::string(to_string(d.kind));
    }
  }
  return {passed == 10, std::to_string(passed) + "/10 cases" + failures};
}

Outcome scenario_replay() {
  const fs::path out = scratch_dir("replay");
  std::ostringstream so, se;
  const int code = cli::run({"uavlink", "--config", kScenario + "/run.cfg", "--out", out.string(), "simulate"}, so, se);
  if (code != 0) {
    return {false, "simulate exit " + std::to_string(code) + ": " + se.str()};
  }
  std::ifstream din(out / "decisions.csv");
  const auto decisions = read_decisions(din);

  // Reference path: brute-force nearest node, hand threshold arithmetic, sampled LOS.
  const RunConfig cfg = load_run_config(kScenario + "/run.cfg");
  const ProjectionConfig& proj = cfg.settings.projection;
  std::ifstream nin(cfg.nodes_path), oin(cfg.obstacles_path), win(cfg.waypoints_path);
  const NodeDb nodes = load_nodes(nin, proj);
  const ObstacleDb obstacles = load_obstacles(oin, proj);
  const WaypointTable waypoints = load_waypoints(win);
  const double alpha = hand_crossing(default_indoor_model(), kDefaultRssiThresholdDbm);
  const double beta = hand_crossing(default_outdoor_model(), kDefaultRssiThresholdDbm);

  using K = DecisionKind;
  const std::vector<K> designed{K::TransmitNear,     K::TransmitNear,     K::TransmitLosClear,
                                K::BlockedByObstacle, K::OutOfRange,      K::OutOfRange,
                                K::TransmitLosClear,  K::TransmitNear,    K::TransmitNear};
  if (decisions.size() != waypoints.size() || decisions.size() != designed.size()) {
    return {false, "tick count " + std::to_string(decisions.size())};
  }
  std::string timeline;
  bool ok = true;
  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    const LocalPoint uav = to_local(waypoints[i].position, proj);
    const NodeRecord* best = nullptr;
    double best_d = 0.0;
    for (const auto& n : nodes) {
      const double d = std::sqrt((uav.x - n.position.x) * (uav.x - n.position.x) +
                                 (uav.y - n.position.y) * (uav.y - n.position.y) +
                                 (uav.z - n.position.z) * (uav.z - n.position.z));
      if (best == nullptr || d < best_d || (d == best_d && n.id < best->id)) {
        best = &n;
        best_d = d;
      }
    }
    K ref;
    if (best_d < alpha) {
      ref = K::TransmitNear;
    } else if (best_d > beta) {
      ref = K::OutOfRange;
    } else {
      ref = los_oracle_sampled({uav, best->position}, obstacles, 100000) ? K::TransmitLosClear
                                                                         : K::BlockedByObstacle;
    }
    ok = ok && decisions[i].kind == ref && ref == designed[i] && decisions[i].node_id == best->id;
    timeline += std::string(i ? "," : "") + std::string(to_string(decisions[i].kind));
  }
  return {ok, timeline};
}

Outcome los_differential() {
  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> pos(-1000.0, 1000.0);
  std::uniform_real_distribution<double> alt(0.0, 120.0);
  std::uniform_real_distribution<double> len(1.0, 2000.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.141592653589793);
  std::uniform_real_distribution<double> dim(1.0, 150.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> n_boxes(1, 5);
  const int scenes = 1000;
  int disagreements = 0;
  int blocked = 0;
  for (int i = 0; i < scenes; ++i) {
    const LocalPoint a{pos(rng), pos(rng), alt(rng)};
    const double l = len(rng);
    const double th = angle(rng);
    const double dz = alt(rng) - a.z;
    const double horizontal = std::sqrt(std::max(0.0, l * l - dz * dz));
    const LocalPoint b{a.x + horizontal * std::cos(th), a.y + horizontal * std::sin(th), a.z + dz};
    ObstacleDb db;
    const int nb = n_boxes(rng);
    for (int k = 0; k < nb; ++k) {
      // Scatter boxes around points along the segment so a fair share of scenes block.
      const double t = unit(rng);
      const double w = dim(rng);
      const double d = dim(rng);
      Obstacle o;
      o.id = k;
      o.dims = {w, d, dim(rng) * 0.8};
      o.corner = {a.x + t * (b.x - a.x) - w * unit(rng) + 60.0 * (unit(rng) - 0.5),
                  a.y + t * (b.y - a.y) - d * unit(rng) + 60.0 * (unit(rng) - 0.5), 0.0};
      db.push_back(o);
    }
    const Segment s{a, b};
    const bool fast = los_clear(s, db);
    const bool oracle = los_oracle_sampled(s, db, 100000);
    disagreements += fast != oracle;
    blocked += !fast;
  }
  return {disagreements == 0, std::to_string(scenes) + " scenes, " + std::to_string(blocked) + " blocked, " +
                                  std::to_string(disagreements) + " disagreements"};
}

Outcome never_doomed() {
  std::mt19937_64 rng(424242);
  const int runs = 200;
  std::size_t transmit = 0;
  std::size_t delivered = 0;
  for (int r = 0; r < runs; ++r) {
    const auto s = uavlink::testing::random_scene(rng);
    SimulationSettings settings;
    settings.projection = s.projection;
    const auto run = simulate(s.waypoints, s.nodes, s.obstacles, settings);
    for (const auto& d : run.decisions) transmit += is_transmit(d.kind);
    for (const auto& e : run.events) delivered += e.delivered;
  }
  return {transmit > 0 && delivered == transmit,
          std::to_string(runs) + " runs, " + std::to_string(delivered) + "/" + std::to_string(transmit) +
              " transmit ticks delivered"};
}

Outcome energy_ledger() {
  std::mt19937_64 rng(777);
  int violations = 0;
  const int runs = 200;
  for (int r = 0; r < runs; ++r) {
    const auto s = uavlink::testing::random_scene(rng);
    SimulationSettings settings;
    settings.projection = s.projection;
    const auto run = simulate(s.waypoints, s.nodes, s.obstacles, settings);
    violations += !(run.ledger.optimized_j <= run.ledger.baseline_j);
  }

  const RunConfig cfg = load_run_config(kScenario + "/run.cfg");
  const ProjectionConfig& proj = cfg.settings.projection;
  std::ifstream nin(cfg.nodes_path), oin(cfg.obstacles_path), win(cfg.waypoints_path);
  const auto run = simulate(load_waypoints(win), load_nodes(nin, proj), load_obstacles(oin, proj), cfg.settings);
  const double transmit = static_cast<double>(run.count(DecisionKind::TransmitNear) +
                                              run.count(DecisionKind::TransmitLosClear));
  const double silent = static_cast<double>(run.decisions.size()) - transmit;
  const EnergyModel& em = cfg.settings.energy;
  const double pair = em.e_tx_j + em.e_rx_j;
  const double expected = 1.0 - (transmit * pair + silent * em.e_idle_j) /
                                    (static_cast<double>(run.decisions.size()) * pair);
  const double err = std::abs(run.ledger.savings_fraction - expected);
  return {violations == 0 && err <= 1e-9,
          std::to_string(runs) + " random runs, " + std::to_string(violations) + " violations; scenario savings=" +
              fmt(run.ledger.savings_fraction) + " expected=" + fmt(expected)};
}

Outcome calibration_recovery() {
  const PathLossModel truth{-14.5, 2.35, 1.0};
  std::vector<RssiSample> exact;
  for (const double d : {1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0}) {
    exact.push_back({d, truth.intercept_dbm - 10.0 * truth.exponent * std::log10(d), Environment::Outdoor});
  }
  const PathLossModel fit = fit_model(exact);
  const double ie = std::abs(fit.intercept_dbm - truth.intercept_dbm);
  const double ne = std::abs(fit.exponent - truth.exponent);
  bool ok = ie <= 1e-9 && ne <= 1e-9;

  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> noise(-0.5, 0.5);
    std::uniform_real_distribution<double> logd(0.0, 3.0);
    std::vector<RssiSample> noisy;
    for (int i = 0; i < 50; ++i) {
      const double d = std::pow(10.0, logd(rng));
      noisy.push_back({d, predict_rssi(truth, d) + noise(rng), Environment::Outdoor});
    }
    worst = std::max(worst, std::abs(fit_model(noisy).exponent - truth.exponent));
  }
  ok = ok && worst <= 0.15;
  return {ok, "noiseless |dI|=" + fmt(ie) + " |dn|=" + fmt(ne) + "; noisy worst |dn|=" + fmt(worst) + " over 20 seeds"};
}

Outcome determinism() {
  // Shipped config plus a stochastic variant, so the seed actually matters.
  const fs::path dir = scratch_dir("determinism");
  const RunConfig shipped = load_run_config(kScenario + "/run.cfg");
  {
    std::ofstream cfg(dir / "stochastic.cfg");
    cfg << "[files]\nnodes = " << shipped.nodes_path.string() << "\nobstacles = " << shipped.obstacles_path.string()
        << "\nwaypoints = " << shipped.waypoints_path.string() << "\n[projection]\nref_lat = 22.3\nref_lon = 39.1\n"
        << "[channel]\nmode = stochastic\nnoise_sigma_db = 6\n";
  }
  bool ok = true;
  std::string detail;
  for (const fs::path& cfg : {fs::path(kScenario) / "run.cfg", dir / "stochastic.cfg"}) {
    for (const char* sub : {"a", "b"}) {
      std::ostringstream so, se;
      const int code = cli::run({"uavlink", "--config", cfg.string(), "--seed", "31337", "--out",
                                 (dir / (cfg.stem().string() + sub)).string(), "simulate"},
                                so, se);
      if (code != 0) {
        return {false, cfg.string() + ": exit " + std::to_string(code) + " " + se.str()};
      }
    }
    for (const char* f : {"decisions.csv", "events.csv"}) {
      const std::string a = slurp(dir / (cfg.stem().string() + "a") / f);
      const std::string b = slurp(dir / (cfg.stem().string() + "b") / f);
      const bool same = !a.empty() && a == b;
      ok = ok && same;
      detail += cfg.stem().string() + "/" + f + (same ? " identical " : " DIFFER ");
    }
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "threshold reproduction", 1.0, threshold_reproduction},
      {2, "outdoor range consistency", 1.0, outdoor_range},
      {3, "decision-rule table", 1.0, decision_table},
      {4, "scenario replay", 5.0, scenario_replay},
      {5, "LOS differential", 60.0, los_differential},
      {6, "never-doomed transmit", 30.0, never_doomed},
      {7, "energy ledger", 5.0, energy_ledger},
      {8, "calibration recovery", 5.0, calibration_recovery},
      {9, "determinism", 10.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = secs < c.budget_s;
    const bool pass = o.ok && in_budget;
    failed += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  [PRIMARY] " << c.number << ". " << c.name << "  (" << fmt(secs)
              << " s, budget " << fmt(c.budget_s) << " s" << (in_budget ? "" : ", OVER BUDGET") << ")  "
              << o.detail << '\n';
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
