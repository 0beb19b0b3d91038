#include "uavlink/los.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "uavlink/errors.hpp"

namespace uavlink {
namespace {

void require_non_degenerate(const Segment& s) {
  validate(s.a);
  validate(s.b);
  if (s.a == s.b) {
    throw InputDomainError("degenerate segment: transmitter and receiver coincide");
  }
}

// Cheap xy bounding-rectangle rejection. Never rejects a box the slab test would accept.
bool xy_bounds_overlap(const Segment& s, const Obstacle& o) {
  const LocalPoint hi = o.max_corner();
  return std::max(s.a.x, s.b.x) >= o.corner.x && std::min(s.a.x, s.b.x) <= hi.x &&
         std::max(s.a.y, s.b.y) >= o.corner.y && std::min(s.a.y, s.b.y) <= hi.y;
}

std::optional<double> slab_entry(const Segment& s, const Obstacle& o) {
  const LocalPoint hi = o.max_corner();
  const std::array<double, 3> origin{s.a.x, s.a.y, s.a.z};
  const std::array<double, 3> dir{s.b.x - s.a.x, s.b.y - s.a.y, s.b.z - s.a.z};
  const std::array<double, 3> lo_face{o.corner.x, o.corner.y, o.corner.z};
  const std::array<double, 3> hi_face{hi.x, hi.y, hi.z};

  double t_lo = 0.0;
  double t_hi = 1.0;
  for (std::size_t axis = 0; axis < 3; ++axis) {
    if (dir[axis] == 0.0) {
      if (origin[axis] < lo_face[axis] || origin[axis] > hi_face[axis]) {
        return std::nullopt;
      }
      continue;
    }
    double t1 = (lo_face[axis] - origin[axis]) / dir[axis];
    double t2 = (hi_face[axis] - origin[axis]) / dir[axis];
    if (t1 > t2) {
      std::swap(t1, t2);
    }
    t_lo = std::max(t_lo, t1);
    t_hi = std::min(t_hi, t2);
    if (t_lo > t_hi) {
      return std::nullopt;
    }
  }
  return t_lo;
}

}  // namespace

std::optional<double> entry_parameter(const Segment& s, const Obstacle& o) {
  require_non_degenerate(s);
  return slab_entry(s, o);
}

bool segment_intersects_box(const Segment& s, const Obstacle& o) {
  return entry_parameter(s, o).has_value();
}

std::optional<Blockage> first_blocking_obstacle(const Segment& s, const ObstacleDb& db) {
  require_non_degenerate(s);
  std::optional<Blockage> best;
  for (const auto& o : db) {
    if (!xy_bounds_overlap(s, o)) {
      continue;
    }
    const auto t = slab_entry(s, o);
    if (!t) {
      continue;
    }
    if (!best || *t < best->t_entry || (*t == best->t_entry && o.id < best->obstacle.id)) {
      best = Blockage{o, *t};
    }
  }
  return best;
}

bool los_clear(const Segment& s, const ObstacleDb& db) {
  return !first_blocking_obstacle(s, db).has_value();
}

bool los_oracle_sampled(const Segment& s, const ObstacleDb& db, std::size_t samples) {
  if (samples < 1000) {
    throw InputDomainError("sampling oracle needs at least 1000 samples, got " +
                           std::to_string(samples));
  }
  const double last = static_cast<double>(samples - 1);
  for (std::size_t k = 0; k < samples; ++k) {
    const LocalPoint p = s.at(static_cast<double>(k) / last);
    for (const auto& o : db) {
      if (o.contains(p)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace uavlink
