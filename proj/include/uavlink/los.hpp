#pragma once

#include <cstddef>
#include <optional>

#include "uavlink/geo.hpp"
#include "uavlink/world.hpp"

namespace uavlink {

/// Straight link from transmitter `a` to receiver `b`; p(t) = a + t (b - a), t in [0, 1].
struct Segment {
  LocalPoint a;
  LocalPoint b;

  LocalPoint at(double t) const { return a + (b - a) * t; }
  double length() const { return distance(a, b); }
};

/// Smallest t in [0, 1] at which the segment is inside the closed box, or
/// nullopt if it never is. Throws InputDomainError for a = b.
std::optional<double> entry_parameter(const Segment& s, const Obstacle& o);

bool segment_intersects_box(const Segment& s, const Obstacle& o);

struct Blockage {
  Obstacle obstacle;
  double t_entry = 0.0;
};

/// The intersecting obstacle with the smallest entry parameter (ties: lowest id).
std::optional<Blockage> first_blocking_obstacle(const Segment& s, const ObstacleDb& db);

bool los_clear(const Segment& s, const ObstacleDb& db);

/// Brute-force reference: samples p(t) at `samples` evenly spaced t in [0, 1]
/// (endpoints included) and reports whether none falls inside any box.
/// Test oracle only; requires samples >= 1000.
bool los_oracle_sampled(const Segment& s, const ObstacleDb& db, std::size_t samples);

}  // namespace uavlink
