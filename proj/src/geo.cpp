#include "uavlink/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uavlink/errors.hpp"

namespace uavlink {
namespace {

double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Local units per degree of longitude / latitude for the configured mode.
double lon_scale(const ProjectionConfig& cfg) {
  if (cfg.mode == ProjectionMode::Scaled) {
    return cfg.scale;
  }
  return kMetersPerDegreeLon * std::cos(deg2rad(cfg.ref_lat));
}

double lat_scale(const ProjectionConfig& cfg) {
  return cfg.mode == ProjectionMode::Scaled ? cfg.scale : kMetersPerDegreeLat;
}

}  // namespace

void validate(const GeoCoord& g) {
  if (!std::isfinite(g.lat) || g.lat < -90.0 || g.lat > 90.0) {
    throw InputDomainError("latitude out of range: " + std::to_string(g.lat));
  }
  if (!std::isfinite(g.lon) || g.lon < -180.0 || g.lon > 180.0) {
    throw InputDomainError("longitude out of range: " + std::to_string(g.lon));
  }
  if (!std::isfinite(g.alt)) {
    throw InputDomainError("altitude is not finite");
  }
}

void validate(const LocalPoint& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
    throw InputDomainError("local point has a non-finite component");
  }
}

void validate(const ProjectionConfig& cfg) {
  if (!std::isfinite(cfg.scale) || cfg.scale <= 0.0) {
    throw InputDomainError("projection scale must be positive");
  }
  if (!std::isfinite(cfg.ref_lon) || cfg.ref_lon < -180.0 || cfg.ref_lon > 180.0) {
    throw InputDomainError("projection ref_lon out of range");
  }
  // cos(ref_lat) must stay positive for the equirectangular x axis.
  if (!std::isfinite(cfg.ref_lat) || cfg.ref_lat <= -90.0 || cfg.ref_lat >= 90.0) {
    throw InputDomainError("projection ref_lat out of range");
  }
}

LocalPoint to_local(const GeoCoord& g, const ProjectionConfig& cfg) {
  validate(g);
  validate(cfg);
  return {(g.lon - cfg.ref_lon) * lon_scale(cfg), (g.lat - cfg.ref_lat) * lat_scale(cfg), g.alt};
}

GeoCoord to_geo(const LocalPoint& p, const ProjectionConfig& cfg) {
  validate(p);
  validate(cfg);
  return {cfg.ref_lat + p.y / lat_scale(cfg), cfg.ref_lon + p.x / lon_scale(cfg), p.z};
}

double distance(const LocalPoint& a, const LocalPoint& b) {
  const LocalPoint d = b - a;
  return std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
}

TrilaterationFix trilaterate_fix(std::span<const RangeAnchor> anchors) {
  if (anchors.size() < 3) {
    throw GeometryError("trilateration needs at least 3 anchors, got " +
                        std::to_string(anchors.size()));
  }
  for (const auto& a : anchors) {
    validate(a.position);
    if (!std::isfinite(a.range_m) || a.range_m < 0.0) {
      throw InputDomainError("anchor range must be finite and non-negative");
    }
  }

  // Work relative to the anchor centroid to keep the squared terms small.
  const double n = static_cast<double>(anchors.size());
  double cx = 0.0;
  double cy = 0.0;
  for (const auto& a : anchors) {
    cx += a.position.x;
    cy += a.position.y;
  }
  cx /= n;
  cy /= n;

  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (const auto& a : anchors) {
    const double dx = a.position.x - cx;
    const double dy = a.position.y - cy;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  const double trace = sxx + syy;
  const double det = sxx * syy - sxy * sxy;
  const double disc = std::sqrt(std::max(0.0, trace * trace / 4.0 - det));
  const double lambda_max = trace / 2.0 + disc;
  const double lambda_min = trace / 2.0 - disc;

  double z_weight = 0.0;
  double z_sum = 0.0;
  for (const auto& a : anchors) {
    const double w = 1.0 / (1.0 + a.range_m);
    z_weight += w;
    z_sum += w * a.position.z;
  }
  const double z = z_sum / z_weight;

  if (lambda_max == 0.0) {
    // Every anchor at one spot: only consistent when all of them report zero range.
    const bool all_zero = std::all_of(anchors.begin(), anchors.end(),
                                      [](const RangeAnchor& a) { return a.range_m == 0.0; });
    if (all_zero) {
      return {{cx, cy, z}, 0.0};
    }
    throw GeometryError("anchors coincide in the xy-plane");
  }
  if (lambda_min <= 1e-12 * lambda_max) {
    throw GeometryError("anchors are collinear in the xy-plane");
  }

  // |p - a_i|^2 = r_i^2, minus the same equation for anchor 0:
  //   2 (a_i - a_0) . p = |a_i|^2 - |a_0|^2 - r_i^2 + r_0^2
  const double x0 = anchors[0].position.x - cx;
  const double y0 = anchors[0].position.y - cy;
  const double r0 = anchors[0].range_m;
  double ata00 = 0.0;
  double ata01 = 0.0;
  double ata11 = 0.0;
  double atb0 = 0.0;
  double atb1 = 0.0;
  for (std::size_t i = 1; i < anchors.size(); ++i) {
    const double xi = anchors[i].position.x - cx;
    const double yi = anchors[i].position.y - cy;
    const double ri = anchors[i].range_m;
    const double row0 = 2.0 * (xi - x0);
    const double row1 = 2.0 * (yi - y0);
    const double rhs = (xi * xi + yi * yi) - (x0 * x0 + y0 * y0) - ri * ri + r0 * r0;
    ata00 += row0 * row0;
    ata01 += row0 * row1;
    ata11 += row1 * row1;
    atb0 += row0 * rhs;
    atb1 += row1 * rhs;
  }
  const double normal_det = ata00 * ata11 - ata01 * ata01;
  if (normal_det == 0.0) {
    throw GeometryError("anchors are collinear in the xy-plane");
  }
  double px = (ata11 * atb0 - ata01 * atb1) / normal_det;
  double py = (ata00 * atb1 - ata01 * atb0) / normal_det;

  const auto squared_residual = [&](double x, double y) {
    double sq = 0.0;
    for (const auto& a : anchors) {
      const double err = std::hypot(x - (a.position.x - cx), y - (a.position.y - cy)) - a.range_m;
      sq += err * err;
    }
    return sq;
  };

  // Gauss-Newton on the range residuals; the linearized solve loses accuracy
  // when the anchors are close to collinear.
  double sq = squared_residual(px, py);
  for (int iter = 0; iter < 20 && sq > 0.0; ++iter) {
    double j00 = 0.0;
    double j01 = 0.0;
    double j11 = 0.0;
    double g0 = 0.0;
    double g1 = 0.0;
    for (const auto& a : anchors) {
      const double dx = px - (a.position.x - cx);
      const double dy = py - (a.position.y - cy);
      const double d = std::hypot(dx, dy);
      if (d == 0.0) continue;
      const double ux = dx / d;
      const double uy = dy / d;
      const double err = d - a.range_m;
      j00 += ux * ux;
      j01 += ux * uy;
      j11 += uy * uy;
      g0 += ux * err;
      g1 += uy * err;
    }
    const double jdet = j00 * j11 - j01 * j01;
    if (!(jdet > 0.0)) break;
    const double nx = px - (j11 * g0 - j01 * g1) / jdet;
    const double ny = py - (j00 * g1 - j01 * g0) / jdet;
    const double next = squared_residual(nx, ny);
    if (!(next < sq)) break;
    px = nx;
    py = ny;
    sq = next;
  }
  return {{px + cx, py + cy, z}, std::sqrt(sq / n)};
}

LocalPoint trilaterate(std::span<const RangeAnchor> anchors) {
  return trilaterate_fix(anchors).position;
}

}  // namespace uavlink
