// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#include "vbmsim/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace vbmsim::geometry {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void CameraIntrinsics::validate() const {
  if (!(focal_px > 0.0)) {
    throw std::invalid_argument("CameraIntrinsics: focal length must be > 0");
  }
  if (!(width > 0.0) || !(height > 0.0)) {
    throw std::invalid_argument("CameraIntrinsics: image size must be > 0");
  }
  if (u0 < 0.0 || u0 > width || v0 < 0.0 || v0 > height) {
    throw std::invalid_argument(
        "CameraIntrinsics: principal point outside the image");
  }
}

CameraIntrinsics CameraIntrinsics::default_vga() { return CameraIntrinsics{}; }

void SphericalTarget::validate() const {
  if (!(range_m >= 0.0) || !std::isfinite(range_m)) {
    throw std::invalid_argument("SphericalTarget: range must be >= 0");
  }
  if (!(azimuth_rad >= 0.0) || !(azimuth_rad <= kPi / 2 + 1e-12)) {
    throw std::invalid_argument(
        "SphericalTarget: off-boresight angle outside [0, pi/2]");
  }
  if (!(elevation_rad > -kPi - 1e-12) || !(elevation_rad <= kPi + 1e-12)) {
    throw std::invalid_argument(
        "SphericalTarget: in-plane angle outside (-pi, pi]");
  }
}

CartesianPoint pixel_to_camera(double u, double v, double range_m,
                               const CameraIntrinsics& intr) {
  intr.validate();
  if (!(range_m > 0.0)) {
    throw std::invalid_argument("pixel_to_camera: range must be > 0");
  }
  const double du = u - intr.u0;
  const double dv = v - intr.v0;
  const double denom = std::sqrt(du * du + dv * dv + intr.focal_px * intr.focal_px);
  const double s = range_m / denom;
  CartesianPoint p{du * s, dv * s, intr.focal_px * s};
  if (std::hypot(p.x, p.y) > range_m * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "pixel_to_camera: lateral offset exceeds range");
  }
  return p;
}

SphericalTarget cart_to_spherical(const CartesianPoint& p) {
  const double r = norm(p);
  if (!(r > 0.0)) {
    throw std::invalid_argument("cart_to_spherical: zero vector");
  }
  const double lateral = std::hypot(p.x, p.y);
  SphericalTarget t;
  t.range_m = r;
  t.azimuth_rad = std::atan2(lateral, p.z);
  t.elevation_rad = (p.x == 0.0 && p.y == 0.0) ? 0.0 : std::atan2(p.y, p.x);
  t.validate();
  return t;
}

CartesianPoint spherical_to_cart(const SphericalTarget& t) {
  t.validate();
  const double st = std::sin(t.azimuth_rad);
  const double ct = std::cos(t.azimuth_rad);
  return {t.range_m * st * std::cos(t.elevation_rad),
          t.range_m * st * std::sin(t.elevation_rad), t.range_m * ct};
}

CartesianPoint sub(const CartesianPoint& a, const CartesianPoint& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

CartesianPoint add(const CartesianPoint& a, const CartesianPoint& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}

CartesianPoint scale(const CartesianPoint& a, double s) {
  return {a.x * s, a.y * s, a.z * s};
}

CartesianPoint cross(const CartesianPoint& a, const CartesianPoint& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
          a.x * b.y - a.y * b.x};
}

double dot(const CartesianPoint& a, const CartesianPoint& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

double norm(const CartesianPoint& a) { return std::sqrt(dot(a, a)); }

CartesianPoint normalized(const CartesianPoint& a) {
  const double n = norm(a);
  if (!(n > 0.0)) {
    throw std::invalid_argument("normalized: zero vector");
  }
  return scale(a, 1.0 / n);
}

}  // namespace vbmsim::geometry
