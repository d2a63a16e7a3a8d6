// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstddef>

namespace vbmsim::geometry {

// Pinhole camera model used to turn detector pixel output plus a range
// reading into metric coordinates. The camera frame has z along the optical
// axis (boresight), x to the right and y down, matching pixel axes.
struct CameraIntrinsics {
  double focal_px = 500.0;
  double u0 = 320.0, v0 = 240.0;  // principal point
  double width = 640.0, height = 480.0;

  void validate() const;
  static CameraIntrinsics default_vga();
};

struct CartesianPoint {
  double x = 0.0, y = 0.0, z = 0.0;
};

// Direction/range triple in the array frame. Angle naming follows the
// dataset's label convention: azimuth_rad is the polar angle measured off
// boresight (range [0, pi/2]), elevation_rad is the angle in the transverse
// plane (range (-pi, pi]).
struct SphericalTarget {
  double range_m = 0.0;
  double azimuth_rad = 0.0;    // theta_w, off-boresight
  double elevation_rad = 0.0;  // phi_w, in-plane

  void validate() const;
};

// Back-projects pixel (u, v) to the camera-frame point at Euclidean distance
// range_m along the pixel's ray. The result always satisfies
// |(x, y, z)| == range_m and z = sqrt(r^2 - x^2 - y^2).
CartesianPoint pixel_to_camera(double u, double v, double range_m,
                               const CameraIntrinsics& intr);

SphericalTarget cart_to_spherical(const CartesianPoint& p);
CartesianPoint spherical_to_cart(const SphericalTarget& t);

// Small 3-vector helpers shared by the scenario and blockage code.
CartesianPoint sub(const CartesianPoint& a, const CartesianPoint& b);
CartesianPoint add(const CartesianPoint& a, const CartesianPoint& b);
CartesianPoint scale(const CartesianPoint& a, double s);
CartesianPoint cross(const CartesianPoint& a, const CartesianPoint& b);
double dot(const CartesianPoint& a, const CartesianPoint& b);
double norm(const CartesianPoint& a);
CartesianPoint normalized(const CartesianPoint& a);

}  // namespace vbmsim::geometry
