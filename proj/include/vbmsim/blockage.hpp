// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <vector>

#include "vbmsim/geometry.hpp"

namespace vbmsim::blockage {

using geometry::CartesianPoint;

struct TimedPosition {
  double t_s = 0.0;
  double x = 0.0, y = 0.0;
};

// Observed ground-plane track of a device; timestamps strictly increasing.
struct Trajectory {
  std::vector<TimedPosition> positions;

  void validate() const;
};

// Axis-aligned ground-plane footprint of a blocking object.
struct Obstacle {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  void validate() const;
};

struct ObstacleSet {
  std::vector<Obstacle> obstacles;
};

// Closed-rectangle test: does the 2D segment (x0,y0)-(x1,y1) touch the box?
bool segment_intersects_rect(double x0, double y0, double x1, double y1,
                             const Obstacle& rect);

// Predicts whether the line of sight will be blocked horizon_s from now:
// linearly extrapolates the last two track positions, then tests the
// base-station-to-device segment against every obstacle footprint. A single
// position is evaluated where it stands.
bool predict_blockage(const Trajectory& track, const ObstacleSet& obstacles,
                      const CartesianPoint& bs, double horizon_s);

}  // namespace vbmsim::blockage
