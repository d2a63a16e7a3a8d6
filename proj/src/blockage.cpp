// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#include "vbmsim/blockage.hpp"

#include <algorithm>
#include <stdexcept>

namespace vbmsim::blockage {

void Trajectory::validate() const {
  if (positions.empty()) {
    throw std::invalid_argument("Trajectory: need at least one position");
  }
  for (std::size_t i = 1; i < positions.size(); ++i) {
    if (!(positions[i].t_s > positions[i - 1].t_s)) {
      throw std::invalid_argument(
          "Trajectory: timestamps must be strictly increasing");
    }
  }
}

void Obstacle::validate() const {
  if (!(xmax > xmin) || !(ymax > ymin)) {
    throw std::invalid_argument("Obstacle: extents must be positive");
  }
}

bool segment_intersects_rect(double x0, double y0, double x1, double y1,
                             const Obstacle& rect) {
  rect.validate();
  // slab clipping of the parameter interval [0, 1]
  double t0 = 0.0, t1 = 1.0;
  const double d[2] = {x1 - x0, y1 - y0};
  const double lo[2] = {rect.xmin, rect.ymin};
  const double hi[2] = {rect.xmax, rect.ymax};
  const double p[2] = {x0, y0};
  for (int axis = 0; axis < 2; ++axis) {
    if (d[axis] == 0.0) {
      if (p[axis] < lo[axis] || p[axis] > hi[axis]) return false;
      continue;
    }
    double ta = (lo[axis] - p[axis]) / d[axis];
    double tb = (hi[axis] - p[axis]) / d[axis];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

bool predict_blockage(const Trajectory& track, const ObstacleSet& obstacles,
                      const CartesianPoint& bs, double horizon_s) {
  track.validate();
  if (horizon_s < 0.0) {
    throw std::invalid_argument("predict_blockage: horizon must be >= 0");
  }
  double ux = track.positions.back().x;
  double uy = track.positions.back().y;
  if (track.positions.size() >= 2 && horizon_s > 0.0) {
    const TimedPosition& a = track.positions[track.positions.size() - 2];
    const TimedPosition& b = track.positions.back();
    const double dt = b.t_s - a.t_s;
    ux += (b.x - a.x) / dt * horizon_s;
    uy += (b.y - a.y) / dt * horizon_s;
  }
  for (const Obstacle& rect : obstacles.obstacles) {
    if (segment_intersects_rect(bs.x, bs.y, ux, uy, rect)) return true;
  }
  return false;
}

}  // namespace vbmsim::blockage
