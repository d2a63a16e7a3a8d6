// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstddef>
#include <vector>

#include "vbmsim/channel.hpp"
#include "vbmsim/rng.hpp"

namespace vbmsim::music {

using channel::ArrayGeometry;
using channel::SphericalTarget;
using linalg::CMatrix;
using linalg::CVector;

struct SnapshotSet {
  std::vector<CVector> snapshots;  // uniform length, one per pilot symbol

  std::size_t count() const { return snapshots.size(); }
  void validate() const;
};

// Angular search lattice. Both axes strictly increasing.
struct MusicGrid {
  std::vector<double> theta;  // off-boresight, [0, pi/2]
  std::vector<double> phi;    // in-plane, [-pi, pi]

  void validate() const;
  double theta_step() const;
  double phi_step() const;
  // 181 x 181 lattice over the front hemisphere.
  static MusicGrid front_hemisphere(std::size_t theta_points = 181,
                                    std::size_t phi_points = 181);
};

// y_t = a(aoa) s_t + n_t with unit-power symbols; snr_db is the ratio of
// total signal power to total noise power across the array. snr_db may be
// +infinity for noiseless pilots.
SnapshotSet simulate_snapshots(const SphericalTarget& aoa,
                               const ArrayGeometry& rx, double snr_db,
                               std::size_t count, Rng& rng);

// (1/T) sum_t y_t y_t^H; Hermitian positive semidefinite.
CMatrix sample_covariance(const SnapshotSet& s);

// Single-source MUSIC: the noise subspace spans the N-1 smallest eigenpairs
// of R; the returned direction maximizes 1 / ||E_n^H a(theta, phi)||^2 over
// the grid, with one 3-point parabolic refinement per axis. Ties resolve to
// the lowest grid index. The returned range is 1 (angles-only estimate).
SphericalTarget estimate_aoa(const CMatrix& r, const ArrayGeometry& rx,
                             const MusicGrid& grid);

}  // namespace vbmsim::music
