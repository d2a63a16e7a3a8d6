// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <complex>
#include <cstddef>

#include "vbmsim/geometry.hpp"
#include "vbmsim/linalg.hpp"

namespace vbmsim::channel {

using linalg::CMatrix;
using linalg::CVector;
using linalg::cx;
using geometry::SphericalTarget;

// Uniform planar array with half-wavelength spacing; ny == 1 degenerates to
// a uniform linear array.
struct ArrayGeometry {
  std::size_t nx = 1, ny = 1;

  std::size_t size() const { return nx * ny; }
  void validate() const;
};

struct PathLossParams {
  enum class Model {
    Indoor3gpp,  // 31.84 + 21.5 log10(r) + 19 log10(f_c[GHz])
    Normalized,  // unit large-scale gain (0 dB)
  };

  double carrier_freq_ghz = 100.0;
  Model model = Model::Indoor3gpp;

  void validate() const;
};

// Large-scale gain beta(r) in dB (negative for a lossy link).
double path_loss_db(double range_m, const PathLossParams& p);

// (1/sqrt(L)) [1, e^{j pi psi}, ..., e^{j (L-1) pi psi}], unit 2-norm.
CVector ula_steering(std::size_t elements, double psi);

// Spatial frequencies of a physical direction on the half-wavelength lattice:
// psi_x = sin(theta) cos(phi), psi_y = sin(theta) sin(phi).
struct SpatialFreq {
  double x = 0.0, y = 0.0;
};
SpatialFreq angles_to_spatial(double theta_rad, double phi_rad);

CVector upa_steering_psi(const ArrayGeometry& g, double psi_x, double psi_y);
CVector upa_steering(const ArrayGeometry& g, double theta_rad, double phi_rad);
CVector upa_steering(const ArrayGeometry& g, const SphericalTarget& t);

// One line-of-sight channel draw: H = sqrt(beta) * alpha * a_rx a_tx^H,
// an (rx.size() x tx.size()) rank-1 matrix.
struct ChannelRealization {
  CMatrix H;
  double beta_db = 0.0;
  cx alpha{1.0, 0.0};
  SphericalTarget aod;  // at the transmitter
  SphericalTarget aoa;  // at the receiver
};

ChannelRealization los_channel(const ArrayGeometry& tx, const ArrayGeometry& rx,
                               const SphericalTarget& aod,
                               const SphericalTarget& aoa,
                               const PathLossParams& p, cx alpha);

// Reflecting-surface to user channel: sqrt(beta_r) times the surface response
// with phase-only (unnormalized) entries
//   a_x[n] = e^{-j pi n cos(theta) sin(phi)},
//   a_y[m] = e^{-j pi m sin(theta) sin(phi)}.
CVector irs_ue_channel(const ArrayGeometry& g, double theta_ue_rad,
                       double phi_ue_rad, double beta_r_db);

}  // namespace vbmsim::channel
