// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#include "vbmsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace vbmsim::channel {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void ArrayGeometry::validate() const {
  if (nx < 1 || ny < 1) {
    throw std::invalid_argument("ArrayGeometry: element counts must be >= 1");
  }
}

void PathLossParams::validate() const {
  if (!(carrier_freq_ghz > 0.0)) {
    throw std::invalid_argument("PathLossParams: carrier frequency must be > 0");
  }
}

double path_loss_db(double range_m, const PathLossParams& p) {
  p.validate();
  if (!(range_m > 0.0)) {
    throw std::invalid_argument("path_loss_db: range must be > 0");
  }
  if (p.model == PathLossParams::Model::Normalized) return 0.0;
  return -(31.84 + 21.5 * std::log10(range_m) +
           19.0 * std::log10(p.carrier_freq_ghz));
}

CVector ula_steering(std::size_t elements, double psi) {
  if (elements < 1) {
    throw std::invalid_argument("ula_steering: need at least one element");
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(elements));
  CVector v(elements);
  for (std::size_t n = 0; n < elements; ++n) {
    v[n] = std::polar(amp, kPi * psi * static_cast<double>(n));
  }
  return v;
}

SpatialFreq angles_to_spatial(double theta_rad, double phi_rad) {
  const double st = std::sin(theta_rad);
  return {st * std::cos(phi_rad), st * std::sin(phi_rad)};
}

CVector upa_steering_psi(const ArrayGeometry& g, double psi_x, double psi_y) {
  g.validate();
  return linalg::kron(ula_steering(g.nx, psi_x), ula_steering(g.ny, psi_y));
}

CVector upa_steering(const ArrayGeometry& g, double theta_rad, double phi_rad) {
  const SpatialFreq psi = angles_to_spatial(theta_rad, phi_rad);
  return upa_steering_psi(g, psi.x, psi.y);
}

CVector upa_steering(const ArrayGeometry& g, const SphericalTarget& t) {
  return upa_steering(g, t.azimuth_rad, t.elevation_rad);
}

ChannelRealization los_channel(const ArrayGeometry& tx, const ArrayGeometry& rx,
                               const SphericalTarget& aod,
                               const SphericalTarget& aoa,
                               const PathLossParams& p, cx alpha) {
  tx.validate();
  rx.validate();
  if (!(aod.range_m > 0.0)) {
    throw std::invalid_argument("los_channel: departure range must be > 0");
  }
  ChannelRealization ch;
  ch.beta_db = path_loss_db(aod.range_m, p);
  ch.alpha = alpha;
  ch.aod = aod;
  ch.aoa = aoa;
  const double beta_lin = std::pow(10.0, ch.beta_db / 10.0);
  const CVector a_tx = upa_steering(tx, aod);
  const CVector a_rx = upa_steering(rx, aoa);
  ch.H = linalg::scale(linalg::outer(a_rx, a_tx), std::sqrt(beta_lin) * alpha);
  return ch;
}

CVector irs_ue_channel(const ArrayGeometry& g, double theta_ue_rad,
                       double phi_ue_rad, double beta_r_db) {
  g.validate();
  const double ex = std::cos(theta_ue_rad) * std::sin(phi_ue_rad);
  const double ey = std::sin(theta_ue_rad) * std::sin(phi_ue_rad);
  CVector ax(g.nx), ay(g.ny);
  for (std::size_t n = 0; n < g.nx; ++n) {
    ax[n] = std::polar(1.0, -kPi * ex * static_cast<double>(n));
  }
  for (std::size_t m = 0; m < g.ny; ++m) {
    ay[m] = std::polar(1.0, -kPi * ey * static_cast<double>(m));
  }
  CVector h = linalg::kron(ax, ay);
  const double amp = std::sqrt(std::pow(10.0, beta_r_db / 10.0));
  for (cx& v : h) v *= amp;
  return h;
}

}  // namespace vbmsim::channel
