// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#include "vbmsim/music.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "vbmsim/kernels.hpp"

namespace vbmsim::music {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Null spectrum is exactly zero at this level; the grid point already is the
// minimizer and interpolation around a machine-precision null is meaningless.
constexpr double kExactNullFloor = 1e-15;
}  // namespace

void SnapshotSet::validate() const {
  if (snapshots.empty()) {
    throw std::invalid_argument("SnapshotSet: need at least one snapshot");
  }
  const std::size_t n = snapshots.front().size();
  for (const CVector& s : snapshots) {
    if (s.size() != n) {
      throw std::invalid_argument("SnapshotSet: non-uniform snapshot length");
    }
  }
}

void MusicGrid::validate() const {
  if (theta.empty() || phi.empty()) {
    throw std::invalid_argument("MusicGrid: empty lattice");
  }
  for (std::size_t i = 1; i < theta.size(); ++i) {
    if (!(theta[i] > theta[i - 1])) {
      throw std::invalid_argument("MusicGrid: theta must be strictly increasing");
    }
  }
  for (std::size_t i = 1; i < phi.size(); ++i) {
    if (!(phi[i] > phi[i - 1])) {
      throw std::invalid_argument("MusicGrid: phi must be strictly increasing");
    }
  }
}

double MusicGrid::theta_step() const {
  return theta.size() > 1 ? theta[1] - theta[0] : 0.0;
}

double MusicGrid::phi_step() const {
  return phi.size() > 1 ? phi[1] - phi[0] : 0.0;
}

MusicGrid MusicGrid::front_hemisphere(std::size_t theta_points,
                                      std::size_t phi_points) {
  MusicGrid g;
  g.theta.resize(theta_points);
  g.phi.resize(phi_points);
  for (std::size_t i = 0; i < theta_points; ++i) {
    g.theta[i] = (kPi / 2) * static_cast<double>(i) / (theta_points - 1);
  }
  for (std::size_t i = 0; i < phi_points; ++i) {
    g.phi[i] = -kPi + 2.0 * kPi * static_cast<double>(i) / (phi_points - 1);
  }
  return g;
}

SnapshotSet simulate_snapshots(const SphericalTarget& aoa,
                               const ArrayGeometry& rx, double snr_db,
                               std::size_t count, Rng& rng) {
  if (count < 1) {
    throw std::invalid_argument("simulate_snapshots: need count >= 1");
  }
  const CVector a = channel::upa_steering(rx, aoa);
  const std::size_t n = a.size();
  // SNR (total over the array): E||a s||^2 / E||n||^2 = 1 / (N sigma^2).
  const double sigma2 =
      std::isinf(snr_db) ? 0.0
                         : std::pow(10.0, -snr_db / 10.0) / static_cast<double>(n);
  const double noise_amp = std::sqrt(sigma2);
  SnapshotSet out;
  out.snapshots.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    const linalg::cx s = rng.cn01();
    CVector y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = a[i] * s + noise_amp * rng.cn01();
    }
    out.snapshots.push_back(std::move(y));
  }
  return out;
}

CMatrix sample_covariance(const SnapshotSet& s) {
  s.validate();
  const std::size_t n = s.snapshots.front().size();
  CMatrix r(n, n);
  for (const CVector& y : s.snapshots) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        r(i, j) += y[i] * std::conj(y[j]);
      }
    }
  }
  const double inv_t = 1.0 / static_cast<double>(s.count());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r(i, j) *= inv_t;
  }
  return r;
}

namespace {

// Null-spectrum value ||E_n^H a||^2 at a direction.
double null_spectrum(const std::vector<CVector>& noise_basis,
                     const ArrayGeometry& rx, double theta, double phi) {
  const CVector a = channel::upa_steering(rx, theta, phi);
  double g = 0.0;
  for (const CVector& e : noise_basis) {
    g += std::norm(kernels::dotc(e.data(), a.data(), a.size()));
  }
  return g;
}

// Vertex offset of the parabola through (-1, gl), (0, gc), (+1, gr), clamped
// to one step; 0 when the three points hold no proper minimum.
double parabolic_offset(double gl, double gc, double gr) {
  const double denom = gl - 2.0 * gc + gr;
  if (!(denom > 0.0)) return 0.0;
  const double delta = 0.5 * (gl - gr) / denom;
  return std::clamp(delta, -1.0, 1.0);
}

}  // namespace

SphericalTarget estimate_aoa(const CMatrix& r, const ArrayGeometry& rx,
                             const MusicGrid& grid) {
  grid.validate();
  rx.validate();
  const std::size_t n = rx.size();
  if (r.rows() != n || r.cols() != n) {
    throw std::invalid_argument("estimate_aoa: covariance size mismatch");
  }
  if (n < 2) {
    throw std::invalid_argument("estimate_aoa: need at least two elements");
  }
  const linalg::EigResult eig = linalg::hermitian_eig(r);
  const double lam_max = eig.values.back();
  const double lam_min = eig.values.front();
  if (lam_max - lam_min <= 1e-9 * std::max(lam_max, 1e-300)) {
    throw std::invalid_argument(
        "estimate_aoa: degenerate covariance, no signal subspace");
  }
  std::vector<CVector> noise_basis;
  noise_basis.reserve(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    noise_basis.push_back(eig.vectors.column(k));
  }

  std::size_t best_i = 0, best_j = 0;
  double best_g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.theta.size(); ++i) {
    for (std::size_t j = 0; j < grid.phi.size(); ++j) {
      const double g = null_spectrum(noise_basis, rx, grid.theta[i], grid.phi[j]);
      if (g < best_g) {
        best_g = g;
        best_i = i;
        best_j = j;
      }
    }
  }

  double theta = grid.theta[best_i];
  double phi = grid.phi[best_j];
  if (best_g > kExactNullFloor) {
    if (best_i > 0 && best_i + 1 < grid.theta.size()) {
      const double gl =
          null_spectrum(noise_basis, rx, grid.theta[best_i - 1], phi);
      const double gr =
          null_spectrum(noise_basis, rx, grid.theta[best_i + 1], phi);
      theta += parabolic_offset(gl, best_g, gr) *
               (grid.theta[best_i + 1] - grid.theta[best_i]);
    }
    if (best_j > 0 && best_j + 1 < grid.phi.size()) {
      const double gl =
          null_spectrum(noise_basis, rx, grid.theta[best_i], grid.phi[best_j - 1]);
      const double gr =
          null_spectrum(noise_basis, rx, grid.theta[best_i], grid.phi[best_j + 1]);
      phi += parabolic_offset(gl, best_g, gr) *
             (grid.phi[best_j + 1] - grid.phi[best_j]);
    }
  }

  SphericalTarget est;
  est.range_m = 1.0;
  est.azimuth_rad = std::clamp(theta, 0.0, kPi / 2);
  est.elevation_rad = std::clamp(phi, std::nextafter(-kPi, 0.0), kPi);
  est.validate();
  return est;
}

}  // namespace vbmsim::music
