// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#include "vbmsim/beamforming.hpp"

#include <cmath>
#include <stdexcept>

#include "vbmsim/kernels.hpp"

namespace vbmsim::beamforming {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrapped_lattice_dist(double psi, double lattice_psi) {
  double d = std::fmod(std::abs(psi - lattice_psi), 2.0);
  return std::min(d, 2.0 - d);
}

std::size_t nearest_axis_index(double psi, std::size_t k) {
  if (k == 1) return 0;
  // lattice points 2i/k - 1; wrap with period 2
  const double pos = (psi + 1.0) * static_cast<double>(k) / 2.0;
  const long long idx = static_cast<long long>(std::llround(pos));
  const long long kk = static_cast<long long>(k);
  return static_cast<std::size_t>(((idx % kk) + kk) % kk);
}

CVector quantize_phases(const CVector& v, int phase_bits) {
  if (phase_bits <= 0) return v;
  const double step = 2.0 * kPi / std::pow(2.0, phase_bits);
  CVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    const double phase = std::round(std::arg(v[i]) / step) * step;
    out[i] = std::polar(mag, phase);
  }
  const double n = linalg::norm(out);
  for (cx& e : out) e /= n;
  return out;
}

}  // namespace

void Beamformer::validate() const {
  if (f.empty() || w.empty()) {
    throw std::invalid_argument("Beamformer: empty precoder or combiner");
  }
  if (std::abs(linalg::norm(f) - 1.0) > 1e-12 ||
      std::abs(linalg::norm(w) - 1.0) > 1e-12) {
    throw std::invalid_argument("Beamformer: vectors must be unit norm");
  }
}

void LinkBudget::validate() const {
  if (!(power_w > 0.0) || !(noise_var > 0.0) || !(bandwidth_hz > 0.0) ||
      !(packet_bits > 0.0)) {
    throw std::invalid_argument("LinkBudget: all fields must be positive");
  }
}

std::size_t Codebook::nearest_index(double psi_x, double psi_y) const {
  if (codewords.empty()) {
    throw std::invalid_argument("Codebook: empty codebook");
  }
  if (kx * ky == codewords.size() && kx > 0) {
    const std::size_t ix = nearest_axis_index(psi_x, kx);
    const std::size_t iy = nearest_axis_index(psi_y, ky);
    return ix * ky + iy;
  }
  // irregular grid (e.g. a subsampled sweep set): linear scan
  std::size_t best = 0;
  double best_d = 1e300;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double dx = wrapped_lattice_dist(psi_x, grid[i].x);
    const double dy = wrapped_lattice_dist(psi_y, grid[i].y);
    const double d = dx * dx + dy * dy;
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

Beamformer vbm_beamformer(const SphericalTarget& aod_est,
                          const SphericalTarget& aoa_est,
                          const ArrayGeometry& tx, const ArrayGeometry& rx) {
  Beamformer bf{channel::upa_steering(tx, aod_est),
                channel::upa_steering(rx, aoa_est)};
  bf.validate();
  return bf;
}

Codebook lattice_codebook(const ArrayGeometry& g, std::size_t kx,
                          std::size_t ky, int phase_bits) {
  g.validate();
  if (kx < 1 || ky < 1) {
    throw std::invalid_argument("lattice_codebook: lattice must be non-empty");
  }
  Codebook cb;
  cb.kx = kx;
  cb.ky = ky;
  cb.phase_bits = phase_bits;
  cb.codewords.reserve(kx * ky);
  cb.grid.reserve(kx * ky);
  for (std::size_t ix = 0; ix < kx; ++ix) {
    const double px = kx == 1 ? 0.0 : 2.0 * static_cast<double>(ix) / kx - 1.0;
    for (std::size_t iy = 0; iy < ky; ++iy) {
      const double py = ky == 1 ? 0.0 : 2.0 * static_cast<double>(iy) / ky - 1.0;
      cb.codewords.push_back(
          quantize_phases(channel::upa_steering_psi(g, px, py), phase_bits));
      cb.grid.push_back({px, py});
    }
  }
  return cb;
}

Codebook dft_codebook(const ArrayGeometry& g, int oversampling,
                      int phase_bits) {
  if (oversampling < 1) {
    throw std::invalid_argument("dft_codebook: oversampling must be >= 1");
  }
  // an axis with a single element carries no beam resolution
  const std::size_t kx = g.nx > 1 ? g.nx * oversampling : 1;
  const std::size_t ky = g.ny > 1 ? g.ny * oversampling : 1;
  Codebook cb = lattice_codebook(g, kx, ky, phase_bits);
  cb.oversampling = oversampling;
  return cb;
}

Codebook subsample_codebook(const Codebook& cb, std::size_t per_axis_x,
                            std::size_t per_axis_y) {
  if (per_axis_x < 1 || per_axis_x > cb.kx || per_axis_y < 1 ||
      per_axis_y > cb.ky) {
    throw std::invalid_argument("subsample_codebook: invalid per-axis counts");
  }
  Codebook out;
  out.kx = 0;  // irregular subset; nearest_index falls back to a scan
  out.ky = 0;
  out.oversampling = cb.oversampling;
  out.phase_bits = cb.phase_bits;
  for (std::size_t jx = 0; jx < per_axis_x; ++jx) {
    const std::size_t ix = static_cast<std::size_t>(
        std::llround((jx + 0.5) * static_cast<double>(cb.kx) / per_axis_x - 0.5));
    for (std::size_t jy = 0; jy < per_axis_y; ++jy) {
      const std::size_t iy = static_cast<std::size_t>(std::llround(
          (jy + 0.5) * static_cast<double>(cb.ky) / per_axis_y - 0.5));
      const std::size_t idx = ix * cb.ky + iy;
      out.codewords.push_back(cb.codewords[idx]);
      out.grid.push_back(cb.grid[idx]);
    }
  }
  return out;
}

SweepResult rsrp_sweep(const ChannelRealization& ch, const Codebook& cb_tx,
                       const Codebook& cb_rx, double power_w) {
  if (cb_tx.codewords.empty() || cb_rx.codewords.empty()) {
    throw std::invalid_argument("rsrp_sweep: empty codebook");
  }
  SweepResult best;
  best.rsrp_w = -1.0;
  for (std::size_t fi = 0; fi < cb_tx.size(); ++fi) {
    const CVector v = linalg::matvec(ch.H, cb_tx.codewords[fi]);
    for (std::size_t wi = 0; wi < cb_rx.size(); ++wi) {
      const cx rx = kernels::dotc(cb_rx.codewords[wi].data(), v.data(), v.size());
      const double rsrp = power_w * std::norm(rx);
      if (rsrp > best.rsrp_w) {
        best = {fi, wi, rsrp};
      }
    }
  }
  return best;
}

double achievable_rate(const ChannelRealization& ch, const Beamformer& bf,
                       const LinkBudget& lb,
                       std::span<const CVector> interferers) {
  lb.validate();
  const CVector v = linalg::matvec(ch.H, bf.f);
  const double signal =
      lb.power_w * std::norm(kernels::dotc(bf.w.data(), v.data(), v.size()));
  double interference = 0.0;
  for (const CVector& fj : interferers) {
    const CVector vj = linalg::matvec(ch.H, fj);
    interference +=
        lb.power_w * std::norm(kernels::dotc(bf.w.data(), vj.data(), vj.size()));
  }
  return std::log2(1.0 + signal / (interference + lb.noise_var));
}

double sum_rate(
    const std::vector<std::pair<ChannelRealization, Beamformer>>& users,
    const LinkBudget& lb, bool interference_aware) {
  if (users.empty()) {
    throw std::invalid_argument("sum_rate: need at least one user");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < users.size(); ++k) {
    std::vector<CVector> others;
    if (interference_aware) {
      for (std::size_t j = 0; j < users.size(); ++j) {
        if (j != k) others.push_back(users[j].second.f);
      }
    }
    total += achievable_rate(users[k].first, users[k].second, lb, others);
  }
  return total;
}

double avg_latency(double mean_rate_bps_hz, const LinkBudget& lb,
                   double sweep_overhead_s) {
  lb.validate();
  if (!(mean_rate_bps_hz > 0.0)) {
    throw std::invalid_argument("avg_latency: rate must be > 0 (outage)");
  }
  return lb.packet_bits / (lb.bandwidth_hz * mean_rate_bps_hz) +
         sweep_overhead_s;
}

double quantization_gain_loss(const ArrayGeometry& g, const Codebook& cb,
                              double psi_x, double psi_y) {
  const CVector a = channel::upa_steering_psi(g, psi_x, psi_y);
  double best = 0.0;
  for (const CVector& f : cb.codewords) {
    best = std::max(best, std::norm(kernels::dotc(a.data(), f.data(), f.size())));
  }
  return 1.0 - best;
}

double quantization_gain_loss(const ArrayGeometry& g, const Codebook& cb,
                              const SphericalTarget& truth) {
  const SpatialFreq p =
      channel::angles_to_spatial(truth.azimuth_rad, truth.elevation_rad);
  return quantization_gain_loss(g, cb, p.x, p.y);
}

}  // namespace vbmsim::beamforming
