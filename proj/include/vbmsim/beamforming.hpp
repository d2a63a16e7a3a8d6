// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "vbmsim/channel.hpp"

namespace vbmsim::beamforming {

using channel::ArrayGeometry;
using channel::ChannelRealization;
using channel::SpatialFreq;
using channel::SphericalTarget;
using linalg::CVector;
using linalg::cx;

// Unit-norm analog precoder/combiner pair.
struct Beamformer {
  CVector f;  // transmit precoder
  CVector w;  // receive combiner

  void validate() const;  // both 2-norms must equal 1 within 1e-12
};

// Pre-quantized beam lattice. Codewords are steering vectors on a uniform
// (psi_x, psi_y) grid, entry phases rounded to phase_bits bits (0 = exact),
// stored x-major: index = ix * ky + iy.
struct Codebook {
  std::vector<CVector> codewords;
  std::vector<SpatialFreq> grid;
  std::size_t kx = 0, ky = 0;
  int oversampling = 0;  // 0 when not built from an oversampled DFT lattice
  int phase_bits = 0;

  std::size_t size() const { return codewords.size(); }
  // Index of the lattice point closest to (psi_x, psi_y); spatial frequency
  // wraps with period 2, so distances are taken modulo the lattice circle.
  std::size_t nearest_index(double psi_x, double psi_y) const;
  std::size_t nearest_index(const SpatialFreq& p) const {
    return nearest_index(p.x, p.y);
  }
};

struct LinkBudget {
  double power_w = 2.0;
  double noise_var = 0.1;
  double bandwidth_hz = 1e8;
  double packet_bits = 1e9;

  void validate() const;
};

// Continuous beams aimed at the estimated departure/arrival directions.
Beamformer vbm_beamformer(const SphericalTarget& aod_est,
                          const SphericalTarget& aoa_est,
                          const ArrayGeometry& tx, const ArrayGeometry& rx);

// Oversampled DFT codebook: lattice psi = 2k/(n*O) - 1 per axis (a single
// point when the axis has one element), entry phases quantized to
// phase_bits bits and the codeword renormalized.
Codebook dft_codebook(const ArrayGeometry& g, int oversampling, int phase_bits);

// Steering codebook on an arbitrary kx-by-ky uniform lattice.
Codebook lattice_codebook(const ArrayGeometry& g, std::size_t kx,
                          std::size_t ky, int phase_bits);

// Evenly spaced per-axis subset, used as the sweep set of a larger codebook.
Codebook subsample_codebook(const Codebook& cb, std::size_t per_axis_x,
                            std::size_t per_axis_y);

struct SweepResult {
  std::size_t tx_index = 0;
  std::size_t rx_index = 0;
  double rsrp_w = 0.0;
};

// Exhaustive beam sweep: argmax over all codeword pairs of P |w^H H f|^2.
// Ties resolve to the lexicographically smallest (tx, rx) index pair.
SweepResult rsrp_sweep(const ChannelRealization& ch, const Codebook& cb_tx,
                       const Codebook& cb_rx, double power_w);

// log2(1 + P |w^H H f|^2 / (sum_j P |w^H H f_j|^2 + noise_var)).
double achievable_rate(const ChannelRealization& ch, const Beamformer& bf,
                       const LinkBudget& lb,
                       std::span<const CVector> interferers = {});

// Sum of per-user rates; interference-free by default, with an
// interference-aware variant that treats every other user's precoder as an
// interferer through the user's own channel.
double sum_rate(
    const std::vector<std::pair<ChannelRealization, Beamformer>>& users,
    const LinkBudget& lb, bool interference_aware = false);

// packet_bits / (bandwidth * mean rate) + sweep overhead.
double avg_latency(double mean_rate_bps_hz, const LinkBudget& lb,
                   double sweep_overhead_s);

// Fraction of beamforming gain lost when serving a target at (psi_x, psi_y)
// with the best codebook beam: 1 - |a(psi)^H f_best|^2.
double quantization_gain_loss(const ArrayGeometry& g, const Codebook& cb,
                              double psi_x, double psi_y);
double quantization_gain_loss(const ArrayGeometry& g, const Codebook& cb,
                              const SphericalTarget& truth);

}  // namespace vbmsim::beamforming
