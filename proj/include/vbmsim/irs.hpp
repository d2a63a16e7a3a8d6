// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <vector>

#include "vbmsim/channel.hpp"

namespace vbmsim::irs {

using channel::ArrayGeometry;
using channel::SphericalTarget;
using linalg::CVector;
using linalg::cx;

// Per-element reflection phases w_n; the applied coefficients e^{j w_n} are
// unit modulus by construction.
struct PhaseShiftVector {
  std::vector<double> phases;

  CVector coefficients() const;
};

// Surface-to-user channel h_r together with the transmitter-side cascade g.
// The effective link through the surface is sum_n h_r[n] e^{j w_n} g[n].
struct IrsLink {
  CVector h_r;
  CVector g;
  double beta_r_db = 0.0;

  void validate() const;
  static IrsLink with_unit_cascade(CVector h_r, double beta_r_db = 0.0);
};

// |sum_n h_r[n] e^{j w_n} g[n]|^2, the received-power factor the phase
// controller maximizes (transmit power / noise scaling applied by callers).
double link_power(const IrsLink& link, const PhaseShiftVector& psi);

// Closed-form optimum w_n = -arg(h_r[n] g[n]); attains
// (sum_n |h_r[n] g[n]|)^2. Elements with a zero cascade get w_n = 0.
PhaseShiftVector optimal_phases(const IrsLink& link);

// Steering-based channel reconstruction from an estimated user direction.
CVector reconstruct_irs_channel(const SphericalTarget& ue_est,
                                const ArrayGeometry& g_irs, double beta_r_db);

// ||h_est - h_true||^2 / ||h_true||^2.
double nmse(const CVector& h_true, const CVector& h_est);

}  // namespace vbmsim::irs
