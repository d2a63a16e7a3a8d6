// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#include "vbmsim/irs.hpp"

#include <cmath>
#include <stdexcept>

namespace vbmsim::irs {

CVector PhaseShiftVector::coefficients() const {
  CVector out(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i) {
    out[i] = std::polar(1.0, phases[i]);
  }
  return out;
}

void IrsLink::validate() const {
  if (h_r.empty() || h_r.size() != g.size()) {
    throw std::invalid_argument("IrsLink: h_r and g must be equal non-zero length");
  }
}

IrsLink IrsLink::with_unit_cascade(CVector h_r, double beta_r_db) {
  IrsLink link;
  link.g = CVector(h_r.size(), cx{1.0, 0.0});
  link.h_r = std::move(h_r);
  link.beta_r_db = beta_r_db;
  link.validate();
  return link;
}

double link_power(const IrsLink& link, const PhaseShiftVector& psi) {
  link.validate();
  if (psi.phases.size() != link.h_r.size()) {
    throw std::invalid_argument("link_power: phase vector length mismatch");
  }
  cx acc{0.0, 0.0};
  for (std::size_t n = 0; n < link.h_r.size(); ++n) {
    acc += link.h_r[n] * std::polar(1.0, psi.phases[n]) * link.g[n];
  }
  return std::norm(acc);
}

PhaseShiftVector optimal_phases(const IrsLink& link) {
  link.validate();
  PhaseShiftVector psi;
  psi.phases.resize(link.h_r.size());
  for (std::size_t n = 0; n < link.h_r.size(); ++n) {
    const cx cascade = link.h_r[n] * link.g[n];
    psi.phases[n] = std::abs(cascade) > 0.0 ? -std::arg(cascade) : 0.0;
  }
  return psi;
}

CVector reconstruct_irs_channel(const SphericalTarget& ue_est,
                                const ArrayGeometry& g_irs, double beta_r_db) {
  ue_est.validate();
  return channel::irs_ue_channel(g_irs, ue_est.azimuth_rad,
                                 ue_est.elevation_rad, beta_r_db);
}

double nmse(const CVector& h_true, const CVector& h_est) {
  if (h_true.size() != h_est.size()) {
    throw std::invalid_argument("nmse: length mismatch");
  }
  const double ref = linalg::norm(h_true);
  if (!(ref > 0.0)) {
    throw std::invalid_argument("nmse: zero reference channel");
  }
  CVector diff(h_true.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = h_est[i] - h_true[i];
  const double err = linalg::norm(diff);
  return (err * err) / (ref * ref);
}

}  // namespace vbmsim::irs
