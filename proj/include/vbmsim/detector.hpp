// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vbmsim/geometry.hpp"
#include "vbmsim/rng.hpp"

namespace vbmsim::detector {

using geometry::SphericalTarget;

// Measured operating point of an object detector: detection quality plus the
// mean absolute angular localization errors of its hits. "az" is the
// off-boresight angle, "el" the in-plane angle, matching SphericalTarget.
struct DetectorProfile {
  std::string name;
  double precision = 1.0;  // fraction in [0, 1]
  double recall = 1.0;
  double f1 = 1.0;
  double mean_abs_angle_err_az = 0.0;  // radians
  double mean_abs_angle_err_el = 0.0;

  // Range checks plus consistency of the stored F1 with 2pr/(p+r) within
  // half a percentage point.
  void validate() const;
};

// Calibrated operating points of the bundled detectors, measured on the
// VOMTC test/validation splits and the VOMTC-V2 set: the fine-tuned detector
// ("vomtc-*") and the off-the-shelf EfficientDet-D8 baseline ("effdet-*").
const std::vector<DetectorProfile>& builtin_profiles();

// Resolves a builtin by name; also accepts "perfect" (recall 1, zero error).
const DetectorProfile& profile_by_name(std::string_view name);

// Resolves a builtin name, or loads a profile file when the argument names
// an existing file instead (user-supplied detectors).
DetectorProfile resolve_profile(const std::string& name_or_path);

// One detector firing: with probability recall returns the truth perturbed
// by independent zero-mean Gaussian angle errors with sigma = mean_abs_err *
// sqrt(pi/2) (so the mean absolute error matches the profile); otherwise
// nullopt (missed). The range estimate is carried through unchanged. The
// off-boresight angle clamps to [0, pi/2], the in-plane angle wraps.
std::optional<SphericalTarget> simulate_detection(const SphericalTarget& truth,
                                                  const DetectorProfile& p,
                                                  Rng& rng);

// Profile file: one "key: value" pair per line, keys matching the field
// names, '#' comments allowed.
DetectorProfile parse_profile(std::istream& in);
DetectorProfile load_profile_file(const std::string& path);

}  // namespace vbmsim::detector
