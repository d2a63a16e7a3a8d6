// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#include "vbmsim/detector.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vbmsim::detector {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Wrap into (-pi, pi]. Inputs sit within one period of the range (small
// perturbations of an in-range angle), so a single step suffices and
// already-in-range values pass through bit-exactly.
double wrap_pi(double a) {
  if (a > kPi) return a - 2.0 * kPi;
  if (a <= -kPi) return a + 2.0 * kPi;
  return a;
}
}  // namespace

void DetectorProfile::validate() const {
  auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in01(precision) || !in01(recall) || !in01(f1)) {
    throw std::invalid_argument(
        "DetectorProfile: precision/recall/f1 must lie in [0, 1]");
  }
  if (mean_abs_angle_err_az < 0.0 || mean_abs_angle_err_el < 0.0) {
    throw std::invalid_argument("DetectorProfile: angle errors must be >= 0");
  }
  if (precision + recall > 0.0) {
    const double implied = 2.0 * precision * recall / (precision + recall);
    if (std::abs(implied - f1) > 0.005) {
      throw std::invalid_argument(
          "DetectorProfile: stored F1 inconsistent with precision/recall");
    }
  }
}

const std::vector<DetectorProfile>& builtin_profiles() {
  static const std::vector<DetectorProfile> profiles = [] {
    std::vector<DetectorProfile> v{
        {"vomtc-test", 0.9446, 0.8104, 0.8724, 0.0804, 0.0804},
        {"effdet-test", 0.9417, 0.7678, 0.8459, 0.0972, 0.0973},
        {"vomtc-val", 0.9074, 0.7070, 0.7948, 0.1212, 0.1208},
        {"effdet-val", 0.9010, 0.6670, 0.7666, 0.1371, 0.1365},
        {"vomtc-v2", 0.9493, 0.7616, 0.8452, 0.0977, 0.0987},
        {"effdet-v2", 0.9403, 0.7325, 0.8235, 0.1094, 0.1102},
    };
    for (const DetectorProfile& p : v) p.validate();
    return v;
  }();
  return profiles;
}

const DetectorProfile& profile_by_name(std::string_view name) {
  if (name == "perfect") {
    static const DetectorProfile perfect{"perfect", 1.0, 1.0, 1.0, 0.0, 0.0};
    return perfect;
  }
  for (const DetectorProfile& p : builtin_profiles()) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("unknown detector profile: " + std::string(name));
}

std::optional<SphericalTarget> simulate_detection(const SphericalTarget& truth,
                                                  const DetectorProfile& p,
                                                  Rng& rng) {
  p.validate();
  if (rng.uniform() >= p.recall) return std::nullopt;
  const double sigma_az = p.mean_abs_angle_err_az * std::sqrt(kPi / 2.0);
  const double sigma_el = p.mean_abs_angle_err_el * std::sqrt(kPi / 2.0);
  SphericalTarget est = truth;
  est.azimuth_rad =
      std::clamp(truth.azimuth_rad + sigma_az * rng.gaussian(), 0.0, kPi / 2);
  est.elevation_rad = wrap_pi(truth.elevation_rad + sigma_el * rng.gaussian());
  est.validate();
  return est;
}

DetectorProfile parse_profile(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw std::invalid_argument("profile: malformed line: " + line);
      }
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    kv[trim(line.substr(0, colon))] = trim(line.substr(colon + 1));
  }
  DetectorProfile p;
  auto number = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw std::invalid_argument("profile: missing key: " + key);
    }
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) {
      throw std::invalid_argument("profile: bad number for " + key);
    }
    kv.erase(it);
    return v;
  };
  if (auto it = kv.find("name"); it != kv.end()) {
    p.name = it->second;
    kv.erase(it);
  } else {
    throw std::invalid_argument("profile: missing key: name");
  }
  p.precision = number("precision");
  p.recall = number("recall");
  p.f1 = number("f1");
  p.mean_abs_angle_err_az = number("mean_abs_angle_err_az");
  p.mean_abs_angle_err_el = number("mean_abs_angle_err_el");
  if (!kv.empty()) {
    throw std::invalid_argument("profile: unknown key: " + kv.begin()->first);
  }
  p.validate();
  return p;
}

DetectorProfile load_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open profile file: " + path);
  }
  return parse_profile(in);
}

}  // namespace vbmsim::detector
