// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "vbmsim/detector.hpp"

using namespace vbmsim;
using detector::DetectorProfile;
using geometry::SphericalTarget;

TEST_CASE("builtin profiles carry the measured operating points") {
  const auto& profiles = detector::builtin_profiles();
  REQUIRE(profiles.size() == 6);

  const DetectorProfile& test = detector::profile_by_name("vomtc-test");
  CHECK(test.precision == 0.9446);
  CHECK(test.recall == 0.8104);
  CHECK(test.f1 == 0.8724);
  CHECK(test.mean_abs_angle_err_az == 0.0804);
  CHECK(test.mean_abs_angle_err_el == 0.0804);

  const DetectorProfile& base = detector::profile_by_name("effdet-test");
  CHECK(base.precision == 0.9417);
  CHECK(base.recall == 0.7678);
  CHECK(base.f1 == 0.8459);
  CHECK(base.mean_abs_angle_err_az == 0.0972);
  CHECK(base.mean_abs_angle_err_el == 0.0973);

  const DetectorProfile& val = detector::profile_by_name("vomtc-val");
  CHECK(val.precision == 0.9074);
  CHECK(val.recall == 0.7070);
  CHECK(val.f1 == 0.7948);
  CHECK(val.mean_abs_angle_err_az == 0.1212);
  CHECK(val.mean_abs_angle_err_el == 0.1208);

  const DetectorProfile& bval = detector::profile_by_name("effdet-val");
  CHECK(bval.precision == 0.9010);
  CHECK(bval.recall == 0.6670);
  CHECK(bval.f1 == 0.7666);
  CHECK(bval.mean_abs_angle_err_az == 0.1371);
  CHECK(bval.mean_abs_angle_err_el == 0.1365);

  const DetectorProfile& v2 = detector::profile_by_name("vomtc-v2");
  CHECK(v2.precision == 0.9493);
  CHECK(v2.recall == 0.7616);
  CHECK(v2.f1 == 0.8452);
  CHECK(v2.mean_abs_angle_err_az == 0.0977);
  CHECK(v2.mean_abs_angle_err_el == 0.0987);

  const DetectorProfile& bv2 = detector::profile_by_name("effdet-v2");
  CHECK(bv2.precision == 0.9403);
  CHECK(bv2.recall == 0.7325);
  CHECK(bv2.f1 == 0.8235);
  CHECK(bv2.mean_abs_angle_err_az == 0.1094);
  CHECK(bv2.mean_abs_angle_err_el == 0.1102);

  CHECK_THROWS_AS(detector::profile_by_name("nope"), std::invalid_argument);
}

TEST_CASE("degenerate profiles") {
  const SphericalTarget truth{5.0, 0.8, 1.0};
  {
    const DetectorProfile& perfect = detector::profile_by_name("perfect");
    Rng rng(1);
    for (int t = 0; t < 100; ++t) {
      const auto est = detector::simulate_detection(truth, perfect, rng);
      REQUIRE(est.has_value());
      CHECK(est->azimuth_rad == truth.azimuth_rad);
      CHECK(est->elevation_rad == truth.elevation_rad);
      CHECK(est->range_m == truth.range_m);
    }
  }
  {
    DetectorProfile blind{"blind", 1.0, 0.0, 0.0, 0.0, 0.0};
    Rng rng(2);
    for (int t = 0; t < 100; ++t) {
      CHECK_FALSE(detector::simulate_detection(truth, blind, rng).has_value());
    }
  }
}

TEST_CASE("same seed replays the same detections") {
  const SphericalTarget truth{5.0, 0.8, 1.0};
  const DetectorProfile& p = detector::profile_by_name("vomtc-test");
  Rng a(77), b(77);
  for (int t = 0; t < 200; ++t) {
    const auto ea = detector::simulate_detection(truth, p, a);
    const auto eb = detector::simulate_detection(truth, p, b);
    REQUIRE(ea.has_value() == eb.has_value());
    if (ea) {
      CHECK(ea->azimuth_rad == eb->azimuth_rad);
      CHECK(ea->elevation_rad == eb->elevation_rad);
    }
  }
}

TEST_CASE("detection statistics calibrate to the profile") {
  const SphericalTarget truth{5.0, 0.8, 1.0};
  const DetectorProfile& p = detector::profile_by_name("vomtc-test");
  Rng rng(123);
  const int n = 100000;
  int detected = 0;
  double abs_az = 0.0, abs_el = 0.0;
  for (int t = 0; t < n; ++t) {
    const auto est = detector::simulate_detection(truth, p, rng);
    if (!est) continue;
    ++detected;
    abs_az += std::abs(est->azimuth_rad - truth.azimuth_rad);
    abs_el += std::abs(est->elevation_rad - truth.elevation_rad);
  }
  const double frac = static_cast<double>(detected) / n;
  CHECK(std::abs(frac - p.recall) <= 0.01);  // 1 - recall miss frequency
  CHECK(std::abs(abs_az / detected - p.mean_abs_angle_err_az) <=
        0.02 * p.mean_abs_angle_err_az);
  CHECK(std::abs(abs_el / detected - p.mean_abs_angle_err_el) <=
        0.02 * p.mean_abs_angle_err_el);
}

TEST_CASE("profile file parsing") {
  std::istringstream good(
      "name: custom\n"
      "precision: 0.9446\n"
      "recall: 0.8104\n"
      "f1: 0.8724\n"
      "mean_abs_angle_err_az: 0.0804\n"
      "mean_abs_angle_err_el: 0.0804\n");
  const DetectorProfile p = detector::parse_profile(good);
  CHECK(p.name == "custom");
  CHECK(p.recall == 0.8104);

  std::istringstream inconsistent(
      "name: bad\nprecision: 0.9\nrecall: 0.5\nf1: 0.9\n"
      "mean_abs_angle_err_az: 0\nmean_abs_angle_err_el: 0\n");
  CHECK_THROWS_AS(detector::parse_profile(inconsistent), std::invalid_argument);

  std::istringstream unknown(
      "name: x\nprecision: 1\nrecall: 1\nf1: 1\n"
      "mean_abs_angle_err_az: 0\nmean_abs_angle_err_el: 0\nwhat: 3\n");
  CHECK_THROWS_AS(detector::parse_profile(unknown), std::invalid_argument);

  std::istringstream missing("name: x\nprecision: 1\n");
  CHECK_THROWS_AS(detector::parse_profile(missing), std::invalid_argument);
}
