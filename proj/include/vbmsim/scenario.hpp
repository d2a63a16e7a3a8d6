// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vbmsim/beamforming.hpp"
#include "vbmsim/detector.hpp"
#include "vbmsim/music.hpp"

namespace vbmsim::scenario {

using beamforming::Codebook;
using beamforming::LinkBudget;
using channel::ArrayGeometry;
using channel::ChannelRealization;
using geometry::CartesianPoint;
using geometry::SphericalTarget;

// Scheme identifiers used in configs and output files.
inline constexpr const char* kSchemeVbm = "vbm";
inline constexpr const char* kSchemeCvbm = "cvbm";
inline constexpr const char* kSchemeCodebookOd = "codebook-od";
inline constexpr const char* kSchemeCodebookIc = "codebook-ic";
inline constexpr const char* kScheme5gBm = "5g-bm";

// Full experiment configuration. Config files are "key = value" lines using
// exactly these field names; unknown keys are rejected.
struct ScenarioConfig {
  // deployment
  double area = 20.0;  // square side, meters
  CartesianPoint bs_position{0.0, 0.0, 3.0};
  double ue_height_m = 1.65;
  ArrayGeometry tx_array{8, 8};
  ArrayGeometry rx_array{2, 2};
  // link budget
  double power_w = 2.0;
  double noise_var = 0.1;
  double bandwidth_hz = 1e8;
  double packet_bits = 1e9;
  // large-scale channel
  double carrier_freq_ghz = 100.0;
  std::string path_loss_mode = "normalized";  // normalized | physical
  bool array_gain = false;  // multiply H by sqrt(M*N) (aperture gain)
  std::string fading = "rayleigh";  // rayleigh | none
  // detectors
  std::string detector_profile = "vomtc-test";   // drives vbm
  std::string baseline_profile = "effdet-test";  // drives cvbm / codebook-od
  // schemes and grid
  std::vector<std::string> baselines{kSchemeVbm, kSchemeCvbm, kSchemeCodebookOd,
                                     kSchemeCodebookIc, kScheme5gBm};
  std::size_t grid_resolution = 41;
  std::uint64_t seed = 1;
  // codebooks
  int codebook_oversampling = 4;
  int codebook_phase_bits = 8;
  std::size_t sweep_beams = 36;  // beams measured by the 5g-bm sweep
  double sweep_slot_s = 0.0075;  // per-beam slot time
  std::size_t ic_beams_per_axis = 7;
  // arrival-angle estimation
  std::size_t music_theta_points = 181;
  std::size_t music_phi_points = 181;
  std::size_t music_snapshots = 32;
  double music_snr_db = 20.0;
  // Monte Carlo sizes
  std::size_t drops = 1000;
  std::vector<std::size_t> antenna_counts{36, 64, 121, 196};
  std::vector<std::size_t> irs_element_counts{16, 36, 64, 100, 144};
  std::size_t irs_trials = 200;
  double irs_theta_max_deg = 60.0;

  LinkBudget link_budget() const {
    return {power_w, noise_var, bandwidth_hz, packet_bits};
  }
  void validate() const;
};

ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config_file(const std::string& path);
std::string serialize_config(const ScenarioConfig& cfg);

// Everything one drop needs, assembled by the Simulator (or directly by
// tests). Codebook pointers must outlive the call.
struct SchemeInputs {
  ChannelRealization ch;
  double channel_scale = 1.0;
  std::optional<SphericalTarget> detection_primary;
  std::optional<SphericalTarget> detection_baseline;
  SphericalTarget aoa_estimate;
  const Codebook* cb_tx = nullptr;     // full lattice (codebook-od snapping)
  const Codebook* cb_sweep = nullptr;  // 5g-bm sweep set
  const Codebook* cb_ic = nullptr;     // codebook-ic region lattice
  const Codebook* cb_rx = nullptr;
  ArrayGeometry tx_array, rx_array;
  LinkBudget link_budget;
};

struct SchemeOutcome {
  double rate_bps_hz = 0.0;
  bool swept = false;  // drop fell back to (or was) the sweep procedure
};

// Per-drop scheme evaluation:
//   vbm          continuous beams from the primary detection + the arrival
//                estimate; falls back to the sweep result on a miss
//   cvbm         same with the baseline detection
//   codebook-od  baseline detection snapped to the full beam lattice,
//                arrival estimate snapped to the receive codebook
//   codebook-ic  true departure direction snapped to the region lattice
//   5g-bm        exhaustive pair sweep over the sweep set
std::map<std::string, SchemeOutcome> evaluate_schemes(
    const SchemeInputs& in, const std::vector<std::string>& schemes);

class Simulator {
 public:
  explicit Simulator(ScenarioConfig cfg);

  // One user drop at ground position (x, y); all randomness comes from
  // drop_rng (fork streams: 0 fading, 1 pilots, 2 primary detector,
  // 3 baseline detector).
  std::map<std::string, SchemeOutcome> evaluate_drop(double ue_x, double ue_y,
                                                     const Rng& drop_rng) const;

  const ScenarioConfig& config() const { return cfg_; }
  const Codebook& tx_codebook() const { return cb_tx_; }
  const Codebook& rx_codebook() const { return cb_rx_; }
  const Codebook& sweep_codebook() const { return cb_sweep_; }
  const Codebook& ic_codebook() const { return cb_ic_; }

  // Truth geometry for a drop position (departure in the array frame,
  // arrival in the user frame).
  std::pair<SphericalTarget, SphericalTarget> truths(double ue_x,
                                                     double ue_y) const;

 private:
  ScenarioConfig cfg_;
  detector::DetectorProfile prof_primary_, prof_baseline_;
  Codebook cb_tx_, cb_rx_, cb_sweep_, cb_ic_;
  music::MusicGrid grid_;
  CartesianPoint bs_ax_x_, bs_ax_y_, bs_ax_z_;  // array frame axes (world)
};

struct RateMap {
  std::vector<double> xs, ys;
  std::vector<std::string> schemes;
  // rates[scheme][ix * ys.size() + iy]
  std::vector<std::vector<double>> rates;
};

RateMap run_rate_map(const ScenarioConfig& cfg);

struct MeanRates {
  std::map<std::string, double> rate;
  std::map<std::string, double> swept_fraction;
};

// Mean rates over uniformly random drops in the service area.
MeanRates run_mean_rates(const ScenarioConfig& cfg, std::size_t drops);

struct LatencyRow {
  std::size_t antennas = 0;
  std::string scheme;
  double mean_rate_bps_hz = 0.0;
  double avg_latency_s = 0.0;
};

// Latency versus transmit-array size. Aperture gain sqrt(M*N) is always
// applied here: latency trends are meaningless without it. Sweep overhead is
// charged fully to 5g-bm and per missed drop to the detector-driven schemes.
std::vector<LatencyRow> run_latency_sweep(const ScenarioConfig& cfg);

struct IrsRow {
  std::size_t elements = 0;
  std::string scheme;  // "location-aided" | "oracle-ls"
  double mean_nmse = 0.0;
};

std::vector<IrsRow> run_irs_nmse(const ScenarioConfig& cfg);

// Output writers. Byte-stable for identical inputs.
void write_rate_map_csv(const RateMap& map, std::ostream& out);
void write_latency_csv(const std::vector<LatencyRow>& rows, std::ostream& out);
void write_irs_csv(const std::vector<IrsRow>& rows, std::ostream& out);
void write_manifest(const ScenarioConfig& cfg, const std::string& command,
                    const std::vector<std::string>& outputs, std::ostream& out);

}  // namespace vbmsim::scenario
