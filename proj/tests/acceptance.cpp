// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checks. Each numbered criterion prints exactly one
// PASS/FAIL line; the exit code is the number of failures. argv[1] must be
// the path of the command-line binary (used by the determinism check).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "vbmsim/beamforming.hpp"
#include "vbmsim/dataset.hpp"
#include "vbmsim/detector.hpp"
#include "vbmsim/irs.hpp"
#include "vbmsim/music.hpp"
#include "vbmsim/scenario.hpp"

using namespace vbmsim;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

void run_criterion(int index, const std::string& title,
                   const std::function<std::pair<bool, std::string>()>& body) {
  bool pass = false;
  std::string detail;
  try {
    auto [ok, msg] = body();
    pass = ok;
    detail = msg;
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  std::printf("criterion %2d %s  %s%s%s\n", index, pass ? "PASS" : "FAIL",
              title.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

// ---------------------------------------------------------------- 1
std::pair<bool, std::string> path_loss_golden() {
  channel::PathLossParams p1{1.0, channel::PathLossParams::Model::Indoor3gpp};
  const double a = channel::path_loss_db(1.0, p1);
  channel::PathLossParams p100{100.0, channel::PathLossParams::Model::Indoor3gpp};
  const double b = channel::path_loss_db(10.0, p100);
  const bool ok = a == -31.84 && std::abs(b - (-91.34)) <= 0.01;
  std::ostringstream msg;
  msg << "beta(1m,1GHz)=" << a << " beta(10m,100GHz)=" << b;
  return {ok, msg.str()};
}

// ---------------------------------------------------------------- 2
std::pair<bool, std::string> sweep_oracle() {
  Rng rng(2024);
  const beamforming::Codebook tx = beamforming::dft_codebook({4, 4}, 2, 8);
  const beamforming::Codebook rx = beamforming::dft_codebook({2, 2}, 2, 8);
  for (int trial = 0; trial < 100; ++trial) {
    channel::ChannelRealization ch;
    ch.H = linalg::CMatrix(4, 16);
    Rng r = rng.fork(trial);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 16; ++j) ch.H(i, j) = r.cn01();
    }
    const auto got = beamforming::rsrp_sweep(ch, tx, rx, 2.0);
    // independent brute force in plain complex arithmetic
    std::size_t bf = 0, bw = 0;
    double best = -1.0;
    for (std::size_t fi = 0; fi < tx.codewords.size(); ++fi) {
      for (std::size_t wi = 0; wi < rx.codewords.size(); ++wi) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t rr = 0; rr < 4; ++rr) {
          std::complex<double> row{0.0, 0.0};
          for (std::size_t cc = 0; cc < 16; ++cc) {
            row += ch.H(rr, cc) * tx.codewords[fi][cc];
          }
          acc += std::conj(rx.codewords[wi][rr]) * row;
        }
        const double rsrp = 2.0 * std::norm(acc);
        if (rsrp > best) {
          best = rsrp;
          bf = fi;
          bw = wi;
        }
      }
    }
    if (got.tx_index != bf || got.rx_index != bw ||
        std::abs(got.rsrp_w - best) > 1e-10 * std::max(1.0, best)) {
      return {false, "sweep diverged from brute force at trial " +
                         std::to_string(trial)};
    }
  }
  return {true, "100 random channels, 64x16 codebooks"};
}

// ---------------------------------------------------------------- 3
std::pair<bool, std::string> scheme_ordering() {
  scenario::ScenarioConfig cfg;  // defaults: test-split profiles, normalized
  const scenario::MeanRates mr = scenario::run_mean_rates(cfg, 1000);
  const double vbm = mr.rate.at(scenario::kSchemeVbm);
  const double cvbm = mr.rate.at(scenario::kSchemeCvbm);
  const double od = mr.rate.at(scenario::kSchemeCodebookOd);
  const double ic = mr.rate.at(scenario::kSchemeCodebookIc);
  const double bm5g = mr.rate.at(scenario::kScheme5gBm);
  const double improvement = vbm / bm5g - 1.0;
  const bool ordered = vbm > cvbm && cvbm > od && od > ic && ic > bm5g;
  const bool in_band = improvement >= 0.10 && improvement <= 0.80;
  std::ostringstream msg;
  msg.precision(4);
  msg << "means " << vbm << " > " << cvbm << " > " << od << " > " << ic
      << " > " << bm5g << ", vbm/5g-bm +" << improvement * 100.0 << "%";
  return {ordered && in_band, msg.str()};
}

// ---------------------------------------------------------------- 4
std::pair<bool, std::string> latency_trends() {
  scenario::ScenarioConfig cfg;
  cfg.drops = 500;
  const auto rows = scenario::run_latency_sweep(cfg);
  std::vector<double> vbm_lat, bm5g_lat;
  for (const auto& r : rows) {
    if (r.scheme == scenario::kSchemeVbm) vbm_lat.push_back(r.avg_latency_s);
    if (r.scheme == scenario::kScheme5gBm) bm5g_lat.push_back(r.avg_latency_s);
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < vbm_lat.size(); ++i) {
    decreasing = decreasing && vbm_lat[i] < vbm_lat[i - 1];
  }
  bool dominated = true;
  for (std::size_t i = 0; i < vbm_lat.size(); ++i) {
    dominated = dominated && bm5g_lat[i] > vbm_lat[i];
  }
  std::ostringstream msg;
  msg.precision(4);
  msg << "vbm latency";
  for (double l : vbm_lat) msg << " " << l;
  msg << " s; 5g-bm";
  for (double l : bm5g_lat) msg << " " << l;
  msg << " s";
  return {decreasing && dominated, msg.str()};
}

// ---------------------------------------------------------------- 5
std::pair<bool, std::string> quantization_loss() {
  const channel::ArrayGeometry g{32, 1};
  const beamforming::Codebook cb1 = beamforming::dft_codebook(g, 1, 8);
  // worst case over a fine scan of one beam cell
  double worst = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double psi = cb1.grid[16].x + (k / 100.0) * (2.0 / 32.0);
    worst = std::max(worst,
                     beamforming::quantization_gain_loss(g, cb1, psi, 0.0));
  }
  const beamforming::Codebook cb2 = beamforming::dft_codebook(g, 2, 8);
  const beamforming::Codebook cb4 = beamforming::dft_codebook(g, 4, 8);
  Rng rng(5);
  double l1 = 0.0, l2 = 0.0, l4 = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double psi = rng.uniform(-1.0, 1.0);
    l1 += beamforming::quantization_gain_loss(g, cb1, psi, 0.0);
    l2 += beamforming::quantization_gain_loss(g, cb2, psi, 0.0);
    l4 += beamforming::quantization_gain_loss(g, cb4, psi, 0.0);
  }
  const bool ok = worst >= 0.2 && l1 >= l2 && l2 >= l4;
  std::ostringstream msg;
  msg.precision(4);
  msg << "worst in-cell loss " << worst << ", mean loss by oversampling "
      << l1 / 100 << " >= " << l2 / 100 << " >= " << l4 / 100;
  return {ok, msg.str()};
}

// ---------------------------------------------------------------- 6
std::pair<bool, std::string> music_recovery() {
  const channel::ArrayGeometry rx{2, 2};
  const music::MusicGrid grid = music::MusicGrid::front_hemisphere(181, 181);
  int exact = 0;
  for (int t = 0; t < 100; ++t) {
    Rng rng(4000 + t);
    const std::size_t ti =
        10 + static_cast<std::size_t>(rng.uniform(0.0, 160.0));
    const std::size_t pj =
        5 + static_cast<std::size_t>(rng.uniform(0.0, 170.0));
    const geometry::SphericalTarget truth{1.0, grid.theta[ti], grid.phi[pj]};
    Rng rng_snap = rng.fork(1);
    const music::SnapshotSet s = music::simulate_snapshots(
        truth, rx, std::numeric_limits<double>::infinity(), 16, rng_snap);
    const auto est = music::estimate_aoa(music::sample_covariance(s), rx, grid);
    if (est.azimuth_rad == truth.azimuth_rad &&
        est.elevation_rad == truth.elevation_rad) {
      ++exact;
    }
  }
  int close = 0;
  for (int t = 0; t < 200; ++t) {
    Rng rng(5000 + t);
    const std::size_t ti =
        10 + static_cast<std::size_t>(rng.uniform(0.0, 160.0));
    const std::size_t pj =
        5 + static_cast<std::size_t>(rng.uniform(0.0, 170.0));
    const geometry::SphericalTarget truth{1.0, grid.theta[ti], grid.phi[pj]};
    Rng rng_snap = rng.fork(1);
    const music::SnapshotSet s =
        music::simulate_snapshots(truth, rx, 20.0, 200, rng_snap);
    const auto est = music::estimate_aoa(music::sample_covariance(s), rx, grid);
    if (std::abs(est.azimuth_rad - truth.azimuth_rad) <=
            grid.theta_step() * 1.000001 &&
        std::abs(est.elevation_rad - truth.elevation_rad) <=
            grid.phi_step() * 1.000001) {
      ++close;
    }
  }
  std::ostringstream msg;
  msg << "noiseless exact " << exact << "/100, 20 dB within one step " << close
      << "/200";
  return {exact == 100 && close >= 190, msg.str()};
}

// ---------------------------------------------------------------- 7
std::pair<bool, std::string> irs_optimality() {
  Rng rng(7);
  // closed form dominates random phases on 100 random links
  for (int link_idx = 0; link_idx < 100; ++link_idx) {
    Rng r = rng.fork(link_idx);
    irs::IrsLink link;
    link.h_r.resize(16);
    link.g.resize(16);
    for (auto& e : link.h_r) e = r.cn01();
    for (auto& e : link.g) e = r.cn01();
    const irs::PhaseShiftVector opt = irs::optimal_phases(link);
    const double best = irs::link_power(link, opt);
    for (int k = 0; k < 10000; ++k) {
      irs::PhaseShiftVector psi;
      psi.phases.resize(16);
      for (double& p : psi.phases) p = r.uniform(-kPi, kPi);
      if (irs::link_power(link, psi) > best * (1.0 + 1e-12)) {
        return {false, "random phases beat the closed form"};
      }
    }
  }
  // 16-level exhaustive search within the quantization bound, N <= 6
  const double bound = std::pow(std::cos(kPi / 16.0), 2.0);
  for (std::size_t n : {4u, 5u, 6u}) {
    Rng r = rng.fork(1000 + n);
    irs::IrsLink link;
    link.h_r.resize(n);
    link.g.resize(n);
    for (auto& e : link.h_r) e = r.cn01();
    for (auto& e : link.g) e = r.cn01();
    const double best = irs::link_power(link, irs::optimal_phases(link));
    double brute = -1.0;
    std::vector<int> idx(n, 0);
    while (true) {
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i) {
        acc += link.h_r[i] * link.g[i] *
               std::polar(1.0, 2.0 * kPi * idx[i] / 16.0);
      }
      brute = std::max(brute, std::norm(acc));
      std::size_t pos = 0;
      while (pos < n && ++idx[pos] == 16) {
        idx[pos] = 0;
        ++pos;
      }
      if (pos == n) break;
    }
    if (!(best >= brute - 1e-9) || !(brute >= best * bound - 1e-9)) {
      return {false, "quantized search bound violated at n=" +
                         std::to_string(n)};
    }
  }
  // oracle reconstruction never loses to the location-aided one
  for (std::uint64_t batch = 0; batch < 5; ++batch) {
    scenario::ScenarioConfig cfg;
    cfg.seed = 100 + batch;
    cfg.detector_profile = "vomtc-v2";
    cfg.irs_trials = 100;
    cfg.irs_element_counts = {16, 64, 112};
    for (const auto& row : scenario::run_irs_nmse(cfg)) {
      if (row.scheme == "oracle-ls" && row.mean_nmse > 1e-15) {
        return {false, "oracle reconstruction is not exact"};
      }
    }
  }
  return {true, "closed form dominant; 16-level bound met; oracle <= aided"};
}

// ---------------------------------------------------------------- 8
std::pair<bool, std::string> detector_calibration() {
  const auto& p = detector::profile_by_name("vomtc-test");
  const geometry::SphericalTarget truth{5.0, 0.8, 0.4};
  Rng rng(88);
  const int n = 100000;
  int detected = 0;
  double abs_az = 0.0;
  for (int t = 0; t < n; ++t) {
    const auto est = detector::simulate_detection(truth, p, rng);
    if (!est) continue;
    ++detected;
    abs_az += std::abs(est->azimuth_rad - truth.azimuth_rad);
  }
  const double frac = static_cast<double>(detected) / n;
  const double mean_err = abs_az / detected;
  const bool ok = std::abs(mean_err - 0.0804) <= 0.02 * 0.0804 &&
                  std::abs(frac - 0.8104) <= 0.01 * 0.8104;
  std::ostringstream msg;
  msg.precision(5);
  msg << "mean |az err| " << mean_err << " (target 0.0804), detection rate "
      << frac << " (target 0.8104)";
  return {ok, msg.str()};
}

// ---------------------------------------------------------------- 9
std::pair<bool, std::string> dataset_semantics() {
  Rng rng(99);
  std::vector<dataset::SampleRecord> records;
  for (std::size_t k = 0; k < 500; ++k) {
    Rng r = rng.fork(k);
    dataset::SampleRecord rec;
    rec.id = "r" + std::to_string(k);
    rec.width = 640;
    rec.height = 480;
    const int n = static_cast<int>(r.uniform(0.0, 6.0));
    for (int i = 0; i < n; ++i) {
      dataset::LabeledObject o;
      const double pick = r.uniform();
      o.cls = pick < 0.5 ? dataset::ObjectClass::Person
                         : (pick < 0.8 ? dataset::ObjectClass::CellPhone
                                       : dataset::ObjectClass::Laptop);
      const double x = r.uniform(0.0, 600.0), y = r.uniform(0.0, 440.0);
      o.bbox = {x, y, x + r.uniform(1.0, 39.0), y + r.uniform(1.0, 39.0)};
      o.distance_m = r.uniform(0.5, 45.0);
      rec.objects.push_back(o);
    }
    records.push_back(std::move(rec));
  }
  dataset::SelectionQuery q;
  q.active_classes = {0, 1};
  q.max_num_people = 6;
  q.max_dist_m = 30.0;
  const auto got = dataset::select(records, q);
  // brute-force filter written straight from the three predicates
  std::vector<std::string> want;
  for (const auto& rec : records) {
    bool has_person = false, has_phone = false;
    int persons = 0;
    double max_d = 0.0;
    for (const auto& o : rec.objects) {
      if (o.cls == dataset::ObjectClass::Person) {
        has_person = true;
        ++persons;
      }
      if (o.cls == dataset::ObjectClass::CellPhone) has_phone = true;
      max_d = std::max(max_d, o.distance_m);
    }
    if (has_person && has_phone && persons <= 6 && max_d <= 30.0) {
      want.push_back(rec.id);
    }
  }
  bool ok = got.size() == want.size();
  for (std::size_t i = 0; ok && i < got.size(); ++i) {
    ok = got[i].id == want[i];
  }
  const auto twice = dataset::select(got, q);
  ok = ok && twice.size() == got.size();

  const dataset::BBox mapped = dataset::crop_transform(
      {110, 120, 130, 140}, {{100, 100, 300, 300}, 512.0, 512.0});
  ok = ok && mapped.xmin == 25.6 && mapped.ymin == 51.2 && mapped.xmax == 76.8 &&
       mapped.ymax == 102.4;
  std::ostringstream msg;
  msg << "select kept " << got.size() << "/500 matching the oracle; crop exact";
  return {ok, msg.str()};
}

// ---------------------------------------------------------------- 10
struct CliRunner {
  std::string binary;
  fs::path work;

  bool run(const std::string& args) const {
    const std::string cmd =
        binary + " " + args + " > " + (work / "stdout.txt").string() + " 2>&1";
    return std::system(cmd.c_str()) == 0;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool dirs_identical(const fs::path& a, const fs::path& b) {
  std::vector<fs::path> fa, fb;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (e.is_regular_file()) fa.push_back(fs::relative(e.path(), a));
  }
  for (const auto& e : fs::recursive_directory_iterator(b)) {
    if (e.is_regular_file()) fb.push_back(fs::relative(e.path(), b));
  }
  std::sort(fa.begin(), fa.end());
  std::sort(fb.begin(), fb.end());
  if (fa != fb) return false;
  for (const auto& rel : fa) {
    if (slurp(a / rel) != slurp(b / rel)) return false;
  }
  return true;
}

std::pair<bool, std::string> cli_determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI binary path given"};
  const fs::path work =
      fs::temp_directory_path() / "vbmsim_acceptance_cli";
  fs::remove_all(work);
  fs::create_directories(work);
  CliRunner runner{cli, work};

  // a small scenario config shared by the simulation subcommands
  const fs::path cfg_path = work / "config.txt";
  {
    scenario::ScenarioConfig cfg;
    cfg.tx_array = {4, 4};
    cfg.rx_array = {2, 2};
    cfg.codebook_oversampling = 2;
    cfg.sweep_beams = 16;
    cfg.ic_beams_per_axis = 5;
    cfg.music_theta_points = 31;
    cfg.music_phi_points = 31;
    cfg.music_snapshots = 8;
    cfg.grid_resolution = 5;
    cfg.drops = 20;
    cfg.antenna_counts = {16, 36};
    cfg.irs_element_counts = {16, 36};
    cfg.irs_trials = 30;
    std::ofstream out(cfg_path);
    out << scenario::serialize_config(cfg);
  }

  const std::string cfg_arg = " --config " + cfg_path.string() + " --seed 7";
  for (const std::string sub : {"rate-map", "latency-sweep", "irs-nmse"}) {
    const fs::path o1 = work / (sub + "_1"), o2 = work / (sub + "_2");
    if (!runner.run(sub + cfg_arg + " --out " + o1.string()) ||
        !runner.run(sub + cfg_arg + " --out " + o2.string())) {
      return {false, sub + " failed to run"};
    }
    if (!dirs_identical(o1, o2)) {
      return {false, sub + " outputs differ between identical runs"};
    }
  }

  // dataset subcommands against a generated fixture corpus
  const fs::path corpus1 = work / "corpus_1", corpus2 = work / "corpus_2";
  if (!runner.run("dataset gen-fixture --seed 3 --count 40 --out " +
                  corpus1.string()) ||
      !runner.run("dataset gen-fixture --seed 3 --count 40 --out " +
                  corpus2.string())) {
    return {false, "gen-fixture failed to run"};
  }
  if (!dirs_identical(corpus1, corpus2)) {
    return {false, "gen-fixture outputs differ between identical runs"};
  }
  for (int i = 1; i <= 2; ++i) {
    const std::string sel = (work / ("sel_" + std::to_string(i))).string();
    if (!runner.run("dataset select --in " + corpus1.string() +
                    " --active-classes 0,1 --max-people 6 --max-dist 30 "
                    "--out " + sel)) {
      return {false, "dataset select failed to run"};
    }
  }
  if (slurp(work / "sel_1") != slurp(work / "sel_2")) {
    return {false, "dataset select outputs differ"};
  }
  for (int i = 1; i <= 2; ++i) {
    const std::string out = (work / ("labels_" + std::to_string(i))).string();
    if (!runner.run("dataset make-labels --in " + corpus1.string() + " --out " +
                    out)) {
      return {false, "dataset make-labels failed to run"};
    }
  }
  if (!dirs_identical(work / "labels_1", work / "labels_2")) {
    return {false, "dataset make-labels outputs differ"};
  }
  fs::remove_all(work);
  return {true, "all subcommands byte-identical on re-run"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  run_criterion(1, "path-loss golden values", path_loss_golden);
  run_criterion(2, "rsrp sweep equals brute force", sweep_oracle);
  run_criterion(3, "scheme ordering and improvement band", scheme_ordering);
  run_criterion(4, "latency trends versus antenna count", latency_trends);
  run_criterion(5, "codebook quantization loss", quantization_loss);
  run_criterion(6, "arrival-angle recovery", music_recovery);
  run_criterion(7, "reflecting-surface phase optimality", irs_optimality);
  run_criterion(8, "detector model calibration", detector_calibration);
  run_criterion(9, "dataset selection and crop transform", dataset_semantics);
  run_criterion(10, "CLI output determinism",
                [&] { return cli_determinism(cli); });
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
  } else {
    std::printf("all criteria passed\n");
  }
  return g_failures;
}
