// Copyright (C) 2026 vbmsim contributors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: link-level beam-management experiments plus the
// dataset toolkit.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vbmsim/dataset.hpp"
#include "vbmsim/scenario.hpp"

namespace fs = std::filesystem;
using namespace vbmsim;

namespace {

struct SimArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

void add_sim_options(CLI::App* cmd, SimArgs& args) {
  cmd->add_option("--config", args.config_path, "scenario config file");
  cmd->add_option("--out", args.out_dir, "output directory")->required();
  cmd->add_option("--seed", args.seed, "seed override");
}

scenario::ScenarioConfig resolve_config(const SimArgs& args) {
  scenario::ScenarioConfig cfg;
  if (!args.config_path.empty()) {
    cfg = scenario::load_config_file(args.config_path);
  }
  if (args.seed) cfg.seed = *args.seed;
  cfg.validate();
  return cfg;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << contents;
}

void emit(const scenario::ScenarioConfig& cfg, const std::string& command,
          const fs::path& out_dir, const std::string& csv_name,
          const std::string& csv_body) {
  fs::create_directories(out_dir);
  write_file(out_dir / csv_name, csv_body);
  std::ostringstream manifest;
  scenario::write_manifest(cfg, command, {csv_name}, manifest);
  write_file(out_dir / "manifest.json", manifest.str());
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int run_rate_map_cmd(const SimArgs& args) {
  const scenario::ScenarioConfig cfg = resolve_config(args);
  const scenario::RateMap map = scenario::run_rate_map(cfg);
  std::ostringstream csv;
  scenario::write_rate_map_csv(map, csv);
  emit(cfg, "rate-map", args.out_dir, "rate_map.csv", csv.str());
  // per-scheme grid means as a quick summary
  for (std::size_t s = 0; s < map.schemes.size(); ++s) {
    double acc = 0.0;
    for (double r : map.rates[s]) acc += r;
    std::cout << map.schemes[s] << " mean rate "
              << fmt_g(acc / map.rates[s].size()) << " bps/Hz\n";
  }
  return 0;
}

int run_latency_cmd(const SimArgs& args) {
  const scenario::ScenarioConfig cfg = resolve_config(args);
  const std::vector<scenario::LatencyRow> rows = scenario::run_latency_sweep(cfg);
  std::ostringstream csv;
  scenario::write_latency_csv(rows, csv);
  emit(cfg, "latency-sweep", args.out_dir, "latency.csv", csv.str());
  for (const auto& r : rows) {
    std::cout << r.antennas << " antennas  " << r.scheme << "  "
              << fmt_g(r.avg_latency_s) << " s\n";
  }
  return 0;
}

int run_irs_cmd(const SimArgs& args) {
  const scenario::ScenarioConfig cfg = resolve_config(args);
  const std::vector<scenario::IrsRow> rows = scenario::run_irs_nmse(cfg);
  std::ostringstream csv;
  scenario::write_irs_csv(rows, csv);
  emit(cfg, "irs-nmse", args.out_dir, "irs_nmse.csv", csv.str());
  for (const auto& r : rows) {
    std::cout << r.elements << " elements  " << r.scheme << "  nmse "
              << fmt_g(r.mean_nmse) << "\n";
  }
  return 0;
}

struct SelectArgs {
  std::string in_dir;
  std::string out_file;
  std::string active_classes = "0,1";
  int max_people = 6;
  double max_dist = 30.0;
  bool strict = false;
};

int run_select_cmd(const SelectArgs& args) {
  dataset::SelectionQuery q;
  q.active_classes.clear();
  std::stringstream classes(args.active_classes);
  std::string tok;
  while (std::getline(classes, tok, ',')) {
    if (!tok.empty()) q.active_classes.insert(std::stoi(tok));
  }
  q.max_num_people = args.max_people;
  q.max_dist_m = args.max_dist;
  q.strict_classes = args.strict;
  const auto records = dataset::load_corpus(args.in_dir);
  const auto kept = dataset::select(records, q);
  std::ostringstream body;
  for (const auto& rec : kept) body << rec.id << "\n";
  write_file(args.out_file, body.str());
  std::cout << "selected " << kept.size() << " of " << records.size()
            << " records\n";
  return 0;
}

struct MakeLabelsArgs {
  std::string in_dir;
  std::string out_dir;
  double crop_w = 512.0, crop_h = 512.0;
};

int run_make_labels_cmd(const MakeLabelsArgs& args) {
  const auto records = dataset::load_corpus(args.in_dir);
  std::ostringstream csv;
  csv << "id,crop_index,person_xmin,person_ymin,person_xmax,person_ymax,"
         "phone_xmin,phone_ymin,phone_xmax,phone_ymax,"
         "crop_xmin,crop_ymin,crop_xmax,crop_ymax\n";
  std::size_t total = 0;
  for (const auto& rec : records) {
    for (const auto& crop :
         dataset::make_training_crops(rec, args.crop_w, args.crop_h)) {
      csv << crop.record_id << "," << crop.crop_index << ","
          << fmt_g(crop.person_bbox.xmin) << "," << fmt_g(crop.person_bbox.ymin)
          << "," << fmt_g(crop.person_bbox.xmax) << ","
          << fmt_g(crop.person_bbox.ymax) << "," << fmt_g(crop.phone_bbox.xmin)
          << "," << fmt_g(crop.phone_bbox.ymin) << ","
          << fmt_g(crop.phone_bbox.xmax) << "," << fmt_g(crop.phone_bbox.ymax)
          << "," << fmt_g(crop.phone_bbox_cropped.xmin) << ","
          << fmt_g(crop.phone_bbox_cropped.ymin) << ","
          << fmt_g(crop.phone_bbox_cropped.xmax) << ","
          << fmt_g(crop.phone_bbox_cropped.ymax) << "\n";
      ++total;
    }
  }
  fs::create_directories(args.out_dir);
  write_file(fs::path(args.out_dir) / "crops.csv", csv.str());
  std::cout << "wrote " << total << " training crops\n";
  return 0;
}

struct GenFixtureArgs {
  std::string out_dir;
  std::size_t count = 50;
  std::uint64_t seed = 1;
};

int run_gen_fixture_cmd(const GenFixtureArgs& args) {
  Rng rng(args.seed);
  const auto records =
      dataset::make_synthetic_corpus(args.out_dir, args.count, rng);
  std::cout << "wrote " << records.size() << " synthetic records to "
            << args.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link-level simulator for vision-aided beam management"};
  app.require_subcommand(1);

  SimArgs rate_args, latency_args, irs_args;
  add_sim_options(app.add_subcommand("rate-map", "per-position rate map"),
                  rate_args);
  add_sim_options(
      app.add_subcommand("latency-sweep", "latency versus antenna count"),
      latency_args);
  add_sim_options(
      app.add_subcommand("irs-nmse", "reflecting-surface channel NMSE"),
      irs_args);

  CLI::App* ds = app.add_subcommand("dataset", "dataset toolkit");
  ds->require_subcommand(1);

  SelectArgs select_args;
  CLI::App* sel = ds->add_subcommand("select", "filter a corpus");
  sel->add_option("--in", select_args.in_dir, "corpus root")->required();
  sel->add_option("--out", select_args.out_file, "manifest file")->required();
  sel->add_option("--active-classes", select_args.active_classes,
                  "comma list of class indices (0 person, 1 phone, 2 laptop)");
  sel->add_option("--max-people", select_args.max_people, "max persons per record");
  sel->add_option("--max-dist", select_args.max_dist, "max object distance, m");
  sel->add_flag("--strict", select_args.strict,
                "records may only contain active classes");

  MakeLabelsArgs labels_args;
  CLI::App* mk = ds->add_subcommand("make-labels", "build training crops");
  mk->add_option("--in", labels_args.in_dir, "corpus root")->required();
  mk->add_option("--out", labels_args.out_dir, "output directory")->required();
  mk->add_option("--crop-width", labels_args.crop_w, "crop frame width");
  mk->add_option("--crop-height", labels_args.crop_h, "crop frame height");

  GenFixtureArgs fixture_args;
  CLI::App* gen = ds->add_subcommand("gen-fixture", "write a synthetic corpus");
  gen->add_option("--out", fixture_args.out_dir, "corpus root")->required();
  gen->add_option("--count", fixture_args.count, "record count");
  gen->add_option("--seed", fixture_args.seed, "generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("rate-map")) return run_rate_map_cmd(rate_args);
    if (app.got_subcommand("latency-sweep")) return run_latency_cmd(latency_args);
    if (app.got_subcommand("irs-nmse")) return run_irs_cmd(irs_args);
    if (ds->got_subcommand("select")) return run_select_cmd(select_args);
    if (ds->got_subcommand("make-labels")) return run_make_labels_cmd(labels_args);
    if (ds->got_subcommand("gen-fixture")) return run_gen_fixture_cmd(fixture_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}
