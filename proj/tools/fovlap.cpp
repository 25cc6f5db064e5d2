// fovlap — Monte Carlo analysis of multi-view field-of-view overlap and the
// probability of geometric self-calibration under noisy camera pointing.
//
// Subcommands:
//   sweep       parameter sweep (ape | fov | q | t), CSV or JSON rows
//   once        single ensemble with a full per-sample dump
//   footprints  one sample's ground polygons as JSON

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"

#include "fovlap/fovlap.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::string axis;
  std::string values;
  std::string q;
  std::string similarity;
  std::string ape_model;
  double ape = 0.0;
  double t_threshold = 0.0;
  double h_orbit = 0.0;
  double arc_spacing = 0.0;
  double fov_wx = 0.0;
  double fov_wy = 0.0;
  double phi_x = 0.0;
  double phi_y = 0.0;
  double d_max = 0.0;
  double mu_max = 0.0;
  std::int64_t n_mc = 0;
  std::uint64_t seed = 0;
  int n_cam = 0;
  int threads = -1;
  std::int64_t sample_index = 0;
  bool require_anchor = false;
  bool dry_run = false;
};

void add_common_options(CLI::App* cmd, CliOverrides& o) {
  cmd->add_option("--config", o.config_path, "configuration file (key = value sections)");
  cmd->add_option("--ape", o.ape, "pointing error std dev, degrees");
  cmd->add_option("--ape-model", o.ape_model, "noise realization: pointing|rotation");
  cmd->add_option("--t", o.t_threshold, "pairwise overlap threshold T in [0,1]");
  cmd->add_option("--n-mc", o.n_mc, "Monte Carlo samples per ensemble");
  cmd->add_option("--seed", o.seed, "master seed (omitted: drawn from entropy and printed)");
  cmd->add_option("--threads", o.threads, "worker threads (0 = hardware parallelism)");
  cmd->add_option("--n-cam", o.n_cam, "number of cameras in the formation");
  cmd->add_option("--h-orbit", o.h_orbit, "orbit altitude, km");
  cmd->add_option("--arc-spacing", o.arc_spacing, "arc distance between neighbors, km");
  cmd->add_option("--fov-wx", o.fov_wx, "anchor footprint width, km");
  cmd->add_option("--fov-wy", o.fov_wy, "anchor footprint height, km");
  cmd->add_option("--phi-x", o.phi_x, "angular FOV along x, degrees");
  cmd->add_option("--phi-y", o.phi_y, "angular FOV along y, degrees");
  cmd->add_option("--d-max", o.d_max, "baseline similarity bound, km");
  cmd->add_option("--mu-max", o.mu_max, "angular similarity bound, degrees");
  cmd->add_option("--similarity", o.similarity, "similarity mode: baseline|angular");
  cmd->add_option("--q", o.q, "p_calib component sizes, e.g. 10 or 5..10");
  cmd->add_flag("--require-anchor", o.require_anchor,
                "count the anchor's component instead of the largest");
  cmd->add_flag("--dry-run", o.dry_run, "print the resolved configuration and exit");
}

bool given(const CLI::App* cmd, const std::string& name) {
  const CLI::Option* opt = cmd->get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

fovlap::AppConfig resolve_config(const CLI::App* cmd, const CliOverrides& o) {
  fovlap::AppConfig cfg;
  if (!o.config_path.empty()) {
    try {
      cfg = fovlap::load_config(o.config_path);
    } catch (const fovlap::IoError& e) {
      throw fovlap::ConfigParse(e.what());  // unreadable config file is a config error
    }
  }

  if (given(cmd, "--ape")) cfg.ensemble.noise.ape_deg = o.ape;
  if (given(cmd, "--ape-model")) {
    if (o.ape_model == "pointing")
      cfg.ensemble.noise.model = fovlap::ApeModel::pointing;
    else if (o.ape_model == "rotation")
      cfg.ensemble.noise.model = fovlap::ApeModel::rotation;
    else
      throw fovlap::ConfigInvalid("ape-model: must be pointing|rotation, got '" + o.ape_model +
                                  "'");
  }
  if (given(cmd, "--t")) cfg.ensemble.criteria.t_threshold = o.t_threshold;
  if (given(cmd, "--n-mc")) cfg.ensemble.n_mc = o.n_mc;
  if (given(cmd, "--seed")) {
    cfg.ensemble.master_seed = o.seed;
    cfg.seed_set = true;
  }
  if (given(cmd, "--threads")) cfg.threads = o.threads;
  if (given(cmd, "--n-cam")) cfg.formation.n_cam = o.n_cam;
  if (given(cmd, "--h-orbit")) cfg.formation.h_orbit_km = o.h_orbit;
  if (given(cmd, "--arc-spacing")) cfg.formation.arc_spacing_km = o.arc_spacing;
  if (given(cmd, "--d-max")) cfg.ensemble.criteria.d_max_km = o.d_max;
  if (given(cmd, "--mu-max")) cfg.ensemble.criteria.mu_max_deg = o.mu_max;
  if (given(cmd, "--similarity")) {
    if (o.similarity == "baseline")
      cfg.ensemble.criteria.similarity_mode = fovlap::SimilarityMode::baseline;
    else if (o.similarity == "angular")
      cfg.ensemble.criteria.similarity_mode = fovlap::SimilarityMode::angular;
    else
      throw fovlap::ConfigInvalid("similarity: must be baseline|angular, got '" + o.similarity +
                                  "'");
  }
  if (given(cmd, "--require-anchor")) cfg.ensemble.criteria.require_anchor_in_component = true;
  if (given(cmd, "--q")) cfg.sweep.q_report = fovlap::parse_q_list(o.q);
  if (given(cmd, "--axis")) cfg.sweep.axis = fovlap::parse_axis(o.axis);
  if (given(cmd, "--values")) cfg.sweep.values = fovlap::parse_values(o.values);

  // FOV overrides re-resolve the intrinsics
  const bool angles_given = given(cmd, "--phi-x") || given(cmd, "--phi-y");
  const bool dims_given = given(cmd, "--fov-wx") || given(cmd, "--fov-wy");
  if (angles_given && dims_given)
    throw fovlap::ConfigInvalid("--phi-x/--phi-y and --fov-wx/--fov-wy are mutually exclusive");
  try {
    if (angles_given) {
      if (!(given(cmd, "--phi-x") && given(cmd, "--phi-y")))
        throw fovlap::ConfigInvalid("--phi-x and --phi-y must be given together");
      cfg.fov_from_angles = true;
      cfg.formation.intrinsics = fovlap::CameraIntrinsics::from_fov_deg(o.phi_x, o.phi_y);
    } else if (dims_given || (!cfg.fov_from_angles && given(cmd, "--h-orbit"))) {
      if (given(cmd, "--fov-wx")) cfg.fov_wx_km = o.fov_wx;
      if (given(cmd, "--fov-wy")) cfg.fov_wy_km = o.fov_wy;
      cfg.fov_from_angles = false;
      cfg.formation.intrinsics = fovlap::CameraIntrinsics::from_footprint(
          cfg.fov_wx_km, cfg.fov_wy_km, cfg.formation.h_orbit_km);
    }
  } catch (const std::invalid_argument& e) {
    throw fovlap::ConfigInvalid(e.what());
  }
  const auto [wx, wy] =
      fovlap::anchor_footprint_dims(cfg.formation.intrinsics, cfg.formation.h_orbit_km);
  cfg.fov_wx_km = wx;
  cfg.fov_wy_km = wy;

  if (!cfg.seed_set) {
    std::random_device rd;
    cfg.ensemble.master_seed =
        (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
    cfg.seed_set = true;
    std::cerr << "master_seed drawn from entropy: " << cfg.ensemble.master_seed << "\n";
  }

  fovlap::validate(cfg);
  return cfg;
}

fovlap::OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return fovlap::OutputFormat::csv;
  if (s == "json") return fovlap::OutputFormat::json;
  throw fovlap::ConfigInvalid("format: must be csv|json, got '" + s + "'");
}

void write_text(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fovlap::IoError("cannot open output file: " + path);
  out << body;
  if (!out) throw fovlap::IoError("failed writing output file: " + path);
}

int run_sweep_cmd(const CLI::App* cmd, const CliOverrides& o) {
  const fovlap::AppConfig cfg = resolve_config(cmd, o);
  if (o.dry_run) {
    std::cout << fovlap::to_ini(cfg);
    return 0;
  }
  const auto rows = fovlap::run_sweep(cfg, cfg.threads);
  fovlap::emit(rows, cfg, parse_format(o.format), o.out_path);
  return 0;
}

int run_once_cmd(const CLI::App* cmd, const CliOverrides& o) {
  const fovlap::AppConfig cfg = resolve_config(cmd, o);
  if (o.dry_run) {
    std::cout << fovlap::to_ini(cfg);
    return 0;
  }
  const fovlap::Scenario scenario = fovlap::build_scenario(cfg.formation);
  const auto samples = fovlap::run_samples(scenario, cfg.ensemble, cfg.threads);
  const fovlap::EnsembleStats stats = fovlap::reduce(samples);
  std::ostringstream body;
  if (parse_format(o.format) == fovlap::OutputFormat::csv)
    fovlap::write_samples_csv(body, cfg, stats, samples);
  else
    body << fovlap::samples_json(cfg, stats, samples).dump(2) << "\n";
  write_text(o.out_path, body.str());
  return 0;
}

int run_footprints_cmd(const CLI::App* cmd, const CliOverrides& o) {
  const fovlap::AppConfig cfg = resolve_config(cmd, o);
  if (o.dry_run) {
    std::cout << fovlap::to_ini(cfg);
    return 0;
  }
  if (o.sample_index < 0 || o.sample_index >= cfg.ensemble.n_mc)
    throw fovlap::ConfigInvalid("sample-index: must be in [0, n_mc)");
  const fovlap::Scenario scenario = fovlap::build_scenario(cfg.formation);
  const fovlap::SetupSample sample =
      fovlap::run_sample(scenario, cfg.ensemble, o.sample_index);
  write_text(o.out_path, fovlap::footprints_json(cfg, scenario, sample).dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-view FOV overlap and self-calibration probability simulator"};
  app.require_subcommand(1);

  CliOverrides sweep_opts, once_opts, fp_opts;

  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  add_common_options(sweep, sweep_opts);
  sweep->add_option("--axis", sweep_opts.axis, "sweep axis: ape|fov|q|t");
  sweep->add_option("--values", sweep_opts.values, "swept values: list a,b,c or range start:stop:step");
  sweep->add_option("--format", sweep_opts.format, "output format: csv|json");
  sweep->add_option("--out", sweep_opts.out_path, "output path (default: stdout)");

  CLI::App* once = app.add_subcommand("once", "run one ensemble, dump every sample");
  add_common_options(once, once_opts);
  once->add_option("--format", once_opts.format, "output format: csv|json");
  once->add_option("--out", once_opts.out_path, "output path (default: stdout)");

  CLI::App* footprints =
      app.add_subcommand("footprints", "emit one sample's ground polygons as JSON");
  add_common_options(footprints, fp_opts);
  footprints->add_option("--sample-index", fp_opts.sample_index, "which Monte Carlo sample");
  footprints->add_option("--out", fp_opts.out_path, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sweep->parsed()) return run_sweep_cmd(sweep, sweep_opts);
    if (once->parsed()) return run_once_cmd(once, once_opts);
    if (footprints->parsed()) return run_footprints_cmd(footprints, fp_opts);
  } catch (const fovlap::ConfigParse& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const fovlap::ConfigInvalid& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const fovlap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
