#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fovlap/config.hpp"

namespace fovlap {

// One sweep output row: the swept value plus the ensemble statistics and the
// requested p_calib columns.
struct ResultRow {
  double swept_value = 0.0;
  double mean_ao_km2 = 0.0;
  double mean_ro = 0.0;
  double std_ro = 0.0;
  std::vector<std::pair<int, double>> p_calib;  // (q, value), ascending q
  std::int64_t miss_count = 0;
  std::int64_t n_mc = 0;
  std::uint64_t seed = 0;  // the row's derived ensemble seed
};

inline std::uint64_t row_seed(std::uint64_t master_seed, std::size_t row_index) {
  return combine_seed(combine_seed(master_seed, 0x726f77ULL), row_index);
}

namespace detail {

inline AppConfig with_swept_value(const AppConfig& base, SweepAxis axis, double value) {
  AppConfig cfg = base;
  switch (axis) {
    case SweepAxis::ape:
      cfg.ensemble.noise.ape_deg = value;
      break;
    case SweepAxis::t:
      cfg.ensemble.criteria.t_threshold = value;
      break;
    case SweepAxis::fov: {
      // value is the anchor footprint width; the aspect ratio of the base
      // configuration is preserved
      const double aspect = base.fov_wy_km / base.fov_wx_km;
      cfg.fov_wx_km = value;
      cfg.fov_wy_km = value * aspect;
      cfg.formation.intrinsics =
          CameraIntrinsics::from_footprint(cfg.fov_wx_km, cfg.fov_wy_km, cfg.formation.h_orbit_km);
      break;
    }
    case SweepAxis::q:
      break;  // same ensemble; q only selects the reported tail sum
  }
  return cfg;
}

}  // namespace detail

/// Run the configured sweep. Rows of the ape/fov/t axes use independent
/// ensembles seeded from (master_seed, row index); the q axis evaluates a
/// single shared ensemble so that p_calib is exactly non-increasing in q.
inline std::vector<ResultRow> run_sweep(const AppConfig& cfg, int threads = 1) {
  validate(cfg);
  std::vector<ResultRow> rows;
  rows.reserve(cfg.sweep.values.size());

  if (cfg.sweep.axis == SweepAxis::q) {
    EnsembleConfig ens = cfg.ensemble;
    ens.master_seed = row_seed(cfg.ensemble.master_seed, 0);
    const Scenario scenario = build_scenario(cfg.formation);
    const EnsembleStats stats = run_ensemble(scenario, ens, threads);
    for (double value : cfg.sweep.values) {
      const int q = static_cast<int>(std::llround(value));
      ResultRow row;
      row.swept_value = value;
      row.mean_ao_km2 = stats.mean_ao;
      row.mean_ro = stats.mean_ro;
      row.std_ro = stats.std_ro;
      row.p_calib = {{q, p_calib(stats.histogram, q)}};
      row.miss_count = stats.miss_count;
      row.n_mc = stats.n_mc;
      row.seed = ens.master_seed;
      rows.push_back(std::move(row));
    }
    return rows;
  }

  for (std::size_t i = 0; i < cfg.sweep.values.size(); ++i) {
    const double value = cfg.sweep.values[i];
    try {
      const AppConfig swept = detail::with_swept_value(cfg, cfg.sweep.axis, value);
      EnsembleConfig ens = swept.ensemble;
      ens.master_seed = row_seed(cfg.ensemble.master_seed, i);
      const Scenario scenario = build_scenario(swept.formation);
      const EnsembleStats stats = run_ensemble(scenario, ens, threads);
      ResultRow row;
      row.swept_value = value;
      row.mean_ao_km2 = stats.mean_ao;
      row.mean_ro = stats.mean_ro;
      row.std_ro = stats.std_ro;
      for (int q : cfg.sweep.q_report) row.p_calib.emplace_back(q, p_calib(stats.histogram, q));
      row.miss_count = stats.miss_count;
      row.n_mc = stats.n_mc;
      row.seed = ens.master_seed;
      rows.push_back(std::move(row));
    } catch (const Error& e) {
      throw Error(std::string(e.what()) + " [sweep " + to_string(cfg.sweep.axis) + " = " +
                  std::to_string(value) + "]");
    }
  }
  return rows;
}

inline std::string format_g9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

inline const char* axis_column(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::ape: return "ape_deg";
    case SweepAxis::fov: return "fov_wx_km";
    case SweepAxis::q: return "q";
    case SweepAxis::t: return "t_threshold";
  }
  return "value";
}

/// Provenance object embedded in every output; excludes execution details
/// such as the thread count.
inline nlohmann::json config_json(const AppConfig& cfg) {
  nlohmann::json j;
  j["formation"] = {{"h_earth_km", cfg.formation.h_earth_km},
                    {"h_orbit_km", cfg.formation.h_orbit_km},
                    {"arc_spacing_km", cfg.formation.arc_spacing_km},
                    {"n_cam", cfg.formation.n_cam},
                    {"phi_x_deg", cfg.formation.intrinsics.phi_x_deg},
                    {"phi_y_deg", cfg.formation.intrinsics.phi_y_deg},
                    {"fov_wx_km", cfg.fov_wx_km},
                    {"fov_wy_km", cfg.fov_wy_km}};
  j["noise"] = {{"ape_deg", cfg.ensemble.noise.ape_deg},
                {"ape_model",
                 cfg.ensemble.noise.model == ApeModel::pointing ? "pointing" : "rotation"}};
  j["graph"] = {
      {"t_threshold", cfg.ensemble.criteria.t_threshold},
      {"similarity_mode",
       cfg.ensemble.criteria.similarity_mode == SimilarityMode::baseline ? "baseline" : "angular"},
      {"d_max_km", cfg.ensemble.criteria.d_max_km},
      {"mu_max_deg", cfg.ensemble.criteria.mu_max_deg},
      {"require_anchor_in_component", cfg.ensemble.criteria.require_anchor_in_component}};
  j["ensemble"] = {{"n_mc", cfg.ensemble.n_mc}, {"master_seed", cfg.ensemble.master_seed}};
  j["sweep"] = {{"axis", to_string(cfg.sweep.axis)},
                {"values", cfg.sweep.values},
                {"q", cfg.sweep.q_report}};
  return j;
}

inline std::string csv_header(const AppConfig& cfg) {
  std::string h = axis_column(cfg.sweep.axis);
  h += ",mean_ao_km2,mean_ro,std_ro";
  if (cfg.sweep.axis == SweepAxis::q) {
    h += ",p_calib";
  } else {
    for (int q : cfg.sweep.q_report) h += ",p_calib_q" + std::to_string(q);
  }
  h += ",miss_count,n_mc,seed";
  return h;
}

inline void write_csv(std::ostream& os, const AppConfig& cfg, const std::vector<ResultRow>& rows) {
  os << "# fovlap-results schema_version=1\n";
  os << "# config=" << config_json(cfg).dump() << "\n";
  os << csv_header(cfg) << "\n";
  const bool q_axis = cfg.sweep.axis == SweepAxis::q;
  for (const ResultRow& r : rows) {
    if (q_axis)
      os << static_cast<std::int64_t>(std::llround(r.swept_value));
    else
      os << format_g9(r.swept_value);
    os << "," << format_g9(r.mean_ao_km2) << "," << format_g9(r.mean_ro) << ","
       << format_g9(r.std_ro);
    for (const auto& [q, p] : r.p_calib) os << "," << format_g9(p);
    os << "," << r.miss_count << "," << r.n_mc << "," << r.seed << "\n";
  }
}

inline nlohmann::json result_json(const AppConfig& cfg, const std::vector<ResultRow>& rows) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["config"] = config_json(cfg);
  j["axis"] = to_string(cfg.sweep.axis);
  j["rows"] = nlohmann::json::array();
  for (const ResultRow& r : rows) {
    nlohmann::json p = nlohmann::json::object();
    for (const auto& [q, v] : r.p_calib) p[std::to_string(q)] = v;
    j["rows"].push_back({{"value", r.swept_value},
                         {"mean_ao_km2", r.mean_ao_km2},
                         {"mean_ro", r.mean_ro},
                         {"std_ro", r.std_ro},
                         {"p_calib", std::move(p)},
                         {"miss_count", r.miss_count},
                         {"n_mc", r.n_mc},
                         {"seed", r.seed}});
  }
  return j;
}

enum class OutputFormat { csv, json };

/// Write sweep rows to a file, or to stdout when path is empty or "-".
inline void emit(const std::vector<ResultRow>& rows, const AppConfig& cfg, OutputFormat format,
                 const std::string& path) {
  if (rows.empty()) throw EmptySetup("emit: no rows");
  std::ostringstream body;
  if (format == OutputFormat::csv)
    write_csv(body, cfg, rows);
  else
    body << result_json(cfg, rows).dump(2) << "\n";

  if (path.empty() || path == "-") {
    std::cout << body.str();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << body.str();
  if (!out) throw IoError("failed writing output file: " + path);
}

// ---- single-ensemble (per-sample) output, for the `once` subcommand ----

inline void write_samples_csv(std::ostream& os, const AppConfig& cfg, const EnsembleStats& stats,
                              const std::vector<SampleSummary>& samples) {
  os << "# fovlap-samples schema_version=1\n";
  os << "# config=" << config_json(cfg).dump() << "\n";
  os << "# mean_ao_km2=" << format_g9(stats.mean_ao) << " mean_ro=" << format_g9(stats.mean_ro)
     << " std_ro=" << format_g9(stats.std_ro) << " miss_count=" << stats.miss_count
     << " anchor_miss_count=" << stats.anchor_miss_count;
  for (int q : cfg.sweep.q_report)
    os << " p_calib_q" << q << "=" << format_g9(p_calib(stats.histogram, q));
  os << "\n";
  os << "sample_index,ao_km2,ro,largest_component,anchor_component,miss_count,anchor_miss\n";
  for (const SampleSummary& s : samples) {
    os << s.sample_index << "," << format_g9(s.ao_km2) << "," << format_g9(s.ro) << ","
       << s.largest_component << "," << s.anchor_component << "," << s.miss_count << ","
       << (s.anchor_miss ? 1 : 0) << "\n";
  }
}

inline nlohmann::json samples_json(const AppConfig& cfg, const EnsembleStats& stats,
                                   const std::vector<SampleSummary>& samples) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["config"] = config_json(cfg);
  nlohmann::json p = nlohmann::json::object();
  for (int q : cfg.sweep.q_report) p[std::to_string(q)] = p_calib(stats.histogram, q);
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [size, count] : stats.histogram.counts) hist[std::to_string(size)] = count;
  j["stats"] = {{"n_mc", stats.n_mc},
                {"mean_ao_km2", stats.mean_ao},
                {"mean_ro", stats.mean_ro},
                {"std_ro", stats.std_ro},
                {"miss_count", stats.miss_count},
                {"anchor_miss_count", stats.anchor_miss_count},
                {"component_histogram", std::move(hist)},
                {"p_calib", std::move(p)}};
  j["samples"] = nlohmann::json::array();
  for (const SampleSummary& s : samples) {
    j["samples"].push_back({{"sample_index", s.sample_index},
                            {"ao_km2", s.ao_km2},
                            {"ro", s.ro},
                            {"largest_component", s.largest_component},
                            {"anchor_component", s.anchor_component},
                            {"miss_count", s.miss_count},
                            {"anchor_miss", s.anchor_miss}});
  }
  return j;
}

// ---- one sample's polygons, for the `footprints` subcommand ----

inline nlohmann::json footprints_json(const AppConfig& cfg, const Scenario& scenario,
                                      const SetupSample& sample) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["config"] = config_json(cfg);
  j["sample_index"] = sample.sample_index;
  j["anchor_index"] = scenario.anchor_index;
  auto polygon = [](const FootprintPolygon& fp) {
    nlohmann::json p;
    p["valid"] = fp.valid;
    p["vertices_km"] = nlohmann::json::array();
    if (fp.valid)
      for (const Point2& v : fp.vertices) p["vertices_km"].push_back({v.x, v.y});
    return p;
  };
  j["cameras"] = nlohmann::json::array();
  for (std::size_t c = 0; c < sample.footprints.size(); ++c) {
    nlohmann::json cam = polygon(sample.footprints[c]);
    cam["camera_id"] = static_cast<int>(c);
    j["cameras"].push_back(std::move(cam));
  }
  j["overlap_polygon"] = polygon(intersect_all(sample.footprints));
  j["ao_km2"] = sample.report.ao;
  j["ro"] = sample.report.ro;
  j["anchor_miss"] = sample.anchor_miss;
  return j;
}

}  // namespace fovlap
