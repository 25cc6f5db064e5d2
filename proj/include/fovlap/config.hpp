#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fovlap/formation.hpp"
#include "fovlap/montecarlo.hpp"

namespace fovlap {

enum class SweepAxis { ape, fov, q, t };

inline const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::ape: return "ape";
    case SweepAxis::fov: return "fov";
    case SweepAxis::q: return "q";
    case SweepAxis::t: return "t";
  }
  return "ape";
}

inline SweepAxis parse_axis(const std::string& s) {
  if (s == "ape") return SweepAxis::ape;
  if (s == "fov") return SweepAxis::fov;
  if (s == "q") return SweepAxis::q;
  if (s == "t") return SweepAxis::t;
  throw ConfigInvalid("axis must be one of ape|fov|q|t, got '" + s + "'");
}

// One sweep: the axis, the grid of swept values, and (held in AppConfig) the
// fixed parameters of every ensemble.
struct SweepSpec {
  SweepAxis axis = SweepAxis::ape;
  std::vector<double> values = {0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  std::vector<int> q_report = {10};  // p_calib columns emitted per row
};

struct AppConfig {
  FormationConfig formation;
  double fov_wx_km = 100.0;  // anchor footprint request; resolved into intrinsics
  double fov_wy_km = 70.0;
  bool fov_from_angles = false;
  EnsembleConfig ensemble{.n_mc = 100, .master_seed = 0, .noise = {2.0}, .criteria = {}};
  SweepSpec sweep;
  int threads = 0;  // 0 = hardware parallelism; execution detail, not provenance
  bool seed_set = false;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigInvalid(key + ": expected a number, got '" + value + "'");
  }
}

inline std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigInvalid(key + ": expected an integer, got '" + value + "'");
  }
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigInvalid(key + ": expected an unsigned integer, got '" + value + "'");
  }
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigInvalid(key + ": expected a boolean, got '" + value + "'");
}

}  // namespace detail

/// Sweep value grids: a comma list "0.1,0.5,2" or a range "start:stop:step"
/// (stop inclusive).
inline std::vector<double> parse_values(const std::string& spec) {
  const std::string s = detail::trim(spec);
  if (s.empty()) throw ConfigInvalid("values: empty list");
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    double start = 0, stop = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || !is.eof())
      throw ConfigInvalid("values: bad range '" + s + "', expected start:stop:step");
    if (!(step > 0.0) || stop < start)
      throw ConfigInvalid("values: range must have step > 0 and stop >= start");
    const auto n = static_cast<std::int64_t>(std::floor((stop - start) / step + 1.0 + 1e-9));
    for (std::int64_t i = 0; i < n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  std::istringstream is(s);
  std::string token;
  while (std::getline(is, token, ',')) out.push_back(detail::parse_double("values", detail::trim(token)));
  return out;
}

/// Q lists: "10", "5,7,10", or a range "5..10".
inline std::vector<int> parse_q_list(const std::string& spec) {
  const std::string s = detail::trim(spec);
  if (s.empty()) throw ConfigInvalid("q: empty list");
  std::vector<int> out;
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const auto lo = detail::parse_int("q", detail::trim(s.substr(0, dots)));
    const auto hi = detail::parse_int("q", detail::trim(s.substr(dots + 2)));
    if (hi < lo) throw ConfigInvalid("q: range upper bound below lower bound");
    for (std::int64_t q = lo; q <= hi; ++q) out.push_back(static_cast<int>(q));
    return out;
  }
  std::istringstream is(s);
  std::string token;
  while (std::getline(is, token, ','))
    out.push_back(static_cast<int>(detail::parse_int("q", detail::trim(token))));
  return out;
}

inline void validate(const AppConfig& cfg) {
  const FormationConfig& f = cfg.formation;
  if (!(f.h_earth_km > 0.0)) throw ConfigInvalid("h_earth_km: must be positive");
  if (!(f.h_orbit_km > 0.0)) throw ConfigInvalid("h_orbit_km: must be positive");
  if (!(f.arc_spacing_km > 0.0)) throw ConfigInvalid("arc_spacing_km: must be positive");
  if (f.n_cam < 2) throw ConfigInvalid("n_cam: must be >= 2");
  if (!(f.intrinsics.phi_x_deg > 0.0 && f.intrinsics.phi_x_deg < 180.0))
    throw ConfigInvalid("phi_x_deg: must be in (0, 180)");
  if (!(f.intrinsics.phi_y_deg > 0.0 && f.intrinsics.phi_y_deg <= f.intrinsics.phi_x_deg))
    throw ConfigInvalid("phi_y_deg: must be in (0, phi_x_deg]");
  if (!(cfg.fov_wx_km > 0.0 && cfg.fov_wy_km > 0.0 && cfg.fov_wy_km <= cfg.fov_wx_km))
    throw ConfigInvalid("fov_wy_km: footprint dims must satisfy 0 < fov_wy_km <= fov_wx_km");

  const EnsembleConfig& e = cfg.ensemble;
  if (e.n_mc < 1) throw ConfigInvalid("n_mc: must be >= 1");
  if (!(e.noise.ape_deg >= 0.0)) throw ConfigInvalid("ape_deg: must be >= 0");
  const ConnectivityCriteria& g = e.criteria;
  if (!(g.t_threshold >= 0.0 && g.t_threshold <= 1.0))
    throw ConfigInvalid("t_threshold: must be in [0, 1]");
  if (!(g.d_max_km > 0.0)) throw ConfigInvalid("d_max_km: must be positive");
  if (!(g.mu_max_deg >= 0.0 && g.mu_max_deg <= 180.0))
    throw ConfigInvalid("mu_max_deg: must be in [0, 180]");
  if (cfg.threads < 0) throw ConfigInvalid("threads: must be >= 0");

  const SweepSpec& sw = cfg.sweep;
  if (sw.values.empty()) throw ConfigInvalid("values: must be nonempty");
  for (std::size_t i = 1; i < sw.values.size(); ++i)
    if (!(sw.values[i] > sw.values[i - 1]))
      throw ConfigInvalid("values: must be strictly increasing");
  if (sw.q_report.empty()) throw ConfigInvalid("q: must be nonempty");
  for (int q : sw.q_report)
    if (q < 1 || q > f.n_cam) throw ConfigInvalid("q: entries must be in [1, n_cam]");
  switch (sw.axis) {
    case SweepAxis::ape:
      if (sw.values.front() < 0.0) throw ConfigInvalid("values: ape sweep values must be >= 0");
      break;
    case SweepAxis::fov:
      if (!(sw.values.front() > 0.0)) throw ConfigInvalid("values: fov sweep values must be > 0");
      break;
    case SweepAxis::t:
      if (sw.values.front() < 0.0 || sw.values.back() > 1.0)
        throw ConfigInvalid("values: t sweep values must be in [0, 1]");
      break;
    case SweepAxis::q:
      for (double v : sw.values) {
        if (std::abs(v - std::round(v)) > 1e-9 || v < 1.0 || v > f.n_cam)
          throw ConfigInvalid("values: q sweep values must be integers in [1, n_cam]");
      }
      break;
  }
}

/// Parse a key = value config with [formation] [noise] [graph] [ensemble]
/// [sweep] sections; omitted keys keep their defaults. Unknown sections or
/// keys are errors.
inline AppConfig parse_config_text(const std::string& text) {
  AppConfig cfg;
  double phi_x = 0.0, phi_y = 0.0;
  bool phi_x_set = false, phi_y_set = false;
  bool wx_set = false, wy_set = false;

  std::istringstream is(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find_first_of("#;"); hash != std::string::npos)
      line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigParse("line " + std::to_string(line_no) + ": unterminated section header");
      section = detail::trim(line.substr(1, line.size() - 2));
      if (section != "formation" && section != "noise" && section != "graph" &&
          section != "ensemble" && section != "sweep")
        throw ConfigInvalid("unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigParse("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigParse("line " + std::to_string(line_no) + ": empty key or value");

    if (section == "formation") {
      if (key == "h_earth_km") cfg.formation.h_earth_km = detail::parse_double(key, value);
      else if (key == "h_orbit_km") cfg.formation.h_orbit_km = detail::parse_double(key, value);
      else if (key == "arc_spacing_km") cfg.formation.arc_spacing_km = detail::parse_double(key, value);
      else if (key == "n_cam") cfg.formation.n_cam = static_cast<int>(detail::parse_int(key, value));
      else if (key == "fov_wx_km") { cfg.fov_wx_km = detail::parse_double(key, value); wx_set = true; }
      else if (key == "fov_wy_km") { cfg.fov_wy_km = detail::parse_double(key, value); wy_set = true; }
      else if (key == "phi_x_deg") { phi_x = detail::parse_double(key, value); phi_x_set = true; }
      else if (key == "phi_y_deg") { phi_y = detail::parse_double(key, value); phi_y_set = true; }
      else throw ConfigInvalid("unknown key '" + key + "' in section [formation]");
    } else if (section == "noise") {
      if (key == "ape_deg") cfg.ensemble.noise.ape_deg = detail::parse_double(key, value);
      else if (key == "ape_model") {
        if (value == "pointing") cfg.ensemble.noise.model = ApeModel::pointing;
        else if (value == "rotation") cfg.ensemble.noise.model = ApeModel::rotation;
        else throw ConfigInvalid("ape_model: must be pointing|rotation, got '" + value + "'");
      }
      else throw ConfigInvalid("unknown key '" + key + "' in section [noise]");
    } else if (section == "graph") {
      if (key == "t_threshold") cfg.ensemble.criteria.t_threshold = detail::parse_double(key, value);
      else if (key == "similarity_mode") {
        if (value == "baseline") cfg.ensemble.criteria.similarity_mode = SimilarityMode::baseline;
        else if (value == "angular") cfg.ensemble.criteria.similarity_mode = SimilarityMode::angular;
        else throw ConfigInvalid("similarity_mode: must be baseline|angular, got '" + value + "'");
      }
      else if (key == "d_max_km") cfg.ensemble.criteria.d_max_km = detail::parse_double(key, value);
      else if (key == "mu_max_deg") cfg.ensemble.criteria.mu_max_deg = detail::parse_double(key, value);
      else if (key == "require_anchor_in_component")
        cfg.ensemble.criteria.require_anchor_in_component = detail::parse_bool(key, value);
      else throw ConfigInvalid("unknown key '" + key + "' in section [graph]");
    } else if (section == "ensemble") {
      if (key == "n_mc") cfg.ensemble.n_mc = detail::parse_int(key, value);
      else if (key == "master_seed") { cfg.ensemble.master_seed = detail::parse_u64(key, value); cfg.seed_set = true; }
      else if (key == "threads") cfg.threads = static_cast<int>(detail::parse_int(key, value));
      else throw ConfigInvalid("unknown key '" + key + "' in section [ensemble]");
    } else if (section == "sweep") {
      if (key == "axis") cfg.sweep.axis = parse_axis(value);
      else if (key == "values") cfg.sweep.values = parse_values(value);
      else if (key == "q") cfg.sweep.q_report = parse_q_list(value);
      else throw ConfigInvalid("unknown key '" + key + "' in section [sweep]");
    } else {
      throw ConfigParse("line " + std::to_string(line_no) + ": key outside any section");
    }
  }

  if ((phi_x_set || phi_y_set) && (wx_set || wy_set))
    throw ConfigInvalid("phi_x_deg/phi_y_deg and fov_wx_km/fov_wy_km are mutually exclusive");
  if (phi_x_set != phi_y_set)
    throw ConfigInvalid("phi_x_deg and phi_y_deg must be given together");

  try {
    if (phi_x_set) {
      cfg.fov_from_angles = true;
      cfg.formation.intrinsics = CameraIntrinsics::from_fov_deg(phi_x, phi_y);
      const auto [wx, wy] = anchor_footprint_dims(cfg.formation.intrinsics, cfg.formation.h_orbit_km);
      cfg.fov_wx_km = wx;
      cfg.fov_wy_km = wy;
    } else {
      if (!(cfg.fov_wx_km > 0.0 && cfg.fov_wy_km > 0.0 && cfg.fov_wy_km <= cfg.fov_wx_km))
        throw ConfigInvalid("fov_wy_km: footprint dims must satisfy 0 < fov_wy_km <= fov_wx_km");
      cfg.formation.intrinsics =
          CameraIntrinsics::from_footprint(cfg.fov_wx_km, cfg.fov_wy_km, cfg.formation.h_orbit_km);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigInvalid(e.what());
  }

  validate(cfg);
  return cfg;
}

inline AppConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

/// Resolved configuration echoed back in config-file syntax (--dry-run).
inline std::string to_ini(const AppConfig& cfg) {
  std::ostringstream os;
  os.precision(15);
  os << "[formation]\n"
     << "h_earth_km = " << cfg.formation.h_earth_km << "\n"
     << "h_orbit_km = " << cfg.formation.h_orbit_km << "\n"
     << "arc_spacing_km = " << cfg.formation.arc_spacing_km << "\n"
     << "n_cam = " << cfg.formation.n_cam << "\n";
  if (cfg.fov_from_angles)
    os << "phi_x_deg = " << cfg.formation.intrinsics.phi_x_deg << "\n"
       << "phi_y_deg = " << cfg.formation.intrinsics.phi_y_deg << "\n";
  else
    os << "fov_wx_km = " << cfg.fov_wx_km << "\n"
       << "fov_wy_km = " << cfg.fov_wy_km << "\n";
  os << "\n[noise]\n"
     << "ape_deg = " << cfg.ensemble.noise.ape_deg << "\n"
     << "ape_model = " << (cfg.ensemble.noise.model == ApeModel::pointing ? "pointing" : "rotation")
     << "\n";
  os << "\n[graph]\n"
     << "t_threshold = " << cfg.ensemble.criteria.t_threshold << "\n"
     << "similarity_mode = "
     << (cfg.ensemble.criteria.similarity_mode == SimilarityMode::baseline ? "baseline" : "angular")
     << "\n"
     << "d_max_km = " << cfg.ensemble.criteria.d_max_km << "\n"
     << "mu_max_deg = " << cfg.ensemble.criteria.mu_max_deg << "\n"
     << "require_anchor_in_component = "
     << (cfg.ensemble.criteria.require_anchor_in_component ? "true" : "false") << "\n";
  os << "\n[ensemble]\n"
     << "n_mc = " << cfg.ensemble.n_mc << "\n"
     << "master_seed = " << cfg.ensemble.master_seed << "\n"
     << "threads = " << cfg.threads << "\n";
  os << "\n[sweep]\n"
     << "axis = " << to_string(cfg.sweep.axis) << "\n"
     << "values = ";
  for (std::size_t i = 0; i < cfg.sweep.values.size(); ++i)
    os << (i ? "," : "") << cfg.sweep.values[i];
  os << "\nq = ";
  for (std::size_t i = 0; i < cfg.sweep.q_report.size(); ++i)
    os << (i ? "," : "") << cfg.sweep.q_report[i];
  os << "\n";
  return os.str();
}

}  // namespace fovlap
