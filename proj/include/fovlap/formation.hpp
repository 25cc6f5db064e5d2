#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fovlap/scenario.hpp"

namespace fovlap {

// String-of-pearls formation: n_cam stations spaced arc_spacing_km apart on
// a circular orbit, all commanded to point at the origin of the setup frame.
struct FormationConfig {
  double h_earth_km = 6371.0;
  double h_orbit_km = 500.0;
  double arc_spacing_km = 100.0;
  int n_cam = 10;
  CameraIntrinsics intrinsics = CameraIntrinsics::from_footprint(100.0, 70.0, 500.0);

  double orbit_radius_km() const { return h_earth_km + h_orbit_km; }
  double delta_xi_rad() const { return arc_spacing_km / orbit_radius_km(); }
};

/// Station positions along the orbit arc, km in the setup frame. Stations
/// are indexed 1..n along the arc; for an even count station n/2 sits at the
/// nadir point, for an odd count the middle one does.
inline std::vector<Vec3> camera_positions(const FormationConfig& cfg) {
  if (cfg.n_cam < 1) throw std::invalid_argument("camera_positions: n_cam must be >= 1");
  const double orbit_radius = cfg.orbit_radius_km();
  const double dxi = cfg.delta_xi_rad();
  const double center = (cfg.n_cam % 2 == 0) ? cfg.n_cam / 2.0 : (cfg.n_cam + 1) / 2.0;
  std::vector<Vec3> positions;
  positions.reserve(static_cast<std::size_t>(cfg.n_cam));
  for (int c = 1; c <= cfg.n_cam; ++c) {
    const double xi = (c - center) * dxi;
    positions.push_back(
        {orbit_radius * std::sin(xi), 0.0, orbit_radius * std::cos(xi) - cfg.h_earth_km});
  }
  return positions;
}

/// Index of the camera closest to the observed domain (the origin); ties go
/// to the lowest index.
inline int select_anchor(const std::vector<Vec3>& positions) {
  if (positions.empty()) throw EmptySetup("select_anchor: no cameras");
  int best = 0;
  double best_dist = norm(positions[0]);
  for (int i = 1; i < static_cast<int>(positions.size()); ++i) {
    const double d = norm(positions[i]);
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

/// Euclidean distance between two stations, km.
inline double pairwise_baseline(const std::vector<Vec3>& positions, int c, int c2) {
  if (c < 0 || c2 < 0 || c >= static_cast<int>(positions.size()) ||
      c2 >= static_cast<int>(positions.size()))
    throw std::out_of_range("pairwise_baseline: camera index out of range");
  return norm(positions[c] - positions[c2]);
}

/// Scenario for the formation: every camera commanded to look at the origin.
inline Scenario build_scenario(const FormationConfig& cfg) {
  Scenario sc;
  sc.positions = camera_positions(cfg);
  sc.intrinsics = cfg.intrinsics;
  sc.anchor_index = select_anchor(sc.positions);
  sc.ideal_rotations.reserve(sc.positions.size());
  for (const Vec3& p : sc.positions) sc.ideal_rotations.push_back(look_at(p, {0.0, 0.0, 0.0}));
  return sc;
}

}  // namespace fovlap
