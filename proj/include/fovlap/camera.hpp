#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fovlap/geometry.hpp"

namespace fovlap {

// Normalized pinhole intrinsics. The image plane sits at unitless focal
// length f_tilde = 1/tan(phi_x/2) with u in [-1, 1]; the v half-extent is the
// tangent ratio of the two half-FOVs, so a nadir footprint reproduces the
// closed-form ground rectangle exactly.
struct CameraIntrinsics {
  double phi_x_deg = 90.0;
  double phi_y_deg = 90.0;

  double f_tilde() const { return 1.0 / std::tan(deg_to_rad(phi_x_deg) / 2.0); }

  double phi_tilde() const {
    return std::tan(deg_to_rad(phi_y_deg) / 2.0) / std::tan(deg_to_rad(phi_x_deg) / 2.0);
  }

  static CameraIntrinsics from_fov_deg(double phi_x, double phi_y) {
    if (!(phi_x > 0.0 && phi_x < 180.0))
      throw std::invalid_argument("phi_x_deg must be in (0, 180), got " + std::to_string(phi_x));
    if (!(phi_y > 0.0 && phi_y <= phi_x))
      throw std::invalid_argument("phi_y_deg must be in (0, phi_x_deg], got " + std::to_string(phi_y));
    return {phi_x, phi_y};
  }

  // Angular FOV whose nadir ground footprint from altitude h_orbit_km is a
  // wx_km by wy_km rectangle.
  static CameraIntrinsics from_footprint(double wx_km, double wy_km, double h_orbit_km) {
    if (!(h_orbit_km > 0.0))
      throw std::invalid_argument("h_orbit_km must be positive, got " + std::to_string(h_orbit_km));
    if (!(wx_km > 0.0 && wy_km > 0.0 && wy_km <= wx_km))
      throw std::invalid_argument("footprint dims must satisfy 0 < wy <= wx");
    const double phi_x = 2.0 * rad_to_deg(std::atan(wx_km / (2.0 * h_orbit_km)));
    const double phi_y = 2.0 * rad_to_deg(std::atan(wy_km / (2.0 * h_orbit_km)));
    return {phi_x, phi_y};
  }
};

struct CameraPose {
  Vec3 position;       // km, setup frame
  Rotation3 rotation;  // camera frame -> setup frame
  int camera_id = 0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Planar convex polygon on the reference surface. Invalid means the frustum
// missed the surface; an invalid or sub-triangular polygon is the empty set.
struct FootprintPolygon {
  std::vector<Point2> vertices;  // CCW, km
  bool valid = false;
};

inline bool is_empty(const FootprintPolygon& p) { return !p.valid || p.vertices.size() < 3; }

/// Twice the signed area (positive for CCW vertex order).
inline double signed_area2(const std::vector<Point2>& v) {
  double s = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return s;
}

/// Direction, in the setup frame, of the ray through normalized image-plane
/// coordinates (u, v). Not normalized.
inline Vec3 pixel_ray(const CameraIntrinsics& intr, const CameraPose& pose, double u, double v) {
  const double v_max = intr.phi_tilde();
  constexpr double slack = 1e-12;
  if (std::abs(u) > 1.0 + slack || std::abs(v) > v_max + slack)
    throw PixelOutOfBounds("pixel_ray: (u, v) outside the normalized image plane");
  const double inv_f = 1.0 / intr.f_tilde();
  return pose.rotation.apply({u * inv_f, v * inv_f, 1.0});
}

/// The four frustum corner ray directions, ordered (-1, +v), (+1, +v),
/// (-1, -v), (+1, -v).
inline std::array<Vec3, 4> frustum_rays(const CameraIntrinsics& intr, const CameraPose& pose) {
  const double vt = intr.phi_tilde();
  return {pixel_ray(intr, pose, -1.0, vt), pixel_ray(intr, pose, 1.0, vt),
          pixel_ray(intr, pose, -1.0, -vt), pixel_ray(intr, pose, 1.0, -vt)};
}

/// Intersect the corner rays with the horizontal plane z = surface_height_km.
/// Returns an invalid polygon if any ray is parallel to the plane or hits it
/// behind the camera (a wildly mispointed sample), never throws.
inline FootprintPolygon project_footprint(const CameraPose& pose, const std::array<Vec3, 4>& rays,
                                          double surface_height_km = 0.0) {
  std::array<Point2, 4> hit;
  for (int i = 0; i < 4; ++i) {
    const Vec3& l = rays[i];
    if (std::abs(l.z) < 1e-12) return {};
    const double t = (surface_height_km - pose.position.z) / l.z;
    if (t <= 0.0) return {};
    hit[i] = {pose.position.x + t * l.x, pose.position.y + t * l.y};
  }
  FootprintPolygon fp;
  // corner rays in cyclic order around the image rectangle
  fp.vertices = {hit[0], hit[1], hit[3], hit[2]};
  if (signed_area2(fp.vertices) < 0.0) std::reverse(fp.vertices.begin(), fp.vertices.end());
  fp.valid = true;
  return fp;
}

/// Closed-form (width, height) in km of the nadir ground footprint.
inline std::pair<double, double> anchor_footprint_dims(const CameraIntrinsics& intr,
                                                       double h_orbit_km) {
  return {2.0 * h_orbit_km * std::tan(deg_to_rad(intr.phi_x_deg) / 2.0),
          2.0 * h_orbit_km * std::tan(deg_to_rad(intr.phi_y_deg) / 2.0)};
}

}  // namespace fovlap
