#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "fovlap/errors.hpp"
#include "fovlap/rng.hpp"

namespace fovlap {

inline constexpr double deg_to_rad(double deg) { return deg * (std::numbers::pi / 180.0); }
inline constexpr double rad_to_deg(double rad) { return rad * (180.0 / std::numbers::pi); }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }
inline Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
inline Vec3 operator*(const Vec3& v, double s) { return s * v; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  return (n > 0.0) ? (1.0 / n) * v : v;
}

/// Angle between two nonzero vectors, in degrees, in [0, 180]. atan2 keeps
/// full precision near 0 and 180 where acos degrades.
inline double angle_between_deg(const Vec3& a, const Vec3& b) {
  return rad_to_deg(std::atan2(norm(cross(a, b)), dot(a, b)));
}

// 3x3 rotation matrix, row-major storage.
struct Rotation3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  double operator()(int r, int c) const { return m[3 * r + c]; }
  double& operator()(int r, int c) { return m[3 * r + c]; }

  static Rotation3 identity() { return {}; }

  static Rotation3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    Rotation3 r;
    r.m = {c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z};
    return r;
  }

  Vec3 apply(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }

  Vec3 column(int j) const { return {m[j], m[3 + j], m[6 + j]}; }

  // Camera axes expressed in the setup frame: the columns of R.
  Vec3 x_axis() const { return column(0); }
  Vec3 y_axis() const { return column(1); }
  Vec3 z_axis() const { return column(2); }

  Rotation3 transposed() const {
    Rotation3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
};

inline Rotation3 operator*(const Rotation3& a, const Rotation3& b) {
  Rotation3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
  return r;
}

inline double determinant(const Rotation3& r) {
  return r(0, 0) * (r(1, 1) * r(2, 2) - r(1, 2) * r(2, 1)) -
         r(0, 1) * (r(1, 0) * r(2, 2) - r(1, 2) * r(2, 0)) +
         r(0, 2) * (r(1, 0) * r(2, 1) - r(1, 1) * r(2, 0));
}

/// max |RᵀR - I| entry; 0 for a perfectly orthonormal matrix.
inline double orthonormality_error(const Rotation3& r) {
  const Rotation3 g = r.transposed() * r;
  double err = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) err = std::max(err, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return err;
}

// How the absolute pointing error maps onto the sampled rotation.
//   pointing: rotation axis uniform in the plane perpendicular to the
//             commanded boresight; ape_deg is the standard deviation of the
//             angle between commanded and actual boresight.
//   rotation: rotation axis uniform on the unit sphere; ape_deg is the
//             standard deviation of the rotation angle about that axis (the
//             realized boresight error is then ~0.8x smaller).
enum class ApeModel { pointing, rotation };

struct NoiseModel {
  double ape_deg = 0.0;  // standard deviation, degrees
  ApeModel model = ApeModel::pointing;
};

struct PerturbationSample {
  Vec3 axis{0.0, 0.0, 1.0};  // unit rotation axis
  double angle_deg = 0.0;
};

// Sensor pixel columns point along -y in the camera frame.
inline constexpr Vec3 kDefaultUpHint{0.0, -1.0, 0.0};

/// Rotation taking camera-frame vectors to the setup frame, with the camera
/// z axis (boresight) aimed from camera_position at target.
inline Rotation3 look_at(const Vec3& camera_position, const Vec3& target,
                         const Vec3& up_hint = kDefaultUpHint) {
  const Vec3 to_target = target - camera_position;
  const double range = norm(to_target);
  if (range < 1e-12) throw DegenerateLookAt("look_at: camera coincides with the target");
  const Vec3 boresight = (1.0 / range) * to_target;

  const Vec3 side = cross(normalized(up_hint), boresight);
  const double side_norm = norm(side);
  if (side_norm < 1e-9) throw DegenerateLookAt("look_at: up hint is parallel to the boresight");
  const Vec3 x_cam = (1.0 / side_norm) * side;
  const Vec3 y_cam = cross(boresight, x_cam);
  return Rotation3::from_columns(x_cam, y_cam, boresight);
}

/// Uniform direction on the unit sphere (normalized Gaussian triple).
inline Vec3 sample_unit_sphere(StreamRng& rng) {
  for (;;) {
    const Vec3 g{rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian()};
    const double n = norm(g);
    if (n > 1e-6) return (1.0 / n) * g;
  }
}

/// Rotation-model perturbation: axis uniform on the sphere, angle drawn
/// from N(0, ape_deg). With ape_deg = 0 the angle is exactly zero.
inline PerturbationSample sample_perturbation(const NoiseModel& noise, StreamRng& rng) {
  PerturbationSample p;
  p.axis = sample_unit_sphere(rng);
  p.angle_deg = noise.ape_deg * rng.next_gaussian();
  return p;
}

/// Pointing-model perturbation: axis uniform on the circle perpendicular to
/// the commanded boresight, so the boresight deflection equals |angle| and
/// ape_deg is the standard deviation of the realized pointing error.
inline PerturbationSample sample_pointing_perturbation(const NoiseModel& noise,
                                                       const Vec3& boresight, StreamRng& rng) {
  const Vec3 b = normalized(boresight);
  const Vec3 seed_axis = std::abs(b.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  const Vec3 e1 = normalized(cross(seed_axis, b));
  const Vec3 e2 = cross(b, e1);
  const double phi = 2.0 * std::numbers::pi * rng.next_unit();
  PerturbationSample p;
  p.axis = std::cos(phi) * e1 + std::sin(phi) * e2;
  p.angle_deg = noise.ape_deg * rng.next_gaussian();
  return p;
}

/// Rotation by angle_deg about the unit axis (axis-angle to matrix).
inline Rotation3 rodrigues(const PerturbationSample& p) {
  if (std::abs(norm(p.axis) - 1.0) > 1e-9)
    throw NonUnitAxis("rodrigues: rotation axis is not unit length");
  const double th = deg_to_rad(p.angle_deg);
  const double c = std::cos(th);
  const double s = std::sin(th);
  const double k = 1.0 - c;
  const double wx = p.axis.x, wy = p.axis.y, wz = p.axis.z;
  Rotation3 r;
  r(0, 0) = c + wx * wx * k;
  r(0, 1) = wx * wy * k - wz * s;
  r(0, 2) = wx * wz * k + wy * s;
  r(1, 0) = wx * wy * k + wz * s;
  r(1, 1) = c + wy * wy * k;
  r(1, 2) = wy * wz * k - wx * s;
  r(2, 0) = wx * wz * k - wy * s;
  r(2, 1) = wy * wz * k + wx * s;
  r(2, 2) = c + wz * wz * k;
  return r;
}

/// Apply a perturbation on top of an ideal orientation: R' = delta * ideal.
inline Rotation3 perturb(const Rotation3& ideal, const Rotation3& delta) { return delta * ideal; }

}  // namespace fovlap
