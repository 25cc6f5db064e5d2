// Shared test helpers: deterministic polygon generators and the
// stratified-sampling area oracle used to cross-check the clipping kernel.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fovlap/overlap.hpp"
#include "fovlap/rng.hpp"

namespace fovlap_test {

using fovlap::FootprintPolygon;
using fovlap::Point2;
using fovlap::StreamRng;

inline FootprintPolygon make_rect(double cx, double cy, double wx, double wy) {
  FootprintPolygon p;
  p.vertices = {{cx - wx / 2, cy - wy / 2},
                {cx + wx / 2, cy - wy / 2},
                {cx + wx / 2, cy + wy / 2},
                {cx - wx / 2, cy + wy / 2}};
  p.valid = true;
  return p;
}

// Random convex quad: four angularly sorted points on a circle. Angle gaps
// are bounded below so the quad never degenerates into a sliver.
inline FootprintPolygon random_convex_quad(StreamRng& rng, double cx, double cy, double radius) {
  std::vector<double> ang;
  for (;;) {
    ang = {rng.next_unit(), rng.next_unit(), rng.next_unit(), rng.next_unit()};
    for (double& a : ang) a *= 2.0 * std::numbers::pi;
    std::sort(ang.begin(), ang.end());
    double min_gap = 2.0 * std::numbers::pi + ang[0] - ang[3];
    for (int i = 1; i < 4; ++i) min_gap = std::min(min_gap, ang[i] - ang[i - 1]);
    if (min_gap > 0.3) break;
  }
  FootprintPolygon p;
  for (double a : ang) p.vertices.push_back({cx + radius * std::cos(a), cy + radius * std::sin(a)});
  p.valid = true;
  return p;
}

inline bool point_in_convex_ccw(const FootprintPolygon& poly, double x, double y) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % n];
    if ((b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x) < 0.0) return false;
  }
  return true;
}

// Intersection-area estimate by stratified (jittered-grid) sampling over the
// overlap of the two bounding boxes. Independent of the clipping kernel.
inline double mc_intersection_area(const FootprintPolygon& a, const FootprintPolygon& b,
                                   StreamRng& rng, int grid = 400) {
  auto bbox = [](const FootprintPolygon& p, double& lo_x, double& lo_y, double& hi_x, double& hi_y) {
    lo_x = lo_y = 1e300;
    hi_x = hi_y = -1e300;
    for (const Point2& v : p.vertices) {
      lo_x = std::min(lo_x, v.x);
      hi_x = std::max(hi_x, v.x);
      lo_y = std::min(lo_y, v.y);
      hi_y = std::max(hi_y, v.y);
    }
  };
  double ax0, ay0, ax1, ay1, bx0, by0, bx1, by1;
  bbox(a, ax0, ay0, ax1, ay1);
  bbox(b, bx0, by0, bx1, by1);
  const double x0 = std::max(ax0, bx0), x1 = std::min(ax1, bx1);
  const double y0 = std::max(ay0, by0), y1 = std::min(ay1, by1);
  if (x0 >= x1 || y0 >= y1) return 0.0;
  const double dx = (x1 - x0) / grid;
  const double dy = (y1 - y0) / grid;
  long hits = 0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double x = x0 + (i + rng.next_unit()) * dx;
      const double y = y0 + (j + rng.next_unit()) * dy;
      if (point_in_convex_ccw(a, x, y) && point_in_convex_ccw(b, x, y)) ++hits;
    }
  }
  return (x1 - x0) * (y1 - y0) * static_cast<double>(hits) /
         (static_cast<double>(grid) * grid);
}

}  // namespace fovlap_test
