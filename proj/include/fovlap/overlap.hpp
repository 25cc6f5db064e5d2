#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fovlap/camera.hpp"

namespace fovlap {

// On-edge classification distance for clipping, km (1 micron).
inline constexpr double kClipEps = 1e-9;

/// Convex-on-convex Sutherland-Hodgman clipping. Both polygons CCW; either
/// may be empty/invalid, and an empty intersection is a value, not an error.
inline FootprintPolygon convex_clip(const FootprintPolygon& subject, const FootprintPolygon& clip) {
  if (is_empty(subject) || is_empty(clip)) return {};
  std::vector<Point2> out = subject.vertices;
  std::vector<Point2> in;
  const std::vector<Point2>& cv = clip.vertices;
  const std::size_t m = cv.size();
  for (std::size_t e = 0; e < m && !out.empty(); ++e) {
    const Point2 a = cv[e];
    const Point2 b = cv[(e + 1) % m];
    const double ex = b.x - a.x;
    const double ey = b.y - a.y;
    const double edge_len = std::hypot(ex, ey);
    if (edge_len < kClipEps) continue;
    const double eps = kClipEps * edge_len;  // cross-product threshold at 1e-9 km distance

    in.swap(out);
    out.clear();
    const std::size_t n = in.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2& p = in[i];
      const Point2& q = in[(i + 1) % n];
      const double dp = ex * (p.y - a.y) - ey * (p.x - a.x);
      const double dq = ex * (q.y - a.y) - ey * (q.x - a.x);
      const bool p_in = dp >= -eps;
      const bool q_in = dq >= -eps;
      if (p_in != q_in) {
        const double t = dp / (dp - dq);
        out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
      }
      if (q_in) out.push_back(q);
    }
  }
  FootprintPolygon r;
  r.valid = out.size() >= 3;
  r.vertices = std::move(out);
  return r;
}

/// Shoelace area, km^2; 0 for empty or invalid polygons.
inline double polygon_area(const FootprintPolygon& p) {
  if (is_empty(p)) return 0.0;
  return 0.5 * std::abs(signed_area2(p.vertices));
}

/// Intersection of all footprints by iterative clipping.
inline FootprintPolygon intersect_all(const std::vector<FootprintPolygon>& footprints) {
  if (footprints.empty()) throw EmptySetup("intersect_all: no footprints");
  FootprintPolygon acc = footprints.front();
  for (std::size_t i = 1; i < footprints.size() && !is_empty(acc); ++i)
    acc = convex_clip(acc, footprints[i]);
  return acc;
}

/// Area of the common overlap of all footprints, km^2.
inline double absolute_overlap(const std::vector<FootprintPolygon>& footprints) {
  return polygon_area(intersect_all(footprints));
}

// Overlap measures of one sample: total overlap area, its ratio to the
// anchor footprint area, and the pairwise overlap matrix normalized by the
// smaller footprint of each pair.
struct OverlapReport {
  double ao = 0.0;           // km^2
  double ro = 0.0;           // in [0, 1]
  double anchor_area = 0.0;  // km^2
  std::vector<std::vector<double>> pairwise_ro;
  int anchor_index = -1;
  bool anchor_miss = false;  // anchor footprint missed the surface; ro forced to 0
};

inline std::vector<std::vector<double>> pairwise_ro_matrix(
    const std::vector<FootprintPolygon>& footprints) {
  const std::size_t n = footprints.size();
  std::vector<double> area(n);
  for (std::size_t i = 0; i < n; ++i) area[i] = polygon_area(footprints[i]);

  std::vector<std::vector<double>> ro(n, std::vector<double>(n, 0.0));
  for (std::size_t c = 0; c < n; ++c) {
    ro[c][c] = (!is_empty(footprints[c]) && area[c] > 0.0) ? 1.0 : 0.0;
    for (std::size_t c2 = c + 1; c2 < n; ++c2) {
      const double denom = std::min(area[c], area[c2]);
      if (denom <= 0.0) continue;
      const double inter = polygon_area(convex_clip(footprints[c], footprints[c2]));
      const double value = std::clamp(inter / denom, 0.0, 1.0);
      ro[c][c2] = value;
      ro[c2][c] = value;
    }
  }
  return ro;
}

/// Like overlap_report, but an invalid anchor flags the sample failed
/// (ro = 0) instead of throwing; pairwise overlaps are still reported so the
/// surviving connectivity can be analyzed.
inline OverlapReport overlap_report_allow_miss(const std::vector<FootprintPolygon>& footprints,
                                               int anchor_index) {
  if (footprints.empty()) throw EmptySetup("overlap_report: no footprints");
  if (anchor_index < 0 || anchor_index >= static_cast<int>(footprints.size()))
    throw std::out_of_range("overlap_report: anchor_index out of range");

  OverlapReport rep;
  rep.anchor_index = anchor_index;
  rep.pairwise_ro = pairwise_ro_matrix(footprints);
  rep.anchor_area = polygon_area(footprints[anchor_index]);
  if (is_empty(footprints[anchor_index]) || rep.anchor_area <= 0.0) {
    rep.anchor_miss = true;
    rep.anchor_area = 0.0;
    return rep;
  }
  rep.ao = absolute_overlap(footprints);
  rep.ro = std::clamp(rep.ao / rep.anchor_area, 0.0, 1.0);
  return rep;
}

inline OverlapReport overlap_report(const std::vector<FootprintPolygon>& footprints,
                                    int anchor_index) {
  OverlapReport rep = overlap_report_allow_miss(footprints, anchor_index);
  if (rep.anchor_miss) throw AnchorMiss("overlap_report: anchor footprint missed the surface");
  return rep;
}

}  // namespace fovlap
