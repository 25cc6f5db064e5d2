#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "fovlap/overlap.hpp"

namespace fovlap {

// Disjoint set union with path compression and union by rank; sits in the
// per-sample hot loop.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::size_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
};

enum class SimilarityMode { angular, baseline };

// Edge requirements for the calibration-connectivity graph: minimum pairwise
// overlap plus a viewpoint-similarity bound (angular separation or camera
// baseline, depending on the mode).
struct ConnectivityCriteria {
  double t_threshold = 0.8;
  SimilarityMode similarity_mode = SimilarityMode::baseline;
  double mu_max_deg = 180.0;  // active in angular mode
  double d_max_km = 200.0;    // active in baseline mode
  // Count the component containing the anchor instead of the largest one.
  bool require_anchor_in_component = false;
};

struct CalibGraph {
  int n_nodes = 0;
  std::vector<std::vector<bool>> adjacency;
  std::vector<int> component_labels;
  int largest_component_size = 0;
  int anchor_component_size = 0;   // 0 when the anchor is unknown
  int counted_component_size = 0;  // the size fed into the ensemble histogram
};

/// Angular separation of two commanded boresights, degrees in [0, 180].
inline double pairwise_angle(const CameraPose& pose_a, const CameraPose& pose_b) {
  return angle_between_deg(pose_a.rotation.z_axis(), pose_b.rotation.z_axis());
}

/// Connectivity graph of one sample. Edges use the perturbed pairwise
/// overlaps from the report and the similarity bound from the ideal
/// (commanded) poses.
inline CalibGraph build_graph(const OverlapReport& report,
                              const std::vector<CameraPose>& ideal_poses,
                              const ConnectivityCriteria& criteria) {
  const int n = static_cast<int>(ideal_poses.size());
  if (static_cast<int>(report.pairwise_ro.size()) != n)
    throw std::invalid_argument("build_graph: report/poses length mismatch");

  CalibGraph g;
  g.n_nodes = n;
  g.adjacency.assign(n, std::vector<bool>(n, false));
  UnionFind uf(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    for (int c2 = c + 1; c2 < n; ++c2) {
      const bool similar =
          criteria.similarity_mode == SimilarityMode::baseline
              ? norm(ideal_poses[c].position - ideal_poses[c2].position) <= criteria.d_max_km
              : pairwise_angle(ideal_poses[c], ideal_poses[c2]) <= criteria.mu_max_deg;
      if (similar && report.pairwise_ro[c][c2] >= criteria.t_threshold) {
        g.adjacency[c][c2] = true;
        g.adjacency[c2][c] = true;
        uf.unite(static_cast<std::size_t>(c), static_cast<std::size_t>(c2));
      }
    }
  }

  g.component_labels.assign(n, -1);
  std::vector<int> component_size;
  std::map<std::size_t, int> root_label;
  for (int c = 0; c < n; ++c) {
    const std::size_t root = uf.find(static_cast<std::size_t>(c));
    auto [it, inserted] = root_label.try_emplace(root, static_cast<int>(component_size.size()));
    if (inserted) component_size.push_back(0);
    g.component_labels[c] = it->second;
    ++component_size[it->second];
  }
  for (int size : component_size) g.largest_component_size = std::max(g.largest_component_size, size);
  if (report.anchor_index >= 0 && report.anchor_index < n)
    g.anchor_component_size = component_size[g.component_labels[report.anchor_index]];
  g.counted_component_size = (criteria.require_anchor_in_component && g.anchor_component_size > 0)
                                 ? g.anchor_component_size
                                 : g.largest_component_size;
  return g;
}

// Ensemble histogram of counted component sizes.
struct ComponentHistogram {
  std::map<int, std::int64_t> counts;
  std::int64_t n_mc = 0;
};

inline void accumulate(ComponentHistogram& hist, const CalibGraph& graph) {
  ++hist.counts[graph.counted_component_size];
  ++hist.n_mc;
}

inline void merge(ComponentHistogram& into, const ComponentHistogram& other) {
  for (const auto& [size, count] : other.counts) into.counts[size] += count;
  into.n_mc += other.n_mc;
}

/// Probability that a sample has a connected component of at least q views:
/// the tail sum of the component-size histogram.
inline double p_calib(const ComponentHistogram& hist, int q) {
  if (hist.n_mc <= 0) throw EmptyEnsemble("p_calib: empty ensemble");
  std::int64_t tail = 0;
  for (const auto& [size, count] : hist.counts)
    if (size >= q) tail += count;
  return static_cast<double>(tail) / static_cast<double>(hist.n_mc);
}

}  // namespace fovlap
