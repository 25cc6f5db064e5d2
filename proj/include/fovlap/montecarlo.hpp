#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

#include "fovlap/calib_graph.hpp"
#include "fovlap/scenario.hpp"

namespace fovlap {

struct EnsembleConfig {
  std::int64_t n_mc = 100;
  std::uint64_t master_seed = 0;
  NoiseModel noise;
  ConnectivityCriteria criteria;
};

// One Monte Carlo realization: perturbed poses, their footprints, and the
// derived overlap report and connectivity graph.
struct SetupSample {
  std::int64_t sample_index = 0;
  std::vector<CameraPose> perturbed_poses;
  std::vector<FootprintPolygon> footprints;
  OverlapReport report;
  CalibGraph graph;
  int miss_count = 0;  // cameras whose footprint missed the surface
  bool anchor_miss = false;
};

// Per-sample reduction record; kept index-ordered so ensemble statistics are
// identical for any worker count.
struct SampleSummary {
  std::int64_t sample_index = 0;
  double ao_km2 = 0.0;
  double ro = 0.0;
  int largest_component = 0;
  int anchor_component = 0;
  int counted_component = 0;
  int miss_count = 0;
  bool anchor_miss = false;
};

struct EnsembleStats {
  std::int64_t n_mc = 0;
  double mean_ao = 0.0;
  double mean_ro = 0.0;
  double std_ro = 0.0;  // population standard deviation; 0 for a single sample
  ComponentHistogram histogram;
  std::int64_t miss_count = 0;         // missed footprints summed over the ensemble
  std::int64_t anchor_miss_count = 0;  // samples failed because the anchor missed
};

/// Evaluate one sample. Fully determined by (master_seed, sample_index);
/// per-camera noise streams are keyed by (master_seed, sample_index, camera)
/// so changing the camera count does not reshuffle other cameras' draws.
/// An anchor miss flags the sample failed (ro = 0) rather than throwing.
inline SetupSample run_sample(const Scenario& setup, const EnsembleConfig& config,
                              std::int64_t sample_index) {
  const int n = setup.n_cameras();
  SetupSample s;
  s.sample_index = sample_index;
  s.perturbed_poses.reserve(n);
  s.footprints.reserve(n);
  for (int c = 0; c < n; ++c) {
    StreamRng rng(camera_stream(config.master_seed, static_cast<std::uint64_t>(sample_index),
                                static_cast<std::uint64_t>(c)));
    const PerturbationSample p =
        config.noise.model == ApeModel::pointing
            ? sample_pointing_perturbation(config.noise, setup.ideal_rotations[c].z_axis(), rng)
            : sample_perturbation(config.noise, rng);
    const CameraPose pose{setup.positions[c], perturb(setup.ideal_rotations[c], rodrigues(p)), c};
    FootprintPolygon fp =
        project_footprint(pose, frustum_rays(setup.intrinsics, pose), setup.surface_height_km);
    if (!fp.valid) ++s.miss_count;
    s.perturbed_poses.push_back(pose);
    s.footprints.push_back(std::move(fp));
  }
  s.report = overlap_report_allow_miss(s.footprints, setup.anchor_index);
  s.anchor_miss = s.report.anchor_miss;
  s.graph = build_graph(s.report, setup.ideal_poses(), config.criteria);
  return s;
}

inline SampleSummary summarize(const SetupSample& s) {
  return {s.sample_index,
          s.report.ao,
          s.report.ro,
          s.graph.largest_component_size,
          s.graph.anchor_component_size,
          s.graph.counted_component_size,
          s.miss_count,
          s.anchor_miss};
}

/// Evaluate all samples of the ensemble, optionally in parallel. Workers
/// fill disjoint ranges of the index-ordered result array; output does not
/// depend on the worker count.
inline std::vector<SampleSummary> run_samples(const Scenario& setup, const EnsembleConfig& config,
                                              int threads = 1) {
  if (config.n_mc <= 0) throw EmptyEnsemble("run_samples: n_mc must be positive");
  const std::int64_t n = config.n_mc;
  std::vector<SampleSummary> out(static_cast<std::size_t>(n));

  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (static_cast<std::int64_t>(workers) > n) workers = static_cast<int>(n);

  auto fill = [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i)
      out[static_cast<std::size_t>(i)] = summarize(run_sample(setup, config, i));
  };

  if (workers == 1) {
    fill(0, n);
    return out;
  }

  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = n * w / workers;
    const std::int64_t hi = n * (w + 1) / workers;
    pool.emplace_back([&, w, lo, hi] {
      try {
        fill(lo, hi);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

/// Sequential, order-fixed reduction of per-sample records. Anchor-miss
/// samples count toward n_mc with ro = 0.
inline EnsembleStats reduce(const std::vector<SampleSummary>& samples) {
  if (samples.empty()) throw EmptyEnsemble("reduce: no samples");
  EnsembleStats st;
  st.n_mc = static_cast<std::int64_t>(samples.size());
  double sum_ao = 0.0;
  double sum_ro = 0.0;
  for (const SampleSummary& s : samples) {
    sum_ao += s.ao_km2;
    sum_ro += s.ro;
    ++st.histogram.counts[s.counted_component];
    st.miss_count += s.miss_count;
    st.anchor_miss_count += s.anchor_miss ? 1 : 0;
  }
  st.histogram.n_mc = st.n_mc;
  const double n = static_cast<double>(st.n_mc);
  st.mean_ao = sum_ao / n;
  st.mean_ro = sum_ro / n;
  double ss = 0.0;
  for (const SampleSummary& s : samples) {
    const double d = s.ro - st.mean_ro;
    ss += d * d;
  }
  st.std_ro = std::sqrt(ss / n);
  return st;
}

inline EnsembleStats run_ensemble(const Scenario& setup, const EnsembleConfig& config,
                                  int threads = 1) {
  return reduce(run_samples(setup, config, threads));
}

}  // namespace fovlap
