#pragma once

#include <vector>

#include "fovlap/camera.hpp"

namespace fovlap {

// Immutable description of a multi-view setup: camera stations, their
// commanded orientations, shared intrinsics, and the reference surface.
// Built once, then shared read-only across Monte Carlo workers.
struct Scenario {
  std::vector<Vec3> positions;            // km, setup frame
  std::vector<Rotation3> ideal_rotations;  // commanded look_at orientations
  CameraIntrinsics intrinsics;
  int anchor_index = 0;
  double surface_height_km = 0.0;

  int n_cameras() const { return static_cast<int>(positions.size()); }

  std::vector<CameraPose> ideal_poses() const {
    std::vector<CameraPose> poses;
    poses.reserve(positions.size());
    for (std::size_t c = 0; c < positions.size(); ++c)
      poses.push_back({positions[c], ideal_rotations[c], static_cast<int>(c)});
    return poses;
  }
};

}  // namespace fovlap
