// Copyright 2026 The Tempo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Monte Carlo estimates of collision probability and randomized tracking
// trials. All sampling is seeded; equal seeds give equal results.

#ifndef TEMPO_MC_H_
#define TEMPO_MC_H_

#include <cstdint>
#include <span>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "tempo/chance.h"
#include "tempo/gridmap.h"
#include "tempo/traj.h"

namespace tempo::mc {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct McConfig {
  int n_samples = 100000;
  uint64_t seed = 0;

  absl::Status Validate() const;
};

struct Estimate {
  double probability = 0.0;
  // Binomial standard error sqrt(p (1 - p) / n).
  double std_error = 0.0;
};

// Fraction of draws d ~ N(p_mean - o_mean, sigma_p + sigma_o) with
// |d|_Qc <= 1.
absl::StatusOr<Estimate> EmpiricalCollisionProbability(
    const Vec3& p_mean, const Vec3& o_mean, const Mat3& sigma_p,
    const Mat3& sigma_o, const chance::SafetyEllipsoid& e,
    const McConfig& cfg);

struct TrialReport {
  int runs = 0;
  int collisions = 0;
  double rate = 0.0;
  std::vector<bool> collided;         // per run
  std::vector<double> min_clearance;  // per run, m to the nearest obstacle
};

// One tracking run per trajectory, seeded with cfg.seed + run index. Every
// knot is perturbed independently with isotropic (or per-axis, following
// `u.mode`) Gaussian noise of std s(|v|); a run collides when any perturbed
// knot lies within the safety ellipsoid of its nearest occupied voxel center.
// cfg.n_samples is unused.
absl::StatusOr<TrialReport> RunCollisionTrials(
    const gridmap::VoxelMap& world,
    std::span<const traj::ReparamTrajectory> trajectories,
    const chance::UncertaintyModel& u, const chance::SafetyEllipsoid& e,
    const McConfig& cfg);

nlohmann::json ToJson(const TrialReport& report);

struct ForestConfig {
  Vec3 extent = Vec3(20.0, 20.0, 2.0);  // m, from the origin
  double density = 0.025;               // pillars per m^2 of footprint
  double radius = 0.25;                 // m
  double resolution = 0.1;              // m
  uint64_t seed = 0;
};

struct Pillar {
  double x = 0.0;
  double y = 0.0;
  double radius = 0.0;
};

struct Forest {
  gridmap::VoxelMap map;
  std::vector<Pillar> pillars;
};

// Vertical cylinders with uniformly drawn centers, rasterized by voxel
// center. Pillar count is round(density * extent.x * extent.y).
absl::StatusOr<Forest> GenerateForest(const ForestConfig& cfg);

}  // namespace tempo::mc

#endif  // TEMPO_MC_H_
