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

#include "tempo/mc.h"

#include <cmath>
#include <limits>
#include <random>

#include "Eigen/Eigenvalues"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace tempo::mc {
namespace {

// L with L L^T = sigma, for symmetric positive semidefinite sigma.
absl::StatusOr<Mat3> CovarianceRoot(const Mat3& sigma) {
  if (!sigma.allFinite() ||
      (sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    return absl::InvalidArgumentError("covariance must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(sigma);
  const Vec3 lambda = eig.eigenvalues();
  if (lambda.minCoeff() < -1e-12 * std::max(1.0, lambda.maxCoeff())) {
    return absl::InvalidArgumentError(
        "covariance must be positive semidefinite");
  }
  return eig.eigenvectors() * lambda.cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

Vec3 StandardNormal(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  return Vec3(n01(rng), n01(rng), n01(rng));
}

}  // namespace

absl::Status McConfig::Validate() const {
  if (n_samples < 1) {
    return absl::InvalidArgumentError("n_samples must be at least 1");
  }
  return absl::OkStatus();
}

absl::StatusOr<Estimate> EmpiricalCollisionProbability(
    const Vec3& p_mean, const Vec3& o_mean, const Mat3& sigma_p,
    const Mat3& sigma_o, const chance::SafetyEllipsoid& e,
    const McConfig& cfg) {
  if (absl::Status st = cfg.Validate(); !st.ok()) return st;
  absl::StatusOr<Mat3> root = CovarianceRoot(sigma_p + sigma_o);
  if (!root.ok()) return root.status();
  std::mt19937_64 rng(cfg.seed);
  const Vec3 mean = p_mean - o_mean;
  int64_t hits = 0;
  for (int i = 0; i < cfg.n_samples; ++i) {
    const Vec3 d = mean + *root * StandardNormal(rng);
    if (e.Norm(d) <= 1.0) ++hits;
  }
  Estimate out;
  out.probability = static_cast<double>(hits) / cfg.n_samples;
  out.std_error =
      std::sqrt(out.probability * (1.0 - out.probability) / cfg.n_samples);
  return out;
}

absl::StatusOr<TrialReport> RunCollisionTrials(
    const gridmap::VoxelMap& world,
    std::span<const traj::ReparamTrajectory> trajectories,
    const chance::UncertaintyModel& u, const chance::SafetyEllipsoid& e,
    const McConfig& cfg) {
  if (trajectories.empty()) {
    return absl::InvalidArgumentError("no trajectories to simulate");
  }
  if (absl::Status st = u.Validate(); !st.ok()) return st;

  // Nearest in the ellipsoid metric is nearest in the scaled frame.
  const Vec3 inv = e.semi_axes().cwiseInverse();
  std::vector<Vec3> centers = gridmap::OccupiedCenters(world, world.Extent());
  std::vector<Vec3> scaled;
  scaled.reserve(centers.size());
  for (const Vec3& c : centers) scaled.push_back(c.cwiseProduct(inv));
  const gridmap::ObstacleIndex euclidean(std::move(centers));
  const gridmap::ObstacleIndex metric(std::move(scaled));

  TrialReport report;
  for (size_t run = 0; run < trajectories.size(); ++run) {
    const traj::ReparamTrajectory& r = trajectories[run];
    if (r.size() == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("trajectory ", run, " is empty"));
    }
    std::mt19937_64 rng(cfg.seed + run);
    bool hit = false;
    double clearance = std::numeric_limits<double>::infinity();
    for (int k = 0; k < r.size(); ++k) {
      const Mat3 root = *CovarianceRoot(u.PositionCovariance(r.vel[k]));
      const Vec3 p = r.pos[k] + root * StandardNormal(rng);
      if (const auto n = euclidean.Nearest(p)) {
        clearance = std::min(clearance, n->distance);
      }
      if (const auto n = metric.Nearest(p.cwiseProduct(inv))) {
        if (n->distance <= 1.0) hit = true;
      }
    }
    report.collided.push_back(hit);
    report.min_clearance.push_back(clearance);
    if (hit) ++report.collisions;
  }
  report.runs = static_cast<int>(trajectories.size());
  report.rate = static_cast<double>(report.collisions) / report.runs;
  return report;
}

nlohmann::json ToJson(const TrialReport& report) {
  nlohmann::json clearance = nlohmann::json::array();
  for (double c : report.min_clearance) {
    clearance.push_back(std::isfinite(c) ? nlohmann::json(c)
                                         : nlohmann::json(nullptr));
  }
  return {{"runs", report.runs},
          {"collisions", report.collisions},
          {"rate", report.rate},
          {"collided", report.collided},
          {"min_clearance", clearance}};
}

absl::StatusOr<Forest> GenerateForest(const ForestConfig& cfg) {
  if (!(cfg.resolution > 0.0) || !(cfg.radius > 0.0) ||
      !(cfg.density > 0.0)) {
    return absl::InvalidArgumentError(
        "resolution, radius and density must be positive");
  }
  if ((cfg.extent.array() < cfg.resolution).any()) {
    return absl::InvalidArgumentError("extent smaller than one voxel");
  }
  const double area = cfg.extent.x() * cfg.extent.y();
  if (cfg.density * area < 1.0) {
    return absl::InvalidArgumentError("density yields less than one pillar");
  }
  gridmap::Index3 dims;
  for (int a = 0; a < 3; ++a) {
    dims[a] = static_cast<int>(std::floor(cfg.extent[a] / cfg.resolution + 1e-9));
  }
  absl::StatusOr<gridmap::VoxelMap> map =
      gridmap::VoxelMap::Create(Vec3::Zero(), cfg.resolution, dims);
  if (!map.ok()) return map.status();

  Forest forest{*std::move(map), {}};
  const int count = static_cast<int>(std::lround(cfg.density * area));
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> ux(0.0, cfg.extent.x());
  std::uniform_real_distribution<double> uy(0.0, cfg.extent.y());
  for (int i = 0; i < count; ++i) {
    const double x = ux(rng);
    const double y = uy(rng);
    forest.pillars.push_back({x, y, cfg.radius});
  }
  const double r2 = cfg.radius * cfg.radius;
  for (const Pillar& p : forest.pillars) {
    const int i0 = std::max(0, static_cast<int>((p.x - p.radius) / cfg.resolution));
    const int i1 = std::min(dims[0] - 1, static_cast<int>((p.x + p.radius) / cfg.resolution));
    const int j0 = std::max(0, static_cast<int>((p.y - p.radius) / cfg.resolution));
    const int j1 = std::min(dims[1] - 1, static_cast<int>((p.y + p.radius) / cfg.resolution));
    for (int i = i0; i <= i1; ++i) {
      for (int j = j0; j <= j1; ++j) {
        const Vec3 c = forest.map.Center(i, j, 0);
        const double dx = c.x() - p.x;
        const double dy = c.y() - p.y;
        if (dx * dx + dy * dy > r2) continue;
        for (int k = 0; k < dims[2]; ++k) forest.map.SetOccupied(i, j, k);
      }
    }
  }
  return forest;
}

}  // namespace tempo::mc
