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

#include "tempo/forest_experiment.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace tempo::mc {
namespace {

class FreeSpace {
 public:
  FreeSpace(const Forest& forest, double clearance)
      : pillars_(forest.pillars), clearance_(clearance) {
    const gridmap::Box box = forest.map.Extent();
    lo_ = box.min().head<2>();
    hi_ = box.max().head<2>();
  }

  bool IsFree(const Vec2& p) const {
    if ((p.array() < lo_.array()).any() || (p.array() > hi_.array()).any()) {
      return false;
    }
    for (const Pillar& c : pillars_) {
      if (std::hypot(p.x() - c.x, p.y() - c.y) < c.radius + clearance_) {
        return false;
      }
    }
    return true;
  }

  bool SegmentFree(const Vec2& a, const Vec2& b, double step) const {
    const int n = std::max(1, static_cast<int>(std::ceil((b - a).norm() / step)));
    for (int i = 0; i <= n; ++i) {
      if (!IsFree(a + (b - a) * (static_cast<double>(i) / n))) return false;
    }
    return true;
  }

 private:
  const std::vector<Pillar>& pillars_;
  double clearance_;
  Vec2 lo_, hi_;
};

}  // namespace

absl::StatusOr<std::vector<Vec2>> PlanPath(const Forest& forest,
                                           const Vec2& start, const Vec2& goal,
                                           const PlannerConfig& cfg) {
  const FreeSpace free(forest, cfg.clearance);
  if (!free.IsFree(start) || !free.IsFree(goal)) {
    return absl::InvalidArgumentError("start or goal is not free");
  }
  const double res = forest.map.resolution();
  const int nx = forest.map.dims()[0];
  const int ny = forest.map.dims()[1];
  const Vec2 origin = forest.map.origin().head<2>();
  auto cell_of = [&](const Vec2& p) {
    const int i = std::clamp(static_cast<int>((p.x() - origin.x()) / res), 0, nx - 1);
    const int j = std::clamp(static_cast<int>((p.y() - origin.y()) / res), 0, ny - 1);
    return i + nx * j;
  };
  auto center = [&](int id) {
    return Vec2(origin.x() + res * (id % nx + 0.5),
                origin.y() + res * (id / nx + 0.5));
  };

  std::vector<char> is_free(static_cast<size_t>(nx) * ny);
  for (int id = 0; id < nx * ny; ++id) is_free[id] = free.IsFree(center(id));
  const int s = cell_of(start);
  const int g = cell_of(goal);
  is_free[s] = is_free[g] = 1;

  std::vector<double> cost(is_free.size(), std::numeric_limits<double>::infinity());
  std::vector<int> parent(is_free.size(), -1);
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  cost[s] = 0.0;
  open.push({(center(s) - center(g)).norm(), s});
  while (!open.empty()) {
    const auto [f, id] = open.top();
    open.pop();
    if (id == g) break;
    if (f - (center(id) - center(g)).norm() > cost[id] + 1e-12) continue;
    const int i = id % nx;
    const int j = id / nx;
    for (int di = -1; di <= 1; ++di) {
      for (int dj = -1; dj <= 1; ++dj) {
        if (di == 0 && dj == 0) continue;
        const int ni = i + di;
        const int nj = j + dj;
        if (ni < 0 || nj < 0 || ni >= nx || nj >= ny) continue;
        const int nid = ni + nx * nj;
        if (!is_free[nid]) continue;
        const double c = cost[id] + res * std::hypot(di, dj);
        if (c < cost[nid]) {
          cost[nid] = c;
          parent[nid] = id;
          open.push({c + (center(nid) - center(g)).norm(), nid});
        }
      }
    }
  }
  if (s != g && parent[g] < 0) {
    return absl::NotFoundError("no collision-free path");
  }
  std::vector<Vec2> raw;
  for (int id = g; id != s; id = parent[id]) raw.push_back(center(id));
  std::reverse(raw.begin(), raw.end());
  raw.insert(raw.begin(), start);
  raw.back() = goal;

  // Greedy line-of-sight shortcutting.
  std::vector<Vec2> out{raw.front()};
  size_t i = 0;
  while (i + 1 < raw.size()) {
    size_t j = raw.size() - 1;
    while (j > i + 1 && !free.SegmentFree(raw[i], raw[j], 0.5 * res)) --j;
    out.push_back(raw[j]);
    i = j;
  }
  return out;
}

absl::StatusOr<traj::PiecewisePolynomial> SmoothTrajectory(
    std::span<const Vec2> waypoints, const PlannerConfig& cfg, double v_max,
    double a_max) {
  if (waypoints.size() < 2) {
    return absl::InvalidArgumentError("need at least two waypoints");
  }
  if (!(v_max > 0.0) || !(a_max > 0.0) || !(cfg.control_spacing > 0.0)) {
    return absl::InvalidArgumentError("limits and spacing must be positive");
  }
  // Control points at uniform arc length along the polyline.
  std::vector<double> arc{0.0};
  for (size_t k = 1; k < waypoints.size(); ++k) {
    arc.push_back(arc.back() + (waypoints[k] - waypoints[k - 1]).norm());
  }
  const double length = arc.back();
  if (!(length > 0.0)) return absl::InvalidArgumentError("zero-length path");
  const int pieces =
      std::max(1, static_cast<int>(std::ceil(length / cfg.control_spacing)));
  std::vector<Vec2> ctrl{waypoints.front(), waypoints.front()};
  size_t seg = 0;
  for (int k = 0; k <= pieces; ++k) {
    const double a = length * k / pieces;
    while (seg + 2 < arc.size() && arc[seg + 1] < a) ++seg;
    const double span = arc[seg + 1] - arc[seg];
    const double u = span > 0.0 ? std::clamp((a - arc[seg]) / span, 0.0, 1.0) : 0.0;
    ctrl.push_back(waypoints[seg] + u * (waypoints[seg + 1] - waypoints[seg]));
  }
  ctrl.push_back(waypoints.back());
  ctrl.push_back(waypoints.back());

  // Power-basis coefficients of each uniform span in u in [0, 1].
  const int spans = static_cast<int>(ctrl.size()) - 3;
  std::vector<std::array<Vec2, 4>> basis(spans);
  for (int j = 0; j < spans; ++j) {
    const Vec2& q0 = ctrl[j];
    const Vec2& q1 = ctrl[j + 1];
    const Vec2& q2 = ctrl[j + 2];
    const Vec2& q3 = ctrl[j + 3];
    basis[j] = {(q0 + 4.0 * q1 + q2) / 6.0, (q2 - q0) / 2.0,
                (q0 - 2.0 * q1 + q2) / 2.0,
                (-q0 + 3.0 * q1 - 3.0 * q2 + q3) / 6.0};
  }
  // Span duration c: speed |P_u| / c <= v_max, |P_uu| / c^2 <= a_max.
  double max_du = 0.0, max_duu = 0.0;
  for (const auto& b : basis) {
    for (int k = 0; k <= 50; ++k) {
      const double u = k / 50.0;
      const Vec2 du = b[1] + 2.0 * b[2] * u + 3.0 * b[3] * u * u;
      const Vec2 duu = 2.0 * b[2] + 6.0 * b[3] * u;
      max_du = std::max(max_du, du.norm());
      max_duu = std::max(max_duu, duu.cwiseAbs().maxCoeff());
    }
  }
  const double c = std::max(max_du / v_max, std::sqrt(max_duu / a_max));
  std::vector<traj::PolySegment> segs;
  for (int j = 0; j < spans; ++j) {
    traj::PolySegment ps;
    ps.tau_start = j * c;
    ps.tau_end = (j + 1) * c;
    for (int a = 0; a < 2; ++a) {
      double scale = 1.0;
      for (int p = 0; p < 4; ++p) {
        ps.coeffs[a].push_back(basis[j][p][a] / scale);
        scale *= c;
      }
    }
    ps.coeffs[2] = {cfg.altitude};
    segs.push_back(std::move(ps));
  }
  return traj::PiecewisePolynomial::Create(std::move(segs));
}

absl::StatusOr<CellResult> RunForestCell(const CellConfig& cfg) {
  if (cfg.runs < 1) return absl::InvalidArgumentError("runs must be >= 1");
  absl::StatusOr<Forest> forest = GenerateForest(cfg.forest);
  if (!forest.ok()) return forest.status();
  PipelineConfig pipeline = cfg.pipeline;
  pipeline.limits.v_max = Vec3::Constant(cfg.v_max);
  pipeline.limits.a_max = Vec3::Constant(cfg.accel_ratio * cfg.v_max);

  const FreeSpace free(*forest, cfg.planner.clearance);
  absl::StatusOr<gridmap::VoxelMap> open_space = gridmap::VoxelMap::Create(
      forest->map.origin(), forest->map.resolution(), forest->map.dims());
  if (!open_space.ok()) return open_space.status();
  const double ex = cfg.forest.extent.x();
  const double ey = cfg.forest.extent.y();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uy(0.1 * ey, 0.9 * ey);

  CellResult result;
  std::vector<traj::ReparamTrajectory> with, without;
  int attempts = 0;
  while (static_cast<int>(with.size()) < cfg.runs) {
    if (++attempts > 20 * cfg.runs) {
      return absl::ResourceExhaustedError(
          "could not plan enough trajectories in this forest");
    }
    const Vec2 start(0.05 * ex, uy(rng));
    const Vec2 goal(0.95 * ex, uy(rng));
    if (!free.IsFree(start) || !free.IsFree(goal)) continue;
    absl::StatusOr<std::vector<Vec2>> path =
        PlanPath(*forest, start, goal, cfg.planner);
    if (!path.ok()) continue;
    absl::StatusOr<traj::PiecewisePolynomial> poly = SmoothTrajectory(
        *path, cfg.planner, cfg.v_max, cfg.accel_ratio * cfg.v_max);
    if (!poly.ok()) return poly.status();
    absl::StatusOr<traj::SampledTrajectory> s = traj::Resample(*poly, cfg.dtau);
    if (!s.ok()) return s.status();

    traj::TimeMapping baseline = traj::IdentityMapping(*s);
    if (cfg.baseline == Baseline::kMinimumTime) {
      absl::StatusOr<Allocation> fastest = RunAllocation(*s, *open_space, pipeline);
      if (!fastest.ok()) return fastest.status();
      if (fastest->outcome != Outcome::kVerified) continue;
      baseline = *fastest->mapping;
    }
    absl::StatusOr<traj::ReparamTrajectory> original =
        traj::Reparameterize(*s, baseline, cfg.dt_out);
    if (!original.ok()) return original.status();
    absl::StatusOr<Allocation> alloc = RunAllocation(*s, forest->map, pipeline);
    if (!alloc.ok()) return alloc.status();
    absl::StatusOr<traj::ReparamTrajectory> allocated = *original;
    if (alloc->outcome == Outcome::kVerified) {
      allocated = traj::Reparameterize(*s, *alloc->mapping, cfg.dt_out);
      if (!allocated.ok()) return allocated.status();
    } else {
      ++result.allocation_failures;
    }
    result.mean_time_without += original->t.back() / cfg.runs;
    result.mean_time_with += allocated->t.back() / cfg.runs;
    without.push_back(*std::move(original));
    with.push_back(*std::move(allocated));
  }

  McConfig mc;
  mc.seed = cfg.seed;
  absl::StatusOr<TrialReport> w = RunCollisionTrials(
      forest->map, with, pipeline.chance.uncertainty, pipeline.chance.ellipsoid, mc);
  if (!w.ok()) return w.status();
  absl::StatusOr<TrialReport> wo = RunCollisionTrials(
      forest->map, without, pipeline.chance.uncertainty, pipeline.chance.ellipsoid,
      mc);
  if (!wo.ok()) return wo.status();
  result.with_allocation = *std::move(w);
  result.without_allocation = *std::move(wo);
  return result;
}

}  // namespace tempo::mc
