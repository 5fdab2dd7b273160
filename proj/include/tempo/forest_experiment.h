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

// Collision-rate experiment in generated pillar forests: plan a path through
// the forest, smooth it into a B-spline trajectory at a nominal speed, and
// compare tracking trials with and without time allocation.

#ifndef TEMPO_FOREST_EXPERIMENT_H_
#define TEMPO_FOREST_EXPERIMENT_H_

#include <cstdint>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"
#include "tempo/mc.h"
#include "tempo/pipeline.h"
#include "tempo/traj.h"

namespace tempo::mc {

using Vec2 = Eigen::Vector2d;

struct PlannerConfig {
  // Minimum distance from the path to any pillar surface, m.
  double clearance = 1.35;
  // Flight height, m.
  double altitude = 1.0;
  // Arc-length spacing of B-spline control points, m.
  double control_spacing = 0.5;
};

// 8-connected A* on the forest's xy grid followed by line-of-sight
// shortcutting. Returns the waypoint polyline from start to goal.
absl::StatusOr<std::vector<Vec2>> PlanPath(const Forest& forest,
                                           const Vec2& start, const Vec2& goal,
                                           const PlannerConfig& cfg);

// Uniform cubic B-spline whose control points are spread along the polyline
// (end points repeated three times, so it starts and ends at rest), scaled in
// time so that speed stays within v_max and each axis acceleration within
// a_max.
absl::StatusOr<traj::PiecewisePolynomial> SmoothTrajectory(
    std::span<const Vec2> waypoints, const PlannerConfig& cfg, double v_max,
    double a_max);

// Timing of the trajectory flown without time allocation.
enum class Baseline {
  // Minimum-time profile under the velocity and acceleration limits only
  // (no braking zones), i.e. a planner that already flies at its limits.
  kMinimumTime,
  // The smoothed trajectory's own uniform timing.
  kNominal,
};

struct CellConfig {
  ForestConfig forest;
  PlannerConfig planner;
  PipelineConfig pipeline;
  // Nominal speed limit; per-axis velocity limits are set to it and
  // acceleration limits to accel_ratio times it.
  double v_max = 1.0;
  double accel_ratio = 3.0;
  double dtau = 0.05;
  double dt_out = 0.1;
  int runs = 50;
  uint64_t seed = 0;
  Baseline baseline = Baseline::kMinimumTime;
};

struct CellResult {
  TrialReport with_allocation;
  TrialReport without_allocation;
  // Runs whose allocation did not verify; they keep the baseline timing.
  int allocation_failures = 0;
  double mean_time_with = 0.0;
  double mean_time_without = 0.0;
};

absl::StatusOr<CellResult> RunForestCell(const CellConfig& cfg);

}  // namespace tempo::mc

#endif  // TEMPO_FOREST_EXPERIMENT_H_
