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

// Braking-zone determination: trajectory samples that move toward a nearby
// obstacle are grouped into time intervals where the trajectory has to slow
// down.

#ifndef TEMPO_BRAKE_H_
#define TEMPO_BRAKE_H_

#include <optional>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "tempo/gridmap.h"
#include "tempo/traj.h"

namespace tempo::brake {

using Vec3 = Eigen::Vector3d;

struct BrakingConfig {
  double d_th = 2.0;               // m
  std::optional<double> min_zone_duration;  // s; unset means 2 * dtau
  double merge_gap = 0.2;          // s

  absl::Status Validate() const;
  // min_zone_duration with the 2 * dtau default resolved.
  double EffectiveMinDuration(double dtau) const {
    return min_zone_duration.value_or(2.0 * dtau);
  }
};

struct BrakingPoint {
  int index = 0;
  Vec3 obstacle = Vec3::Zero();
  double distance = 0.0;
};

// Closed sample-time interval [tau_start, tau_end] covering samples
// first_index..last_index.
struct Interval {
  double tau_start = 0.0;
  double tau_end = 0.0;
  int first_index = 0;
  int last_index = 0;

  double duration() const { return tau_end - tau_start; }
  bool operator==(const Interval&) const = default;
};

using BrakingZone = Interval;

// (o - p) . v >= 0 and |o - p| <= d_th.
bool IsBrakingPoint(const Vec3& p, const Vec3& v, const Vec3& o, double d_th);

// Nearest indexed obstacle for every sample (nullopt when the index is empty).
std::vector<std::optional<gridmap::Neighbor>> NearestObstacles(
    const traj::SampledTrajectory& s, const gridmap::ObstacleIndex& index);

// Samples that satisfy the braking condition against their nearest obstacle,
// in index order.
std::vector<BrakingPoint> FindBrakingPoints(
    const traj::SampledTrajectory& s,
    std::span<const std::optional<gridmap::Neighbor>> nearest,
    const BrakingConfig& cfg);
std::vector<BrakingPoint> FindBrakingPoints(const traj::SampledTrajectory& s,
                                            const gridmap::ObstacleIndex& index,
                                            const BrakingConfig& cfg);

// Maximal runs of consecutive indices, as [tau0 + first*dtau, tau0 + last*dtau].
// `indices` must be strictly increasing.
std::vector<Interval> ToTimeIntervals(std::span<const int> indices,
                                      double dtau, double tau0);

// Merges neighbours separated by at most merge_gap, then drops intervals
// shorter than the minimum duration. Zero-length intervals never survive.
// `dtau` is only used to resolve the default minimum duration.
std::vector<BrakingZone> Refine(std::span<const Interval> raw,
                                const BrakingConfig& cfg, double dtau);

struct BrakingAnalysis {
  gridmap::Box region;
  gridmap::ObstacleIndex index;
  std::vector<std::optional<gridmap::Neighbor>> nearest;
  std::vector<BrakingPoint> points;
  std::vector<BrakingZone> zones;

  // Per-sample flag: inside some zone.
  std::vector<bool> InZoneMask(int num_samples) const;
};

// Full pipeline: local region (grown by d_th), k-d tree over occupied voxel
// centers, braking points, raw intervals, refinement.
BrakingAnalysis DetermineBrakingZones(const traj::SampledTrajectory& s,
                                      const gridmap::VoxelMap& map,
                                      const BrakingConfig& cfg);

}  // namespace tempo::brake

#endif  // TEMPO_BRAKE_H_
