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

#include "tempo/brake.h"

#include <cmath>

namespace tempo::brake {

absl::Status BrakingConfig::Validate() const {
  if (!(d_th > 0.0)) {
    return absl::InvalidArgumentError("d_th must be positive");
  }
  if (merge_gap < 0.0 || min_zone_duration.value_or(0.0) < 0.0) {
    return absl::InvalidArgumentError(
        "merge_gap and min_zone_duration must be non-negative");
  }
  return absl::OkStatus();
}

bool IsBrakingPoint(const Vec3& p, const Vec3& v, const Vec3& o, double d_th) {
  const Vec3 d = o - p;
  return d.dot(v) >= 0.0 && d.norm() <= d_th;
}

std::vector<std::optional<gridmap::Neighbor>> NearestObstacles(
    const traj::SampledTrajectory& s, const gridmap::ObstacleIndex& index) {
  std::vector<std::optional<gridmap::Neighbor>> nearest(s.size());
  for (int i = 0; i < s.size(); ++i) nearest[i] = index.Nearest(s.pos()[i]);
  return nearest;
}

std::vector<BrakingPoint> FindBrakingPoints(
    const traj::SampledTrajectory& s,
    std::span<const std::optional<gridmap::Neighbor>> nearest,
    const BrakingConfig& cfg) {
  std::vector<BrakingPoint> points;
  for (int i = 0; i < s.size(); ++i) {
    const auto& n = nearest[i];
    if (!n.has_value()) continue;
    if (IsBrakingPoint(s.pos()[i], s.vel()[i], n->point, cfg.d_th)) {
      points.push_back(BrakingPoint{i, n->point, n->distance});
    }
  }
  return points;
}

std::vector<BrakingPoint> FindBrakingPoints(const traj::SampledTrajectory& s,
                                            const gridmap::ObstacleIndex& index,
                                            const BrakingConfig& cfg) {
  const auto nearest = NearestObstacles(s, index);
  return FindBrakingPoints(s, nearest, cfg);
}

std::vector<Interval> ToTimeIntervals(std::span<const int> indices,
                                      double dtau, double tau0) {
  std::vector<Interval> out;
  size_t i = 0;
  while (i < indices.size()) {
    size_t j = i;
    while (j + 1 < indices.size() && indices[j + 1] == indices[j] + 1) ++j;
    out.push_back(Interval{tau0 + indices[i] * dtau, tau0 + indices[j] * dtau,
                           indices[i], indices[j]});
    i = j + 1;
  }
  return out;
}

std::vector<BrakingZone> Refine(std::span<const Interval> raw,
                                const BrakingConfig& cfg, double dtau) {
  // Rounding slack on interval arithmetic in seconds.
  constexpr double kSlack = 1e-9;
  std::vector<Interval> merged;
  for (const Interval& iv : raw) {
    if (!merged.empty() &&
        iv.tau_start - merged.back().tau_end <= cfg.merge_gap + kSlack) {
      merged.back().tau_end = iv.tau_end;
      merged.back().last_index = iv.last_index;
    } else {
      merged.push_back(iv);
    }
  }
  const double min_duration = cfg.EffectiveMinDuration(dtau);
  std::vector<BrakingZone> zones;
  for (const Interval& iv : merged) {
    if (iv.duration() <= 0.0) continue;
    if (iv.duration() < min_duration - kSlack) continue;
    zones.push_back(iv);
  }
  return zones;
}

std::vector<bool> BrakingAnalysis::InZoneMask(int num_samples) const {
  std::vector<bool> mask(num_samples, false);
  for (const BrakingZone& z : zones) {
    for (int i = z.first_index; i <= z.last_index && i < num_samples; ++i) {
      mask[i] = true;
    }
  }
  return mask;
}

BrakingAnalysis DetermineBrakingZones(const traj::SampledTrajectory& s,
                                      const gridmap::VoxelMap& map,
                                      const BrakingConfig& cfg) {
  BrakingAnalysis out;
  out.region = gridmap::LocalRegion(s, cfg.d_th);
  out.index = gridmap::BuildIndex(map, out.region);
  out.nearest = NearestObstacles(s, out.index);
  out.points = FindBrakingPoints(s, out.nearest, cfg);
  std::vector<int> indices;
  indices.reserve(out.points.size());
  for (const BrakingPoint& p : out.points) indices.push_back(p.index);
  const auto raw = ToTimeIntervals(indices, s.dtau(), s.tau0());
  out.zones = Refine(raw, cfg, s.dtau());
  return out;
}

}  // namespace tempo::brake
