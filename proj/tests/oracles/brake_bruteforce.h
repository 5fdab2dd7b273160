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
// O(N * M) braking-zone reference: every sample against every occupied voxel
// center of the whole map, then the interval rules applied directly.

#ifndef TEMPO_TESTS_ORACLES_BRAKE_BRUTEFORCE_H_
#define TEMPO_TESTS_ORACLES_BRAKE_BRUTEFORCE_H_

#include <vector>

#include "tempo/brake.h"
#include "tempo/gridmap.h"
#include "tempo/traj.h"

namespace tempo::oracles {

// Nearest occupied center by linear scan; ties go to the lexicographically
// smallest point. Returns false when the map is empty.
inline bool ScanNearest(const gridmap::VoxelMap& map, const traj::Vec3& p,
                        traj::Vec3* best) {
  bool found = false;
  double best_d2 = 0.0;
  const auto& d = map.dims();
  for (int k = 0; k < d[2]; ++k) {
    for (int j = 0; j < d[1]; ++j) {
      for (int i = 0; i < d[0]; ++i) {
        if (!map.IsOccupied(i, j, k)) continue;
        const traj::Vec3 c = map.Center(i, j, k);
        const double d2 = (c - p).squaredNorm();
        const bool lex = c.x() < best->x() ||
                         (c.x() == best->x() &&
                          (c.y() < best->y() ||
                           (c.y() == best->y() && c.z() < best->z())));
        if (!found || d2 < best_d2 || (d2 == best_d2 && lex)) {
          *best = c;
          best_d2 = d2;
          found = true;
        }
      }
    }
  }
  return found;
}

inline std::vector<brake::BrakingZone> BruteForceZones(
    const traj::SampledTrajectory& s, const gridmap::VoxelMap& map,
    const brake::BrakingConfig& cfg) {
  std::vector<int> flagged;
  for (int i = 0; i < s.size(); ++i) {
    traj::Vec3 o;
    if (!ScanNearest(map, s.pos()[i], &o)) continue;
    const traj::Vec3 diff = o - s.pos()[i];
    if (diff.dot(s.vel()[i]) >= 0.0 && diff.norm() <= cfg.d_th) {
      flagged.push_back(i);
    }
  }
  // Runs of consecutive indices.
  std::vector<brake::Interval> raw;
  for (size_t a = 0; a < flagged.size();) {
    size_t b = a;
    while (b + 1 < flagged.size() && flagged[b + 1] == flagged[b] + 1) ++b;
    brake::Interval in;
    in.first_index = flagged[a];
    in.last_index = flagged[b];
    in.tau_start = s.tau0() + flagged[a] * s.dtau();
    in.tau_end = s.tau0() + flagged[b] * s.dtau();
    raw.push_back(in);
    a = b + 1;
  }
  // Merge, then filter; comparisons allow 1e-9 s of rounding.
  constexpr double kSlack = 1e-9;
  std::vector<brake::Interval> merged;
  for (const brake::Interval& in : raw) {
    if (!merged.empty() &&
        in.tau_start - merged.back().tau_end <= cfg.merge_gap + kSlack) {
      merged.back().tau_end = in.tau_end;
      merged.back().last_index = in.last_index;
    } else {
      merged.push_back(in);
    }
  }
  const double min_duration = cfg.min_zone_duration.value_or(2.0 * s.dtau());
  std::vector<brake::BrakingZone> out;
  for (const brake::Interval& in : merged) {
    const double duration = in.tau_end - in.tau_start;
    if (duration > 0.0 && duration >= min_duration - kSlack) out.push_back(in);
  }
  return out;
}

}  // namespace tempo::oracles

#endif  // TEMPO_TESTS_ORACLES_BRAKE_BRUTEFORCE_H_
