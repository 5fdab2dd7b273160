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

#include "tempo/gridmap.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace tempo::gridmap {

absl::StatusOr<VoxelMap> VoxelMap::Create(const Vec3& origin,
                                          double resolution,
                                          const Index3& dims) {
  if (dims[0] <= 0 || dims[1] <= 0 || dims[2] <= 0) {
    return absl::InvalidArgumentError("map dims must be positive");
  }
  return Create(origin, resolution, dims,
                std::vector<bool>(int64_t{dims[0]} * dims[1] * dims[2], false));
}

absl::StatusOr<VoxelMap> VoxelMap::Create(const Vec3& origin,
                                          double resolution,
                                          const Index3& dims,
                                          std::vector<bool> occupancy) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    return absl::InvalidArgumentError("map resolution must be positive");
  }
  if (!origin.allFinite()) {
    return absl::InvalidArgumentError("map origin must be finite");
  }
  if (dims[0] <= 0 || dims[1] <= 0 || dims[2] <= 0) {
    return absl::InvalidArgumentError("map dims must be positive");
  }
  const int64_t cells = int64_t{dims[0]} * dims[1] * dims[2];
  if (static_cast<int64_t>(occupancy.size()) != cells) {
    return absl::InvalidArgumentError(
        absl::StrCat("occupancy has ", occupancy.size(), " cells, expected ",
                     cells));
  }
  return VoxelMap(origin, resolution, dims, std::move(occupancy));
}

Box VoxelMap::Extent() const {
  return Box(origin_,
             origin_ + resolution_ * Vec3(dims_[0], dims_[1], dims_[2]));
}

int64_t VoxelMap::CountOccupied() const {
  return std::count(occupancy_.begin(), occupancy_.end(), true);
}

std::vector<uint8_t> VoxelMap::PackBits() const {
  std::vector<uint8_t> bytes((occupancy_.size() + 7) / 8, 0);
  for (size_t i = 0; i < occupancy_.size(); ++i) {
    if (occupancy_[i]) bytes[i / 8] |= static_cast<uint8_t>(1u << (i % 8));
  }
  return bytes;
}

absl::StatusOr<VoxelMap> VoxelMap::FromPackedBits(
    const Vec3& origin, double resolution, const Index3& dims,
    const std::vector<uint8_t>& bits) {
  if (dims[0] <= 0 || dims[1] <= 0 || dims[2] <= 0) {
    return absl::InvalidArgumentError("map dims must be positive");
  }
  const int64_t cells = int64_t{dims[0]} * dims[1] * dims[2];
  if (static_cast<int64_t>(bits.size()) != (cells + 7) / 8) {
    return absl::InvalidArgumentError(absl::StrCat(
        "occupancy bitset has ", bits.size(), " bytes, expected ",
        (cells + 7) / 8));
  }
  std::vector<bool> occupancy(cells);
  for (int64_t i = 0; i < cells; ++i) {
    occupancy[i] = (bits[i / 8] >> (i % 8)) & 1u;
  }
  return Create(origin, resolution, dims, std::move(occupancy));
}

bool LexLess(const Vec3& a, const Vec3& b) {
  return std::lexicographical_compare(a.data(), a.data() + 3, b.data(),
                                      b.data() + 3);
}

ObstacleIndex::ObstacleIndex(std::vector<Vec3> points)
    : points_(std::move(points)) {
  if (points_.empty()) return;
  nodes_.reserve(points_.size());
  std::vector<int> order(points_.size());
  std::iota(order.begin(), order.end(), 0);
  root_ = Build(order, 0, static_cast<int>(order.size()), 0);
}

int ObstacleIndex::Build(std::vector<int>& order, int begin, int end,
                         int depth) {
  if (begin >= end) return -1;
  // Split on the axis of largest spread.
  Vec3 lo = points_[order[begin]];
  Vec3 hi = lo;
  for (int i = begin + 1; i < end; ++i) {
    lo = lo.cwiseMin(points_[order[i]]);
    hi = hi.cwiseMax(points_[order[i]]);
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);
  const int mid = begin + (end - begin) / 2;
  std::nth_element(order.begin() + begin, order.begin() + mid,
                   order.begin() + end, [&](int a, int b) {
                     return points_[a][axis] < points_[b][axis];
                   });
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{order[mid], axis, -1, -1});
  const int left = Build(order, begin, mid, depth + 1);
  const int right = Build(order, mid + 1, end, depth + 1);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void ObstacleIndex::Search(int node, const Vec3& query, int& best,
                           double& best_d2) const {
  if (node < 0) return;
  const Node& n = nodes_[node];
  const Vec3& p = points_[n.point];
  const double d2 = (p - query).squaredNorm();
  if (best < 0 || d2 < best_d2 || (d2 == best_d2 && LexLess(p, points_[best]))) {
    best = n.point;
    best_d2 = d2;
  }
  const double diff = query[n.axis] - p[n.axis];
  const int near = diff < 0 ? n.left : n.right;
  const int far = diff < 0 ? n.right : n.left;
  Search(near, query, best, best_d2);
  // Visit the far side on equality too so ties are seen.
  if (diff * diff <= best_d2) Search(far, query, best, best_d2);
}

std::optional<Neighbor> ObstacleIndex::Nearest(const Vec3& query) const {
  if (root_ < 0) return std::nullopt;
  int best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  Search(root_, query, best, best_d2);
  return Neighbor{points_[best], std::sqrt(best_d2)};
}

Box LocalRegion(const traj::SampledTrajectory& s, double margin) {
  Box box;
  box.setEmpty();
  for (const Vec3& p : s.pos()) box.extend(p);
  box.min().array() -= margin;
  box.max().array() += margin;
  return box;
}

std::vector<Vec3> OccupiedCenters(const VoxelMap& map, const Box& region) {
  std::vector<Vec3> centers;
  if (region.isEmpty()) return centers;
  Index3 lo, hi;
  for (int a = 0; a < 3; ++a) {
    // Cells whose center c = origin + res * (i + 1/2) may fall in the box.
    const double fmin =
        (region.min()[a] - map.origin()[a]) / map.resolution() - 0.5;
    const double fmax =
        (region.max()[a] - map.origin()[a]) / map.resolution() - 0.5;
    lo[a] = static_cast<int>(
        std::clamp(std::floor(fmin), 0.0, double(map.dims()[a])));
    hi[a] = static_cast<int>(
        std::clamp(std::ceil(fmax), -1.0, double(map.dims()[a] - 1)));
  }
  for (int k = lo[2]; k <= hi[2]; ++k) {
    for (int j = lo[1]; j <= hi[1]; ++j) {
      for (int i = lo[0]; i <= hi[0]; ++i) {
        if (!map.IsOccupied(i, j, k)) continue;
        const Vec3 c = map.Center(i, j, k);
        if (region.contains(c)) centers.push_back(c);
      }
    }
  }
  return centers;
}

ObstacleIndex BuildIndex(const VoxelMap& map, const Box& region) {
  return ObstacleIndex(OccupiedCenters(map, region));
}

}  // namespace tempo::gridmap
