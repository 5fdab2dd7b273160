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

#ifndef TEMPO_GRIDMAP_H_
#define TEMPO_GRIDMAP_H_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "Eigen/Core"
#include "Eigen/Geometry"
#include "absl/status/statusor.h"
#include "tempo/traj.h"

namespace tempo::gridmap {

using Vec3 = Eigen::Vector3d;
using Box = Eigen::AlignedBox3d;
using Index3 = std::array<int, 3>;

// Occupancy grid. Cell (i, j, k) has linear index i + nx * (j + ny * k) and
// its center at origin + resolution * (i + 1/2, j + 1/2, k + 1/2).
class VoxelMap {
 public:
  // An all-free map.
  static absl::StatusOr<VoxelMap> Create(const Vec3& origin, double resolution,
                                         const Index3& dims);
  // Occupancy given per cell in linear-index order.
  static absl::StatusOr<VoxelMap> Create(const Vec3& origin, double resolution,
                                         const Index3& dims,
                                         std::vector<bool> occupancy);

  const Vec3& origin() const { return origin_; }
  double resolution() const { return resolution_; }
  const Index3& dims() const { return dims_; }
  int64_t num_cells() const {
    return int64_t{dims_[0]} * dims_[1] * dims_[2];
  }
  const std::vector<bool>& occupancy() const { return occupancy_; }

  int64_t LinearIndex(int i, int j, int k) const {
    return i + int64_t{dims_[0]} * (j + int64_t{dims_[1]} * k);
  }
  bool IsOccupied(int i, int j, int k) const {
    return occupancy_[LinearIndex(i, j, k)];
  }
  void SetOccupied(int i, int j, int k, bool occupied = true) {
    occupancy_[LinearIndex(i, j, k)] = occupied;
  }
  Vec3 Center(int i, int j, int k) const {
    return origin_ + resolution_ * Vec3(i + 0.5, j + 0.5, k + 0.5);
  }
  Box Extent() const;
  int64_t CountOccupied() const;

  // Packed occupancy: bit (linear index) stored LSB-first within bytes.
  std::vector<uint8_t> PackBits() const;
  static absl::StatusOr<VoxelMap> FromPackedBits(const Vec3& origin,
                                                 double resolution,
                                                 const Index3& dims,
                                                 const std::vector<uint8_t>& bits);

 private:
  VoxelMap(const Vec3& origin, double resolution, const Index3& dims,
           std::vector<bool> occupancy)
      : origin_(origin),
        resolution_(resolution),
        dims_(dims),
        occupancy_(std::move(occupancy)) {}

  Vec3 origin_;
  double resolution_;
  Index3 dims_;
  std::vector<bool> occupancy_;
};

// Nearest obstacle to a query point.
struct Neighbor {
  Vec3 point;
  double distance = 0.0;
};

// True when a precedes b in lexicographic (x, y, z) order.
bool LexLess(const Vec3& a, const Vec3& b);

// Balanced k-d tree over a fixed point set. Immutable after construction;
// queries are safe from multiple threads.
class ObstacleIndex {
 public:
  ObstacleIndex() = default;
  explicit ObstacleIndex(std::vector<Vec3> points);

  const std::vector<Vec3>& points() const { return points_; }
  int size() const { return static_cast<int>(points_.size()); }
  bool empty() const { return points_.empty(); }

  // Exact nearest point by Euclidean distance; equidistant candidates resolve
  // to the lexicographically smallest point. nullopt on an empty index.
  std::optional<Neighbor> Nearest(const Vec3& query) const;

 private:
  struct Node {
    int point = -1;  // Index into points_.
    int axis = 0;
    int left = -1;
    int right = -1;
  };

  int Build(std::vector<int>& order, int begin, int end, int depth);
  void Search(int node, const Vec3& query, int& best, double& best_d2) const;

  std::vector<Vec3> points_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

// Bounding box of all trajectory positions grown by `margin` on every side.
Box LocalRegion(const traj::SampledTrajectory& s, double margin);

// Index over the centers of occupied voxels whose centers lie in `region`.
ObstacleIndex BuildIndex(const VoxelMap& map, const Box& region);

// Occupied voxel centers inside `region` (closed box), in linear-index order.
std::vector<Vec3> OccupiedCenters(const VoxelMap& map, const Box& region);

inline std::optional<Neighbor> NearestObstacle(const ObstacleIndex& index,
                                               const Vec3& p) {
  return index.Nearest(p);
}

}  // namespace tempo::gridmap

#endif  // TEMPO_GRIDMAP_H_
