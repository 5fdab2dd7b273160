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

#include <algorithm>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "oracles/quadrature.h"
#include "tempo/chance.h"
#include "tempo/gridmap.h"
#include "tempo/traj.h"
#include "test_util.h"

namespace tempo::mc {
namespace {

using ::tempo::testing::Gen;

chance::SafetyEllipsoid Ellipsoid(const Vec3& axes) {
  return *chance::SafetyEllipsoid::Create(axes);
}

TEST(EmpiricalProbabilityTest, DeterministicPerSeed) {
  const auto e = Ellipsoid(Vec3(0.3, 0.3, 0.2));
  const Mat3 sp = 0.04 * Mat3::Identity();
  McConfig cfg{20000, 7};
  auto a = EmpiricalCollisionProbability(Vec3::Zero(), Vec3(0.4, 0, 0), sp,
                                         Mat3::Zero(), e, cfg);
  auto b = EmpiricalCollisionProbability(Vec3::Zero(), Vec3(0.4, 0, 0), sp,
                                         Mat3::Zero(), e, cfg);
  ASSERT_TRUE(a.ok());
  ASSERT_TRUE(b.ok());
  EXPECT_EQ(a->probability, b->probability);
  EXPECT_GT(a->probability, 0.0);
  EXPECT_LT(a->probability, 1.0);
  EXPECT_NEAR(a->std_error,
              std::sqrt(a->probability * (1 - a->probability) / 20000), 1e-15);
}

TEST(EmpiricalProbabilityTest, DegenerateCovariance) {
  const auto e = Ellipsoid(Vec3::Ones());
  McConfig cfg{1000, 1};
  auto inside = EmpiricalCollisionProbability(
      Vec3::Zero(), Vec3(0.5, 0, 0), Mat3::Zero(), Mat3::Zero(), e, cfg);
  auto outside = EmpiricalCollisionProbability(
      Vec3::Zero(), Vec3(1.5, 0, 0), Mat3::Zero(), Mat3::Zero(), e, cfg);
  ASSERT_TRUE(inside.ok());
  ASSERT_TRUE(outside.ok());
  EXPECT_EQ(inside->probability, 1.0);
  EXPECT_EQ(outside->probability, 0.0);
}

TEST(EmpiricalProbabilityTest, RejectsBadInput) {
  const auto e = Ellipsoid(Vec3::Ones());
  EXPECT_FALSE(EmpiricalCollisionProbability(Vec3::Zero(), Vec3::Ones(),
                                             Mat3::Identity(), Mat3::Zero(), e,
                                             McConfig{0, 0})
                   .ok());
  Mat3 bad = Mat3::Identity();
  bad(0, 0) = -1;
  EXPECT_FALSE(EmpiricalCollisionProbability(Vec3::Zero(), Vec3::Ones(), bad,
                                             Mat3::Zero(), e, McConfig{})
                   .ok());
}

// A slab-like ellipsoid with noise along x only reduces to a 1-D interval
// probability.
TEST(EmpiricalProbabilityTest, MatchesOneDimensionalOracle) {
  const auto e = Ellipsoid(Vec3(1.0, 1e3, 1e3));
  Gen gen(11);
  for (int trial = 0; trial < 5; ++trial) {
    const double mu = gen.Uniform(0.0, 2.5);
    const double sigma = gen.Uniform(0.3, 1.5);
    Mat3 sp = Mat3::Zero();
    sp(0, 0) = sigma * sigma;
    auto est = EmpiricalCollisionProbability(Vec3(mu, 0, 0), Vec3::Zero(), sp,
                                             Mat3::Zero(), e,
                                             McConfig{100000, 100 + trial});
    ASSERT_TRUE(est.ok());
    const double exact = oracles::NormalCdf((1 - mu) / sigma) -
                         oracles::NormalCdf((-1 - mu) / sigma);
    EXPECT_NEAR(est->probability, exact, 4 * std::sqrt(exact * (1 - exact) /
                                                        100000) + 1e-4)
        << mu << " " << sigma;
  }
}

traj::ReparamTrajectory Hover(const Vec3& p, int n) {
  traj::ReparamTrajectory r;
  for (int k = 0; k < n; ++k) {
    r.t.push_back(0.1 * k);
    r.tau.push_back(0.1 * k);
    r.hdot.push_back(1.0);
    r.pos.push_back(p);
    r.vel.push_back(Vec3::Zero());
    r.acc.push_back(Vec3::Zero());
  }
  return r;
}

gridmap::VoxelMap OneVoxel() {
  auto map = gridmap::VoxelMap::Create(Vec3::Zero(), 0.1, {20, 20, 20});
  map->SetOccupied(10, 10, 10);  // center (1.05, 1.05, 1.05)
  return *map;
}

TEST(CollisionTrialsTest, NoiselessHitsAndMisses) {
  const auto map = OneVoxel();
  const auto e = Ellipsoid(Vec3::Constant(0.3));
  chance::UncertaintyModel u;  // zero noise at zero speed
  std::vector<traj::ReparamTrajectory> runs = {
      Hover(Vec3(1.05, 1.25, 1.05), 5), Hover(Vec3(1.05, 1.55, 1.05), 5)};
  auto r = RunCollisionTrials(map, runs, u, e, McConfig{1, 0});
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->runs, 2);
  EXPECT_EQ(r->collided, (std::vector<bool>{true, false}));
  EXPECT_EQ(r->collisions, 1);
  EXPECT_DOUBLE_EQ(r->rate, 0.5);
  EXPECT_NEAR(r->min_clearance[0], 0.2, 1e-12);
  EXPECT_NEAR(r->min_clearance[1], 0.5, 1e-12);
}

TEST(CollisionTrialsTest, DeterministicAndSeedSensitive) {
  const auto map = OneVoxel();
  const auto e = Ellipsoid(Vec3::Constant(0.3));
  chance::UncertaintyModel u;
  traj::ReparamTrajectory moving = Hover(Vec3(1.05, 1.45, 1.05), 20);
  for (Vec3& v : moving.vel) v = Vec3(2, 0, 0);  // sigma = 0.3 m
  std::vector<traj::ReparamTrajectory> runs(40, moving);
  auto a = RunCollisionTrials(map, runs, u, e, McConfig{1, 5});
  auto b = RunCollisionTrials(map, runs, u, e, McConfig{1, 5});
  auto c = RunCollisionTrials(map, runs, u, e, McConfig{1, 6});
  ASSERT_TRUE(a.ok() && b.ok() && c.ok());
  EXPECT_EQ(a->collided, b->collided);
  EXPECT_EQ(a->min_clearance, b->min_clearance);
  EXPECT_NE(a->min_clearance, c->min_clearance);
  EXPECT_GT(a->collisions, 0);
  EXPECT_LT(a->collisions, 40);
  // Run r uses seed + r, so shifting the seed shifts the runs.
  EXPECT_EQ(std::vector<double>(a->min_clearance.begin() + 1,
                                a->min_clearance.end()),
            std::vector<double>(c->min_clearance.begin(),
                                c->min_clearance.end() - 1));
}

TEST(CollisionTrialsTest, RejectsBadInput) {
  const auto map = OneVoxel();
  const auto e = Ellipsoid(Vec3::Constant(0.3));
  chance::UncertaintyModel u;
  EXPECT_FALSE(RunCollisionTrials(map, {}, u, e, McConfig{}).ok());
  std::vector<traj::ReparamTrajectory> empty(1);
  EXPECT_FALSE(RunCollisionTrials(map, empty, u, e, McConfig{}).ok());
  u.m = -1;
  std::vector<traj::ReparamTrajectory> one = {Hover(Vec3::Zero(), 2)};
  EXPECT_FALSE(RunCollisionTrials(map, one, u, e, McConfig{}).ok());
}

TEST(ForestTest, PillarsAreDeterministicAndRasterized) {
  ForestConfig cfg;
  cfg.seed = 3;
  auto a = GenerateForest(cfg);
  auto b = GenerateForest(cfg);
  ASSERT_TRUE(a.ok());
  ASSERT_TRUE(b.ok());
  EXPECT_EQ(a->pillars.size(), 10u);  // 0.025 / m^2 over 400 m^2
  EXPECT_EQ(a->map.dims(), (gridmap::Index3{200, 200, 20}));
  EXPECT_EQ(a->map.PackBits(), b->map.PackBits());
  for (const Pillar& p : a->pillars) {
    EXPECT_GE(p.x, 0);
    EXPECT_LE(p.x, 20);
    EXPECT_GE(p.y, 0);
    EXPECT_LE(p.y, 20);
    EXPECT_EQ(p.radius, 0.25);
    const int i = std::min(199, static_cast<int>(p.x / 0.1));
    const int j = std::min(199, static_cast<int>(p.y / 0.1));
    EXPECT_TRUE(a->map.IsOccupied(i, j, 10));
  }
  // Every occupied voxel center is inside some pillar.
  for (const Vec3& c : gridmap::OccupiedCenters(a->map, a->map.Extent())) {
    bool inside = false;
    for (const Pillar& p : a->pillars) {
      inside |= std::hypot(c.x() - p.x, c.y() - p.y) <= p.radius;
    }
    ASSERT_TRUE(inside);
  }
  cfg.seed = 4;
  EXPECT_NE(GenerateForest(cfg)->map.PackBits(), a->map.PackBits());
}

TEST(ForestTest, RejectsBadConfig) {
  ForestConfig cfg;
  cfg.density = 0;
  EXPECT_FALSE(GenerateForest(cfg).ok());
  cfg = ForestConfig{};
  cfg.density = 1e-4;
  EXPECT_FALSE(GenerateForest(cfg).ok());
  cfg = ForestConfig{};
  cfg.extent = Vec3(20, 20, 0.01);
  EXPECT_FALSE(GenerateForest(cfg).ok());
}

}  // namespace
}  // namespace tempo::mc
