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

#include <vector>

#include "gtest/gtest.h"
#include "oracles/brake_bruteforce.h"
#include "test_util.h"

namespace tempo::brake {
namespace {

using ::tempo::testing::Gen;
using ::tempo::testing::RandomMap;
using ::tempo::testing::RandomWalk;
using ::tempo::testing::StraightLine;

Interval Iv(double a, double b, int i = 0, int j = 0) {
  return Interval{a, b, i, j};
}

TEST(IsBrakingPointTest, Examples) {
  const Vec3 p(0, 0, 0), v(1, 0, 0);
  EXPECT_TRUE(IsBrakingPoint(p, v, Vec3(1, 0, 0), 2.0));
  EXPECT_FALSE(IsBrakingPoint(p, v, Vec3(-1, 0, 0), 2.0));
  EXPECT_FALSE(IsBrakingPoint(p, v, Vec3(3, 0, 0), 2.0));
  // Stationary sample near an obstacle: 0 >= 0.
  EXPECT_TRUE(IsBrakingPoint(p, Vec3::Zero(), Vec3(1, 0, 0), 2.0));
}

TEST(BrakingConfigTest, Validate) {
  EXPECT_TRUE(BrakingConfig{}.Validate().ok());
  EXPECT_FALSE((BrakingConfig{0.0}).Validate().ok());
  BrakingConfig c;
  c.merge_gap = -1;
  EXPECT_FALSE(c.Validate().ok());
  c = BrakingConfig{};
  c.min_zone_duration = -0.1;
  EXPECT_FALSE(c.Validate().ok());
  EXPECT_DOUBLE_EQ(BrakingConfig{}.EffectiveMinDuration(0.05), 0.1);
}

TEST(ToTimeIntervalsTest, Examples) {
  std::vector<int> a = {2, 3, 4};
  auto r = ToTimeIntervals(a, 0.1, 0.0);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0].tau_start, 0.2, 1e-15);
  EXPECT_NEAR(r[0].tau_end, 0.4, 1e-15);
  EXPECT_EQ(r[0].first_index, 2);
  EXPECT_EQ(r[0].last_index, 4);

  std::vector<int> b = {1, 2, 5, 6};
  r = ToTimeIntervals(b, 0.1, 0.0);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0].tau_start, 0.1, 1e-15);
  EXPECT_NEAR(r[0].tau_end, 0.2, 1e-15);
  EXPECT_NEAR(r[1].tau_start, 0.5, 1e-15);
  EXPECT_NEAR(r[1].tau_end, 0.6, 1e-15);

  EXPECT_TRUE(ToTimeIntervals({}, 0.1, 0.0).empty());
  std::vector<int> single = {7};
  r = ToTimeIntervals(single, 0.1, 1.0);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].duration(), 0.0);
}

TEST(RefineTest, Examples) {
  BrakingConfig cfg;
  cfg.merge_gap = 0.1;
  cfg.min_zone_duration = 0.0;
  std::vector<Interval> raw = {Iv(0, 0.5, 0, 10), Iv(0.55, 1.0, 11, 20)};
  auto z = Refine(raw, cfg, 0.05);
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0].tau_start, 0.0);
  EXPECT_EQ(z[0].tau_end, 1.0);
  EXPECT_EQ(z[0].last_index, 20);

  cfg.min_zone_duration = 0.1;
  std::vector<Interval> shortie = {Iv(2.0, 2.05)};
  EXPECT_TRUE(Refine(shortie, cfg, 0.05).empty());
  EXPECT_TRUE(Refine({}, cfg, 0.05).empty());
}

TEST(RefineTest, MergeHappensBeforeFiltering) {
  BrakingConfig cfg;
  cfg.merge_gap = 0.1;
  cfg.min_zone_duration = 0.3;
  // Three short pieces that only survive once merged.
  std::vector<Interval> raw = {Iv(0, 0.1), Iv(0.2, 0.3), Iv(0.4, 0.5)};
  auto z = Refine(raw, cfg, 0.05);
  ASSERT_EQ(z.size(), 1u);
  EXPECT_NEAR(z[0].duration(), 0.5, 1e-12);
}

TEST(FindBrakingPointsTest, AbeamObstacle) {
  // Line along x at y = 0 past an occupied voxel centered at (2.05, 0.55, 0.05).
  auto map = gridmap::VoxelMap::Create(Vec3(0, 0, 0), 0.1, {50, 10, 1});
  ASSERT_TRUE(map.ok());
  map->SetOccupied(20, 5, 0);
  const auto s = StraightLine(40, 0.1, Vec3(1, 0, 0), Vec3(0, 0, 0.05));
  BrakingConfig cfg;
  cfg.d_th = 1.0;
  const BrakingAnalysis a = DetermineBrakingZones(s, *map, cfg);
  for (const BrakingPoint& bp : a.points) {
    EXPECT_LE(s.pos()[bp.index].x(), 2.05 + 1e-12);  // never after abeam
    EXPECT_LE(bp.distance, 1.0);
  }
  ASSERT_FALSE(a.points.empty());
  EXPECT_EQ(a.points.back().index, 20);
  // x = 1.2 is sqrt(1.025) m away; x = 1.3 is the first within 1 m.
  EXPECT_EQ(a.points.front().index, 13);
}

TEST(FindBrakingPointsTest, EmptyMapGivesNothing) {
  auto map = gridmap::VoxelMap::Create(Vec3(0, 0, 0), 0.1, {10, 10, 10});
  const auto s = StraightLine(10, 0.1, Vec3(1, 0, 0));
  const BrakingAnalysis a = DetermineBrakingZones(s, *map, BrakingConfig{});
  EXPECT_TRUE(a.points.empty());
  EXPECT_TRUE(a.zones.empty());
}

TEST(BrakingZonesProperty, MatchesBruteForce) {
  Gen gen(21);
  for (int trial = 0; trial < 30; ++trial) {
    const gridmap::VoxelMap map =
        RandomMap(gen, Vec3(0, 0, 0), 0.25, {16, 16, 8}, gen.Uniform(0.0, 0.04));
    const auto s = RandomWalk(gen, gen.Int(5, 80), 0.05, gen.Vec(1, 3),
                              gen.Uniform(0.2, 3.0));
    BrakingConfig cfg;
    cfg.d_th = gen.Uniform(0.3, 2.5);
    cfg.merge_gap = gen.Uniform(0.0, 0.3);
    if (gen.Bool()) cfg.min_zone_duration = gen.Uniform(0.0, 0.3);
    const BrakingAnalysis a = DetermineBrakingZones(s, map, cfg);
    EXPECT_EQ(a.zones, oracles::BruteForceZones(s, map, cfg)) << trial;
  }
}

TEST(BrakingZonesProperty, MembersSatisfyCondition) {
  Gen gen(22);
  for (int trial = 0; trial < 20; ++trial) {
    const gridmap::VoxelMap map =
        RandomMap(gen, Vec3(0, 0, 0), 0.25, {16, 16, 8}, 0.02);
    const auto s = RandomWalk(gen, 60, 0.05, gen.Vec(1, 3), 1.5);
    BrakingConfig cfg;
    cfg.merge_gap = 0.0;
    const BrakingAnalysis a = DetermineBrakingZones(s, map, cfg);
    for (const BrakingZone& z : a.zones) {
      EXPECT_LT(z.tau_start, z.tau_end);
      for (int i = z.first_index; i <= z.last_index; ++i) {
        Vec3 o;
        ASSERT_TRUE(oracles::ScanNearest(map, s.pos()[i], &o));
        EXPECT_TRUE(IsBrakingPoint(s.pos()[i], s.vel()[i], o, cfg.d_th)) << i;
      }
    }
    for (size_t k = 1; k < a.zones.size(); ++k) {
      EXPECT_GT(a.zones[k].tau_start, a.zones[k - 1].tau_end);
    }
  }
}

}  // namespace
}  // namespace tempo::brake
