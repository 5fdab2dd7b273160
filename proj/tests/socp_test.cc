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

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "oracles/grid_dp.h"
#include "tempo/socp/assemble.h"
#include "tempo/socp/interior_point.h"
#include "tempo/socp/solver.h"
#include "tempo/socp/verify.h"
#include "test_util.h"

namespace tempo::socp {
namespace {

using ::tempo::testing::Gen;
using ::tempo::testing::RandomWalk;
using ::tempo::testing::StraightLine;
using traj::Vec3;

std::vector<double> NoLimits(const traj::SampledTrajectory& s) {
  return std::vector<double>(s.size(), kNoSpeedLimit);
}

TEST(SolveTest, SingleSegmentIsPinnedByBoundary) {
  const auto s = StraightLine(1, 0.1, Vec3(1, 0, 0));
  Limits lim{Vec3::Constant(100), Vec3::Constant(1e4)};
  AssembleOptions opt;
  opt.lambda = 0.0;
  auto p = Assemble(s, lim, NoLimits(s), opt);
  ASSERT_TRUE(p.ok()) << p.status();
  const ConicSolution sol = Solve(*p);
  ASSERT_EQ(sol.status, SolveStatus::kOptimal) << sol.detail;
  EXPECT_NEAR(sol.beta[0], 1.0, 1e-7);
  EXPECT_NEAR(sol.beta[1], 1.0, 1e-7);
  EXPECT_NEAR(sol.objective, 0.1, 1e-7);
  EXPECT_NEAR(sol.total_time, 0.1, 1e-7);
}

TEST(SolveTest, StraightLineReachesSpeedLimit) {
  const int n = 10;
  const double dt = 0.1;
  const auto s = StraightLine(n, dt, Vec3(1, 0, 0));
  Limits lim{Vec3::Constant(2.0), Vec3::Constant(1e6)};
  AssembleOptions opt;
  opt.lambda = 0.0;
  auto p = Assemble(s, lim, NoLimits(s), opt);
  ASSERT_TRUE(p.ok()) << p.status();
  const ConicSolution sol = Solve(*p);
  ASSERT_EQ(sol.status, SolveStatus::kOptimal) << sol.detail;
  for (int i = 1; i < n; ++i) EXPECT_NEAR(sol.beta[i], 4.0, 1e-5) << i;
  EXPECT_NEAR(sol.total_time, dt * (4.0 / 3.0 + (n - 2) / 2.0), 1e-6);
  const VerificationReport r = Verify(s, sol, lim, NoLimits(s), 1e-6);
  EXPECT_TRUE(r.pass) << ToJson(r).dump();
}

TEST(SolveTest, ZeroSpeedLimitOnMovingSampleIsRejected) {
  const auto s = StraightLine(4, 0.1, Vec3(1, 0, 0));
  std::vector<double> v = NoLimits(s);
  v[2] = 0.0;
  auto p = Assemble(s, Limits{}, v, AssembleOptions{});
  EXPECT_EQ(p.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(SolveTest, ConflictingBoundaryIsInfeasible) {
  const auto s = StraightLine(4, 0.1, Vec3(1, 0, 0));
  std::vector<double> v = NoLimits(s);
  v[0] = 0.5;  // beta_0 = 1 needs speed 1
  auto p = Assemble(s, Limits{}, v, AssembleOptions{});
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(Solve(*p).status, SolveStatus::kInfeasible);
}

TEST(AssembleTest, StructureAndEqualities) {
  const int n = 5;
  const auto s = StraightLine(n, 0.1, Vec3(1, 0, 0));
  auto p = Assemble(s, Limits{}, NoLimits(s), AssembleOptions{});
  ASSERT_TRUE(p.ok());
  EXPECT_TRUE(p->Validate().ok());
  EXPECT_EQ(p->layout.num_vars(), 5 * n + 2);
  // (beta_i, 1/2, zeta_i), (gamma_i, zeta_i + zeta_i+1, 2), (u_i, 1/2, alpha_i).
  EXPECT_EQ(p->cones.size(), static_cast<size_t>((n + 1) + n + n));
  // alpha rows plus the two boundary rows.
  EXPECT_EQ(p->equalities.size(), static_cast<size_t>(n + 2));
  // Any beta profile with alpha set by definition satisfies the equalities.
  std::vector<double> x(p->layout.num_vars(), 0.0);
  Gen gen(41);
  for (int i = 0; i <= n; ++i) x[p->layout.beta(i)] = gen.Uniform(0.5, 2);
  x[p->layout.beta(0)] = x[p->layout.beta(n)] = 1.0;
  for (int i = 0; i < n; ++i) {
    x[p->layout.alpha(i)] =
        (x[p->layout.beta(i + 1)] - x[p->layout.beta(i)]) / 0.1;
  }
  for (const LinearRow& row : p->equalities) {
    double v = 0;
    for (const LinearTerm& t : row.terms) v += t.coeff * x[t.var];
    EXPECT_NEAR(v, row.rhs, 1e-12);
  }
}

TEST(AssembleTest, StationarySampleHasNoVelocityRows) {
  std::vector<Vec3> pos(4, Vec3::Zero()), vel(4, Vec3::Zero()),
      acc(4, Vec3::Zero());
  vel[0] = vel[3] = Vec3(1, 0, 0);
  auto s = traj::SampledTrajectory::Create(0, 0.1, pos, vel, acc);
  ASSERT_TRUE(s.ok());
  std::vector<double> v(4, 0.5);
  v[0] = v[3] = kNoSpeedLimit;
  auto p = Assemble(*s, Limits{}, v, AssembleOptions{});
  ASSERT_TRUE(p.ok()) << p.status();  // zero limit allowed where sigma' = 0
  for (size_t r = 0; r < p->inequalities.size(); ++r) {
    const RowTag& tag = p->inequality_tags[r];
    if (tag.kind == RowKind::kAxisVelocity || tag.kind == RowKind::kSpeedLimit) {
      EXPECT_NE(tag.knot, 1);
      EXPECT_NE(tag.knot, 2);
    }
  }
}

TEST(AssembleTest, RejectsBadInput) {
  const auto s = StraightLine(3, 0.1, Vec3(1, 0, 0));
  std::vector<double> short_limits(2, kNoSpeedLimit);
  EXPECT_FALSE(Assemble(s, Limits{}, short_limits, AssembleOptions{}).ok());
  AssembleOptions bad;
  bad.beta_start = 0.0;
  EXPECT_FALSE(Assemble(s, Limits{}, NoLimits(s), bad).ok());
  Limits lim;
  lim.v_max = Vec3(1, 0, 1);
  EXPECT_FALSE(Assemble(s, lim, NoLimits(s), AssembleOptions{}).ok());
}

TEST(PerSampleSpeedLimitsTest, WorkedExampleAndSentinels) {
  // One sample in a zone at transformed distance 2 from its obstacle.
  const auto s = StraightLine(2, 0.1, Vec3(1, 0, 0));
  ChanceConfig cfg;
  cfg.ellipsoid = *chance::SafetyEllipsoid::Create(Vec3::Ones());
  cfg.params.delta = 0.5 * std::erfc(2.0 / std::sqrt(2.0));
  std::vector<std::optional<gridmap::Neighbor>> nearest(3);
  nearest[1] = gridmap::Neighbor{s.pos()[1] + Vec3(0, 2, 0), 2.0};
  std::vector<brake::BrakingZone> zones = {{0.1, 0.1, 1, 1}};
  Limits lim;
  lim.v_max = Vec3::Constant(10);
  auto r = PerSampleSpeedLimits(s, zones, nearest, cfg, lim);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->limit[0], kNoSpeedLimit);
  EXPECT_NEAR(r->limit[1], 3.0, 1e-9);
  EXPECT_EQ(r->limit[2], kNoSpeedLimit);
  EXPECT_TRUE(r->mean_in_collision.empty());

  nearest[1] = gridmap::Neighbor{s.pos()[1] + Vec3(0, 0.5, 0), 0.5};
  r = PerSampleSpeedLimits(s, zones, nearest, cfg, lim);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->limit[1], 0.0);
  EXPECT_EQ(r->mean_in_collision, std::vector<int>{1});

  r = PerSampleSpeedLimits(s, {}, nearest, cfg, lim);
  ASSERT_TRUE(r.ok());
  for (double v : r->limit) EXPECT_EQ(v, kNoSpeedLimit);
}

TEST(InteriorPointTest, SmallConePrograms) {
  // minimize x0 s.t. x1 = 1, x2 = 1, |(x1, x2)| <= x0.
  ConeProgram p;
  p.num_vars = 3;
  p.c = Eigen::Vector3d(1, 0, 0);
  p.A = SparseMatrix(2, 3);
  p.A.insert(0, 1) = 1;
  p.A.insert(1, 2) = 1;
  p.b = Eigen::Vector2d(1, 1);
  p.G = SparseMatrix(3, 3);
  for (int i = 0; i < 3; ++i) p.G.insert(i, i) = -1;
  p.h = Eigen::Vector3d::Zero();
  p.soc_dims = {3};
  IpmResult r = SolveConeProgram(p);
  ASSERT_EQ(r.status, IpmStatus::kOptimal);
  EXPECT_NEAR(r.x[0], std::sqrt(2.0), 1e-7);

  // LP: minimize -x s.t. x <= 2, x >= 0.
  ConeProgram lp;
  lp.num_vars = 1;
  lp.c = Eigen::VectorXd::Constant(1, -1);
  lp.A = SparseMatrix(0, 1);
  lp.b = Eigen::VectorXd(0);
  lp.G = SparseMatrix(2, 1);
  lp.G.insert(0, 0) = 1;
  lp.G.insert(1, 0) = -1;
  lp.h = Eigen::Vector2d(2, 0);
  lp.num_orthant = 2;
  r = SolveConeProgram(lp);
  ASSERT_EQ(r.status, IpmStatus::kOptimal);
  EXPECT_NEAR(r.x[0], 2.0, 1e-7);

  // Infeasible: x <= -1, x >= 0.
  ConeProgram inf = lp;
  inf.h = Eigen::Vector2d(-1, 0);
  EXPECT_EQ(SolveConeProgram(inf).status, IpmStatus::kPrimalInfeasible);

  // Unbounded: minimize -x s.t. x >= 0.
  ConeProgram unb = lp;
  unb.G = SparseMatrix(1, 1);
  unb.G.insert(0, 0) = -1;
  unb.h = Eigen::VectorXd::Zero(1);
  unb.num_orthant = 1;
  EXPECT_EQ(SolveConeProgram(unb).status, IpmStatus::kDualInfeasible);
}

TEST(ToConeProgramTest, RotatedConesBecomeSecondOrderCones) {
  const auto s = StraightLine(3, 0.1, Vec3(1, 0, 0));
  auto p = Assemble(s, Limits{}, NoLimits(s), AssembleOptions{});
  ASSERT_TRUE(p.ok());
  const ConeProgram cp = ToConeProgram(*p);
  EXPECT_EQ(cp.num_vars, p->layout.num_vars());
  EXPECT_EQ(cp.soc_dims.size(), p->cones.size());
  for (int d : cp.soc_dims) EXPECT_EQ(d, 3);
  EXPECT_EQ(cp.num_orthant, static_cast<int>(p->inequalities.size()));
  // A point inside every rotated cone maps inside every SOC block.
  std::vector<double> x(p->layout.num_vars(), 0.0);
  for (int i = 0; i <= 3; ++i) {
    x[p->layout.beta(i)] = 1.0;
    x[p->layout.zeta(i)] = 0.9;
  }
  for (int i = 0; i < 3; ++i) {
    x[p->layout.gamma(i)] = 1.5;
    x[p->layout.smooth(i)] = 1.0;
  }
  const Eigen::VectorXd xv = Eigen::Map<Eigen::VectorXd>(x.data(), x.size());
  const Eigen::VectorXd slack = cp.h - cp.G * xv;
  int row = cp.num_orthant;
  for (size_t k = 0; k < cp.soc_dims.size(); ++k, row += 3) {
    EXPECT_GE(slack[row], slack.segment(row + 1, 2).norm() - 1e-12) << k;
  }
}

TEST(SolveTest, StraightLineMatchesGridDp) {
  const int n = 8;
  const auto s = StraightLine(n, 0.1, Vec3(1, 0, 0));
  Limits lim{Vec3::Constant(2.0), Vec3::Constant(1e6)};
  AssembleOptions opt;
  opt.lambda = 0.0;
  auto p = Assemble(s, lim, NoLimits(s), opt);
  ASSERT_TRUE(p.ok());
  const ConicSolution sol = Solve(*p);
  ASSERT_EQ(sol.status, SolveStatus::kOptimal);
  oracles::DpProblem dp{lim.v_max, lim.a_max, NoLimits(s), 0.0};
  const oracles::DpResult ref = oracles::SolveGridDp(s, dp, 200);
  ASSERT_TRUE(ref.feasible);
  EXPECT_LE(sol.objective, ref.objective + 1e-6);
  EXPECT_NEAR(sol.objective, ref.objective, 0.01 * ref.objective);
}

// Random instance whose identity timing is feasible.
struct Instance {
  traj::SampledTrajectory s;
  Limits limits;
  std::vector<double> speed_limits;
  AssembleOptions options;
};

Instance RandomInstance(Gen& gen, int n) {
  auto s = RandomWalk(gen, n, gen.Uniform(0.05, 0.3), Vec3::Zero(),
                      gen.Uniform(0.3, 2.0));
  Vec3 vmax = Vec3::Zero(), amax = Vec3::Zero();
  for (int i = 0; i < s.size(); ++i) {
    vmax = vmax.cwiseMax(s.vel()[i].cwiseAbs());
    amax = amax.cwiseMax(s.acc()[i].cwiseAbs());
  }
  Limits lim;
  for (int a = 0; a < 3; ++a) {
    lim.v_max[a] = std::max(vmax[a], 0.05) * gen.Uniform(1.0, 3.0);
    lim.a_max[a] = std::max(amax[a], 0.2) * gen.Uniform(1.0, 3.0);
  }
  std::vector<double> v(s.size(), kNoSpeedLimit);
  for (int i = 0; i < s.size(); ++i) {
    if (gen.Bool(0.3)) v[i] = s.vel()[i].norm() * gen.Uniform(1.0, 2.0);
  }
  AssembleOptions opt;
  opt.lambda = gen.Bool() ? 0.0 : gen.Uniform(0.0, 0.01);
  return {std::move(s), lim, std::move(v), opt};
}

TEST(SolveProperty, SmallInstancesMatchGridDp) {
  Gen gen(42);
  for (int trial = 0; trial < 6; ++trial) {
    Instance in = RandomInstance(gen, gen.Int(2, 8));
    auto p = Assemble(in.s, in.limits, in.speed_limits, in.options);
    ASSERT_TRUE(p.ok());
    const ConicSolution sol = Solve(*p);
    ASSERT_EQ(sol.status, SolveStatus::kOptimal) << sol.detail;
    ASSERT_TRUE(Verify(in.s, sol, in.limits, in.speed_limits, 1e-6).pass);
    const double obj = oracles::AllocationObjective(sol.beta, in.s.dtau(),
                                                    in.options.lambda, true);
    oracles::DpProblem dp{in.limits.v_max, in.limits.a_max, in.speed_limits,
                          in.options.lambda};
    const oracles::DpResult ref = oracles::SolveGridDp(in.s, dp, 300);
    ASSERT_TRUE(ref.feasible);
    EXPECT_LE(obj, ref.objective * (1 + 1e-7)) << trial;
    EXPECT_NEAR(obj, ref.objective, 0.01 * ref.objective) << trial;
  }
}

TEST(SolveProperty, FeasibleInstancesVerifyAndRespectLimits) {
  Gen gen(43);
  for (int trial = 0; trial < 15; ++trial) {
    Instance in = RandomInstance(gen, gen.Int(5, 60));
    if (gen.Bool(0.3)) in.options.beta_end = std::nullopt;
    auto p = Assemble(in.s, in.limits, in.speed_limits, in.options);
    ASSERT_TRUE(p.ok());
    const ConicSolution sol = Solve(*p);
    ASSERT_EQ(sol.status, SolveStatus::kOptimal) << sol.detail;
    const VerificationReport r =
        Verify(in.s, sol, in.limits, in.speed_limits, 1e-6);
    EXPECT_TRUE(r.pass) << ToJson(r).dump();
    auto m = traj::TimeMapping::FromBeta(sol.beta, in.s.dtau(), in.s.tau0());
    ASSERT_TRUE(m.ok());
    auto rt = traj::ReparameterizeAtKnots(in.s, *m);
    ASSERT_TRUE(rt.ok());
    for (int i = 0; i < rt->size(); ++i) {
      for (int a = 0; a < 3; ++a) {
        EXPECT_LE(std::abs(rt->vel[i][a]), in.limits.v_max[a] + 1e-4);
        EXPECT_LE(std::abs(rt->acc[i][a]), in.limits.a_max[a] + 1e-4);
      }
      if (std::isfinite(in.speed_limits[i])) {
        EXPECT_LE(rt->vel[i].norm(), in.speed_limits[i] + 1e-4);
      }
    }
  }
}

TEST(SolveProperty, RelaxingVelocityNeverSlowsDown) {
  Gen gen(44);
  for (int trial = 0; trial < 8; ++trial) {
    Instance in = RandomInstance(gen, 20);
    in.options.lambda = 0.0;
    auto p = Assemble(in.s, in.limits, in.speed_limits, in.options);
    const ConicSolution a = Solve(*p);
    Limits relaxed = in.limits;
    relaxed.v_max *= 2;
    auto q = Assemble(in.s, relaxed, in.speed_limits, in.options);
    const ConicSolution b = Solve(*q);
    ASSERT_EQ(a.status, SolveStatus::kOptimal);
    ASSERT_EQ(b.status, SolveStatus::kOptimal);
    EXPECT_LE(b.total_time, a.total_time + 1e-6);
  }
}

TEST(SolveProperty, SpatialScalingLeavesBetaUnchanged) {
  Gen gen(45);
  for (int trial = 0; trial < 5; ++trial) {
    Instance in = RandomInstance(gen, 15);
    const double k = gen.Uniform(0.3, 3.0);
    std::vector<Vec3> pos, vel, acc;
    for (int i = 0; i < in.s.size(); ++i) {
      pos.push_back(in.s.pos()[i] * k);
      vel.push_back(in.s.vel()[i] * k);
      acc.push_back(in.s.acc()[i] * k);
    }
    auto scaled = traj::SampledTrajectory::Create(in.s.tau0(), in.s.dtau(), pos,
                                                  vel, acc);
    Limits lim{in.limits.v_max * k, in.limits.a_max * k};
    std::vector<double> v = in.speed_limits;
    for (double& x : v) x *= k;
    const ConicSolution a =
        Solve(*Assemble(in.s, in.limits, in.speed_limits, in.options));
    const ConicSolution b = Solve(*Assemble(*scaled, lim, v, in.options));
    ASSERT_EQ(a.status, SolveStatus::kOptimal);
    ASSERT_EQ(b.status, SolveStatus::kOptimal);
    for (size_t i = 0; i < a.beta.size(); ++i) {
      EXPECT_NEAR(a.beta[i], b.beta[i], 1e-4 * (1 + a.beta[i]));
    }
  }
}

TEST(SolveTest, PaperLiteralSmoothnessTelescopes) {
  Gen gen(46);
  Instance in = RandomInstance(gen, 12);
  in.options.smoothness = SmoothnessMode::kPaperLiteral;
  in.options.lambda = 0.5;
  auto p = Assemble(in.s, in.limits, in.speed_limits, in.options);
  ASSERT_TRUE(p.ok());
  EXPECT_FALSE(p->layout.has_smoothness_slack);
  const ConicSolution sol = Solve(*p);
  ASSERT_EQ(sol.status, SolveStatus::kOptimal);
  // beta_N - beta_0 = 0 with both ends fixed at 1.
  EXPECT_NEAR(sol.objective, sol.total_time, 1e-6);
}

TEST(VerifyTest, IdentityPassesAndCorruptionIsNamed) {
  const auto s = StraightLine(6, 0.1, Vec3(1, 0, 0));
  ConicSolution id;
  id.status = SolveStatus::kOptimal;
  id.beta.assign(7, 1.0);
  id.alpha.assign(6, 0.0);
  const Limits lim{Vec3::Constant(1.0), Vec3::Constant(1.0)};
  EXPECT_TRUE(Verify(s, id, lim, NoLimits(s), 1e-6).pass);

  ConicSolution bad = id;
  bad.beta[3] = -0.5;
  bad.alpha[2] = (bad.beta[3] - bad.beta[2]) / 0.1;
  bad.alpha[3] = (bad.beta[4] - bad.beta[3]) / 0.1;
  const VerificationReport r = Verify(s, bad, lim, NoLimits(s), 1e-6);
  EXPECT_FALSE(r.pass);
  bool named = false;
  for (const Violation& v : r.violations) {
    if (v.check == "beta-positive" && v.index == 3) named = true;
  }
  EXPECT_TRUE(named) << ToJson(r).dump();

  ConicSolution fast = id;
  fast.beta.assign(7, 4.0);
  fast.alpha.assign(6, 0.0);
  const VerificationReport rv = Verify(s, fast, lim, NoLimits(s), 1e-6);
  EXPECT_FALSE(rv.pass);
  EXPECT_EQ(rv.violations.front().check, "velocity");
}

}  // namespace
}  // namespace tempo::socp
