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

// Builds the time-allocation cone program. With beta_i = hdot^2 at knot i and
// alpha_i = (beta_{i+1} - beta_i) / dtau, the real time of segment i is
// 2 dtau / (sqrt(beta_i) + sqrt(beta_{i+1})). Two rotated cones make it
// linear: zeta_i <= sqrt(beta_i) and gamma_i >= 2 / (zeta_i + zeta_{i+1}).
// Velocity limits are linear in beta, accelerations linear in (alpha, beta).

#ifndef TEMPO_SOCP_ASSEMBLE_H_
#define TEMPO_SOCP_ASSEMBLE_H_

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "tempo/brake.h"
#include "tempo/chance.h"
#include "tempo/gridmap.h"
#include "tempo/socp/problem.h"
#include "tempo/traj.h"

namespace tempo::socp {

inline constexpr double kNoSpeedLimit = std::numeric_limits<double>::infinity();

enum class SmoothnessMode {
  // lambda * sum alpha_i^2 dtau, through slacks u_i >= alpha_i^2.
  kQuadratic,
  // lambda * sum alpha_i dtau. Telescopes to lambda (beta_N - beta_0).
  kPaperLiteral,
};

struct AssembleOptions {
  double lambda = 1e-3;
  SmoothnessMode smoothness = SmoothnessMode::kQuadratic;
  // Fixed boundary values of beta; nullopt leaves the end free (>= eps).
  std::optional<double> beta_start = 1.0;
  std::optional<double> beta_end = 1.0;
  double beta_floor = 1e-6;
};

struct ChanceConfig {
  chance::SafetyEllipsoid ellipsoid =
      *chance::SafetyEllipsoid::Create(Vec3::Constant(0.3));
  chance::UncertaintyModel uncertainty;
  chance::ChanceParams params;
};

struct SpeedLimits {
  // Per sample; kNoSpeedLimit outside braking zones.
  std::vector<double> limit;
  // Samples whose mean position is inside the collision set.
  std::vector<int> mean_in_collision;
};

// Chance-constrained speed caps for samples inside braking zones.
absl::StatusOr<SpeedLimits> PerSampleSpeedLimits(
    const traj::SampledTrajectory& s, std::span<const brake::BrakingZone> zones,
    std::span<const std::optional<gridmap::Neighbor>> nearest,
    const ChanceConfig& cfg, const Limits& limits);

// Fails with FailedPrecondition when a zero speed cap meets a moving sample
// (infeasible as constructed), InvalidArgument on malformed input.
absl::StatusOr<ConicProblem> Assemble(const traj::SampledTrajectory& s,
                                      const Limits& limits,
                                      std::span<const double> speed_limits,
                                      const AssembleOptions& options);

}  // namespace tempo::socp

#endif  // TEMPO_SOCP_ASSEMBLE_H_
