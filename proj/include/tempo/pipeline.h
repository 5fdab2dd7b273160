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

// End-to-end time allocation: braking zones -> chance-constrained speed
// limits -> cone program -> independent verification -> time mapping.

#ifndef TEMPO_PIPELINE_H_
#define TEMPO_PIPELINE_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "tempo/brake.h"
#include "tempo/gridmap.h"
#include "tempo/socp/assemble.h"
#include "tempo/socp/problem.h"
#include "tempo/socp/verify.h"
#include "tempo/traj.h"

namespace tempo {

struct PipelineConfig {
  brake::BrakingConfig braking;
  socp::ChanceConfig chance;
  socp::Limits limits;
  socp::AssembleOptions assemble;
  double tol = 1e-6;
  // Output sampling period of reparameterized trajectories and profiles, s.
  double dt_out = 0.01;

  absl::Status Validate() const;
};

enum class Outcome {
  kVerified,
  kInfeasible,
  // The solver failed or its point did not pass verification.
  kUnverified,
};

std::string ToString(Outcome outcome);

struct Allocation {
  Outcome outcome = Outcome::kUnverified;
  std::string detail;
  brake::BrakingAnalysis braking;
  socp::SpeedLimits speed_limits;
  socp::ConicSolution solution;
  socp::VerificationReport verification;
  // Set when outcome == kVerified.
  std::optional<traj::TimeMapping> mapping;
  // Wall-clock seconds spent in assembly and solve.
  double solve_seconds = 0.0;
};

// Fails only on invalid input; infeasibility and verification failures are
// reported through Allocation::outcome.
absl::StatusOr<Allocation> RunAllocation(const traj::SampledTrajectory& s,
                                         const gridmap::VoxelMap& map,
                                         const PipelineConfig& cfg);

}  // namespace tempo

#endif  // TEMPO_PIPELINE_H_
