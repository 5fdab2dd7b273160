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

#include "tempo/pipeline.h"

#include <chrono>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "tempo/socp/solver.h"

namespace tempo {

absl::Status PipelineConfig::Validate() const {
  if (absl::Status st = braking.Validate(); !st.ok()) return st;
  if (absl::Status st = chance.uncertainty.Validate(); !st.ok()) return st;
  if (absl::Status st = chance.params.Validate(); !st.ok()) return st;
  if (absl::Status st = limits.Validate(); !st.ok()) return st;
  if (!(tol > 0.0)) return absl::InvalidArgumentError("tol must be positive");
  if (!(dt_out > 0.0)) {
    return absl::InvalidArgumentError("dt_out must be positive");
  }
  return absl::OkStatus();
}

std::string ToString(Outcome outcome) {
  switch (outcome) {
    case Outcome::kVerified:
      return "verified";
    case Outcome::kInfeasible:
      return "infeasible";
    case Outcome::kUnverified:
      return "unverified";
  }
  return "unknown";
}

absl::StatusOr<Allocation> RunAllocation(const traj::SampledTrajectory& s,
                                         const gridmap::VoxelMap& map,
                                         const PipelineConfig& cfg) {
  if (absl::Status st = cfg.Validate(); !st.ok()) return st;
  Allocation out;
  out.braking = brake::DetermineBrakingZones(s, map, cfg.braking);
  absl::StatusOr<socp::SpeedLimits> limits = socp::PerSampleSpeedLimits(
      s, out.braking.zones, out.braking.nearest, cfg.chance, cfg.limits);
  if (!limits.ok()) return limits.status();
  out.speed_limits = *std::move(limits);

  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<socp::ConicProblem> problem = socp::Assemble(
      s, cfg.limits, out.speed_limits.limit, cfg.assemble);
  if (!problem.ok()) {
    if (problem.status().code() != absl::StatusCode::kFailedPrecondition) {
      return problem.status();
    }
    out.outcome = Outcome::kInfeasible;
    out.detail = std::string(problem.status().message());
  } else {
    out.solution = socp::Solve(*problem, cfg.tol);
  }
  out.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (!out.speed_limits.mean_in_collision.empty()) {
    absl::StrAppend(&out.detail, out.detail.empty() ? "" : "; ",
                    "mean position in collision at samples ",
                    absl::StrJoin(out.speed_limits.mean_in_collision, ","));
  }
  if (!problem.ok()) return out;

  switch (out.solution.status) {
    case socp::SolveStatus::kInfeasible:
      out.outcome = Outcome::kInfeasible;
      absl::StrAppend(&out.detail, out.detail.empty() ? "" : "; ",
                      out.solution.detail);
      return out;
    case socp::SolveStatus::kNumericalFailure:
      out.outcome = Outcome::kUnverified;
      absl::StrAppend(&out.detail, out.detail.empty() ? "" : "; ",
                      out.solution.detail);
      return out;
    case socp::SolveStatus::kOptimal:
      break;
  }
  out.verification = socp::Verify(s, out.solution, cfg.limits,
                                   out.speed_limits.limit, cfg.tol);
  if (!out.verification.pass) {
    out.outcome = Outcome::kUnverified;
    absl::StrAppend(&out.detail, out.detail.empty() ? "" : "; ",
                    "verification failed");
    return out;
  }
  absl::StatusOr<traj::TimeMapping> mapping =
      traj::TimeMapping::FromBeta(out.solution.beta, s.dtau(), s.tau0());
  if (!mapping.ok()) return mapping.status();
  out.mapping = *std::move(mapping);
  out.outcome = Outcome::kVerified;
  return out;
}

}  // namespace tempo
