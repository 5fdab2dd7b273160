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

#ifndef TEMPO_SOCP_PROBLEM_H_
#define TEMPO_SOCP_PROBLEM_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "absl/status/status.h"
#include "nlohmann/json.hpp"

namespace tempo::socp {

using Vec3 = Eigen::Vector3d;

// Symmetric per-axis bounds: -v_max <= v <= v_max, -a_max <= a <= a_max.
struct Limits {
  Vec3 v_max = Vec3::Constant(1.0);
  Vec3 a_max = Vec3::Constant(3.0);

  absl::Status Validate() const;
};

struct LinearTerm {
  int var = 0;
  double coeff = 0.0;
};

struct AffineExpr {
  std::vector<LinearTerm> terms;
  double constant = 0.0;

  double Evaluate(std::span<const double> x) const;
};

// sum(terms) == rhs for equalities, sum(terms) <= rhs for inequalities.
struct LinearRow {
  std::vector<LinearTerm> terms;
  double rhs = 0.0;
};

enum class RowKind {
  kAlphaDefinition,
  kBoundary,
  kBetaFloor,
  kZetaNonNegative,
  kAxisVelocity,
  kSpeedLimit,
  kAccelUpper,
  kAccelLower,
};

std::string ToString(RowKind kind);

struct RowTag {
  RowKind kind;
  int knot = 0;
  int axis = -1;
};

enum class ConeKind { kSqrtBeta, kInverseSpeed, kSmoothness };

// Rotated cone 2 x y >= z^2 with x, y >= 0.
struct RotatedCone {
  AffineExpr x, y, z;
  ConeKind kind = ConeKind::kSqrtBeta;
  int index = 0;
};

// Variable offsets: alpha[N], beta[N+1], zeta[N+1], gamma[N] and, with the
// quadratic smoothness term, u[N].
struct VariableLayout {
  int num_segments = 0;
  bool has_smoothness_slack = false;

  int alpha(int i) const { return i; }
  int beta(int i) const { return num_segments + i; }
  int zeta(int i) const { return 2 * num_segments + 1 + i; }
  int gamma(int i) const { return 3 * num_segments + 2 + i; }
  int smooth(int i) const { return 4 * num_segments + 2 + i; }
  int num_vars() const {
    return 4 * num_segments + 2 + (has_smoothness_slack ? num_segments : 0);
  }
};

struct ConicProblem {
  VariableLayout layout;
  double dtau = 0.0;
  std::vector<double> objective;  // size layout.num_vars()
  std::vector<LinearRow> equalities;
  std::vector<RowTag> equality_tags;
  std::vector<LinearRow> inequalities;
  std::vector<RowTag> inequality_tags;
  std::vector<RotatedCone> cones;
  std::optional<double> beta_start;
  std::optional<double> beta_end;

  // Every row and cone references in-range variables; sizes are consistent.
  absl::Status Validate() const;

  // Largest violation over equality rows, inequality rows and cones at x.
  // With `relative`, each violation is divided by one plus the magnitude of
  // the largest term entering that row or cone.
  double MaxViolation(std::span<const double> x, bool relative = false) const;
  double Objective(std::span<const double> x) const;
};

// Debug dump: variable counts, triplet-form rows, cones and objective.
nlohmann::json ToJson(const ConicProblem& problem);

enum class SolveStatus { kOptimal, kInfeasible, kNumericalFailure };

std::string ToString(SolveStatus status);

struct ConicSolution {
  SolveStatus status = SolveStatus::kNumericalFailure;
  std::vector<double> x;
  std::vector<double> beta;
  std::vector<double> alpha;
  // Objective of the conic problem (time plus weighted smoothness).
  double objective = 0.0;
  // Sum of the exact segment durations for the returned beta.
  double total_time = 0.0;
  // Largest relative constraint violation (see MaxViolation).
  double max_residual = 0.0;
  int iterations = 0;
  std::string detail;
};

}  // namespace tempo::socp

#endif  // TEMPO_SOCP_PROBLEM_H_
