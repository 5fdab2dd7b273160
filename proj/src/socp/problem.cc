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

#include "tempo/socp/problem.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace tempo::socp {
namespace {

double RowValue(const LinearRow& row, std::span<const double> x) {
  double v = 0.0;
  for (const LinearTerm& t : row.terms) v += t.coeff * x[t.var];
  return v;
}

bool TermsInRange(const std::vector<LinearTerm>& terms, int n) {
  return std::all_of(terms.begin(), terms.end(), [n](const LinearTerm& t) {
    return t.var >= 0 && t.var < n && std::isfinite(t.coeff);
  });
}

nlohmann::json TermsJson(const std::vector<LinearTerm>& terms) {
  nlohmann::json out = nlohmann::json::array();
  for (const LinearTerm& t : terms) out.push_back({t.var, t.coeff});
  return out;
}

nlohmann::json AffineJson(const AffineExpr& e) {
  return {{"terms", TermsJson(e.terms)}, {"constant", e.constant}};
}

}  // namespace

absl::Status Limits::Validate() const {
  if (!(v_max.array() > 0.0).all() || !(a_max.array() > 0.0).all() ||
      !v_max.allFinite() || !a_max.allFinite()) {
    return absl::InvalidArgumentError(
        "velocity and acceleration limits must be positive and finite");
  }
  return absl::OkStatus();
}

double AffineExpr::Evaluate(std::span<const double> x) const {
  double v = constant;
  for (const LinearTerm& t : terms) v += t.coeff * x[t.var];
  return v;
}

std::string ToString(RowKind kind) {
  switch (kind) {
    case RowKind::kAlphaDefinition:
      return "alpha-definition";
    case RowKind::kBoundary:
      return "boundary";
    case RowKind::kBetaFloor:
      return "beta-floor";
    case RowKind::kZetaNonNegative:
      return "zeta-nonnegative";
    case RowKind::kAxisVelocity:
      return "axis-velocity";
    case RowKind::kSpeedLimit:
      return "speed-limit";
    case RowKind::kAccelUpper:
      return "accel-upper";
    case RowKind::kAccelLower:
      return "accel-lower";
  }
  return "unknown";
}

std::string ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kNumericalFailure:
      return "numerical-failure";
  }
  return "unknown";
}

absl::Status ConicProblem::Validate() const {
  const int n = layout.num_vars();
  if (layout.num_segments < 1) {
    return absl::InvalidArgumentError("problem needs at least one segment");
  }
  if (static_cast<int>(objective.size()) != n) {
    return absl::InvalidArgumentError("objective size mismatch");
  }
  if (equality_tags.size() != equalities.size() ||
      inequality_tags.size() != inequalities.size()) {
    return absl::InvalidArgumentError("row tag count mismatch");
  }
  for (size_t r = 0; r < equalities.size(); ++r) {
    if (!TermsInRange(equalities[r].terms, n)) {
      return absl::InvalidArgumentError(
          absl::StrCat("equality row ", r, " references a bad variable"));
    }
  }
  for (size_t r = 0; r < inequalities.size(); ++r) {
    if (!TermsInRange(inequalities[r].terms, n)) {
      return absl::InvalidArgumentError(
          absl::StrCat("inequality row ", r, " references a bad variable"));
    }
  }
  for (size_t k = 0; k < cones.size(); ++k) {
    const RotatedCone& c = cones[k];
    if (!TermsInRange(c.x.terms, n) || !TermsInRange(c.y.terms, n) ||
        !TermsInRange(c.z.terms, n)) {
      return absl::InvalidArgumentError(
          absl::StrCat("cone ", k, " references a bad variable"));
    }
  }
  return absl::OkStatus();
}

double ConicProblem::MaxViolation(std::span<const double> x,
                                  bool relative) const {
  // Magnitude of the largest term entering a row, for relative scaling.
  auto scale = [&](const std::vector<LinearTerm>& terms, double rhs) {
    if (!relative) return 1.0;
    double m = std::abs(rhs);
    for (const LinearTerm& t : terms) m = std::max(m, std::abs(t.coeff * x[t.var]));
    return 1.0 + m;
  };
  double worst = 0.0;
  for (const LinearRow& row : equalities) {
    worst = std::max(worst, std::abs(RowValue(row, x) - row.rhs) /
                                scale(row.terms, row.rhs));
  }
  for (const LinearRow& row : inequalities) {
    worst = std::max(worst, (RowValue(row, x) - row.rhs) /
                                scale(row.terms, row.rhs));
  }
  for (const RotatedCone& c : cones) {
    const double a = c.x.Evaluate(x);
    const double b = c.y.Evaluate(x);
    const double z = c.z.Evaluate(x);
    // Equivalent second-order cone |(a - b, sqrt(2) z)| <= a + b.
    const double v = std::hypot(a - b, std::sqrt(2.0) * z) - (a + b);
    worst = std::max(
        worst, relative ? v / (1.0 + std::abs(a) + std::abs(b)) : v);
  }
  return worst;
}

double ConicProblem::Objective(std::span<const double> x) const {
  double v = 0.0;
  for (size_t i = 0; i < objective.size(); ++i) v += objective[i] * x[i];
  return v;
}

nlohmann::json ToJson(const ConicProblem& problem) {
  const VariableLayout& l = problem.layout;
  nlohmann::json j;
  j["num_segments"] = l.num_segments;
  j["num_vars"] = l.num_vars();
  j["dtau"] = problem.dtau;
  j["variables"] = {
      {"alpha", {l.alpha(0), l.num_segments}},
      {"beta", {l.beta(0), l.num_segments + 1}},
      {"zeta", {l.zeta(0), l.num_segments + 1}},
      {"gamma", {l.gamma(0), l.num_segments}},
  };
  if (l.has_smoothness_slack) {
    j["variables"]["u"] = {l.smooth(0), l.num_segments};
  }
  j["objective"] = problem.objective;
  auto rows = [](const std::vector<LinearRow>& rows,
                 const std::vector<RowTag>& tags) {
    nlohmann::json triplets = nlohmann::json::array();
    nlohmann::json rhs = nlohmann::json::array();
    nlohmann::json kinds = nlohmann::json::array();
    for (size_t r = 0; r < rows.size(); ++r) {
      for (const LinearTerm& t : rows[r].terms) {
        triplets.push_back({r, t.var, t.coeff});
      }
      rhs.push_back(rows[r].rhs);
      kinds.push_back({ToString(tags[r].kind), tags[r].knot, tags[r].axis});
    }
    return nlohmann::json{{"triplets", triplets}, {"rhs", rhs}, {"tags", kinds}};
  };
  j["equalities"] = rows(problem.equalities, problem.equality_tags);
  j["inequalities"] = rows(problem.inequalities, problem.inequality_tags);
  nlohmann::json cones = nlohmann::json::array();
  for (const RotatedCone& c : problem.cones) {
    cones.push_back(
        {{"x", AffineJson(c.x)}, {"y", AffineJson(c.y)}, {"z", AffineJson(c.z)}});
  }
  j["rotated_cones"] = cones;
  return j;
}

}  // namespace tempo::socp
