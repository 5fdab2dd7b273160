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

#include "tempo/socp/solver.h"

#include <cmath>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "tempo/traj.h"

namespace tempo::socp {
namespace {

using Triplet = Eigen::Triplet<double>;

// Appends row r of G x + s = h for the constraint expr(x) <= rhs, i.e.
// G = coefficients, h = rhs.
void AddLeRow(const std::vector<LinearTerm>& terms, double sign, int r,
              std::vector<Triplet>& g) {
  for (const LinearTerm& t : terms) g.emplace_back(r, t.var, sign * t.coeff);
}

}  // namespace

ConeProgram ToConeProgram(const ConicProblem& problem) {
  ConeProgram prog;
  const int n = problem.layout.num_vars();
  prog.num_vars = n;
  prog.c = Eigen::Map<const Eigen::VectorXd>(problem.objective.data(), n);

  const int p = static_cast<int>(problem.equalities.size());
  std::vector<Triplet> a;
  prog.b.resize(p);
  for (int r = 0; r < p; ++r) {
    for (const LinearTerm& t : problem.equalities[r].terms) {
      a.emplace_back(r, t.var, t.coeff);
    }
    prog.b[r] = problem.equalities[r].rhs;
  }
  prog.A.resize(p, n);
  prog.A.setFromTriplets(a.begin(), a.end());

  const int l = static_cast<int>(problem.inequalities.size());
  const int m = l + 3 * static_cast<int>(problem.cones.size());
  std::vector<Triplet> g;
  prog.h.resize(m);
  for (int r = 0; r < l; ++r) {
    AddLeRow(problem.inequalities[r].terms, 1.0, r, g);
    prog.h[r] = problem.inequalities[r].rhs;
  }
  // s = h - G x must equal (x + y, x - y, sqrt(2) z) of the affine cone
  // arguments, so G holds their negated coefficients and h their constants.
  int r = l;
  const double root2 = std::sqrt(2.0);
  for (const RotatedCone& c : problem.cones) {
    AddLeRow(c.x.terms, -1.0, r, g);
    AddLeRow(c.y.terms, -1.0, r, g);
    prog.h[r] = c.x.constant + c.y.constant;
    AddLeRow(c.x.terms, -1.0, r + 1, g);
    AddLeRow(c.y.terms, 1.0, r + 1, g);
    prog.h[r + 1] = c.x.constant - c.y.constant;
    AddLeRow(c.z.terms, -root2, r + 2, g);
    prog.h[r + 2] = root2 * c.z.constant;
    prog.soc_dims.push_back(3);
    r += 3;
  }
  prog.G.resize(m, n);
  prog.G.setFromTriplets(g.begin(), g.end());  // sums duplicates
  prog.num_orthant = l;
  return prog;
}

ConicSolution InteriorPointSolver::Solve(const ConicProblem& problem,
                                         double tol) const {
  ConicSolution sol;
  if (absl::Status st = problem.Validate(); !st.ok()) {
    sol.detail = std::string(st.message());
    return sol;
  }
  const IpmResult res = SolveConeProgram(ToConeProgram(problem), settings_);
  sol.iterations = res.iterations;
  const std::string ipm = ToString(res.status);
  switch (res.status) {
    case IpmStatus::kPrimalInfeasible:
      sol.status = SolveStatus::kInfeasible;
      sol.detail = "constraints admit no time mapping";
      return sol;
    case IpmStatus::kDualInfeasible:
      sol.detail = "problem reported unbounded";
      return sol;
    case IpmStatus::kMaxIterations:
    case IpmStatus::kNumericalFailure:
      sol.detail = absl::StrCat("interior-point: ", ipm);
      return sol;
    case IpmStatus::kOptimal:
    case IpmStatus::kOptimalInaccurate:
      break;
  }

  sol.x.assign(res.x.data(), res.x.data() + res.x.size());
  const VariableLayout& l = problem.layout;
  const int n = l.num_segments;
  sol.alpha.assign(sol.x.begin() + l.alpha(0), sol.x.begin() + l.alpha(0) + n);
  sol.beta.assign(sol.x.begin() + l.beta(0), sol.x.begin() + l.beta(0) + n + 1);
  // alpha is a function of beta; snapping it onto the equality rows removes
  // the solver's residual there at a change far below tol elsewhere.
  for (int i = 0; i < n; ++i) {
    sol.alpha[i] = (sol.beta[i + 1] - sol.beta[i]) / problem.dtau;
    sol.x[l.alpha(i)] = sol.alpha[i];
  }
  sol.objective = problem.Objective(sol.x);
  sol.max_residual = problem.MaxViolation(sol.x, /*relative=*/true);
  for (double b : sol.beta) {
    if (!(b > 0.0)) {
      sol.detail = "non-positive beta in returned point";
      return sol;
    }
  }
  for (int i = 0; i < n; ++i) {
    sol.total_time +=
        traj::TimeMapping::SegmentDuration(sol.beta[i], sol.beta[i + 1],
                                           problem.dtau);
  }
  if (!(sol.max_residual <= tol)) {
    sol.detail = absl::StrFormat(
        "interior-point %s but residual %.3g exceeds %.3g", ipm,
        sol.max_residual, tol);
    return sol;
  }
  sol.status = SolveStatus::kOptimal;
  sol.detail = ipm;
  return sol;
}

ConicSolution Solve(const ConicProblem& problem, double tol) {
  return InteriorPointSolver().Solve(problem, tol);
}

}  // namespace tempo::socp
