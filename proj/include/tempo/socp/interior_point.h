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

// Primal-dual interior-point method for cone programs in standard form
//
//   minimize    c^T x
//   subject to  A x = b
//               G x + s = h,   s in K = R_+^l x Q^{q_1} x ... x Q^{q_k}
//
// where Q^q = {(u0, u1) : u0 >= |u1|_2} is the second-order cone. The method
// runs on the homogeneous self-dual embedding, so infeasibility is detected
// from certificates instead of iteration limits. Each iteration uses
// Nesterov-Todd scaling and a Mehrotra predictor-corrector step; the Newton
// systems are solved with a sparse LDL^T factorization of the regularized,
// quasi-definite KKT matrix followed by iterative refinement.

#ifndef TEMPO_SOCP_INTERIOR_POINT_H_
#define TEMPO_SOCP_INTERIOR_POINT_H_

#include <string>
#include <vector>

#include "Eigen/Core"
#include "Eigen/SparseCore"

namespace tempo::socp {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

struct ConeProgram {
  int num_vars = 0;
  Eigen::VectorXd c;
  SparseMatrix A;  // p x n
  Eigen::VectorXd b;
  SparseMatrix G;  // m x n; orthant rows first, then SOC blocks in order.
  Eigen::VectorXd h;
  int num_orthant = 0;
  std::vector<int> soc_dims;
};

struct IpmSettings {
  double feastol = 1e-8;
  double abstol = 1e-8;
  double reltol = 1e-8;
  // Accepted when the iteration stalls before reaching the tolerances above:
  // the best iterate seen is returned, or an infeasibility certificate this
  // accurate.
  double feastol_inaccurate = 1e-6;
  double abstol_inaccurate = 1e-6;
  double reltol_inaccurate = 1e-6;
  int max_iterations = 100;
  double step_fraction = 0.99;
  double static_regularization = 1e-8;
  int refinement_steps = 8;
  // Prints one line of progress per iteration to stderr when true.
  bool verbose = false;
};

enum class IpmStatus {
  kOptimal,
  kOptimalInaccurate,
  kPrimalInfeasible,
  kDualInfeasible,
  kMaxIterations,
  kNumericalFailure,
};

std::string ToString(IpmStatus status);

struct IpmResult {
  IpmStatus status = IpmStatus::kNumericalFailure;
  Eigen::VectorXd x, y, z, s;
  int iterations = 0;
  double primal_cost = 0.0;
  double dual_cost = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
};

IpmResult SolveConeProgram(const ConeProgram& program,
                           const IpmSettings& settings = {});

}  // namespace tempo::socp

#endif  // TEMPO_SOCP_INTERIOR_POINT_H_
