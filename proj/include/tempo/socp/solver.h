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

#ifndef TEMPO_SOCP_SOLVER_H_
#define TEMPO_SOCP_SOLVER_H_

#include <string>

#include "tempo/socp/interior_point.h"
#include "tempo/socp/problem.h"

namespace tempo::socp {

// Any backend that maps a ConicProblem to a ConicSolution. Implementations
// must report kOptimal only for points whose MaxViolation() is within tol.
class ConicSolver {
 public:
  virtual ~ConicSolver() = default;
  virtual std::string name() const = 0;
  virtual ConicSolution Solve(const ConicProblem& problem,
                              double tol) const = 0;
};

class InteriorPointSolver : public ConicSolver {
 public:
  InteriorPointSolver() = default;
  explicit InteriorPointSolver(const IpmSettings& settings)
      : settings_(settings) {}

  std::string name() const override { return "interior-point"; }
  ConicSolution Solve(const ConicProblem& problem, double tol) const override;

 private:
  IpmSettings settings_;
};

// Standard form: rotated cones (x, y, z) become second-order cones
// (x + y, x - y, sqrt(2) z).
ConeProgram ToConeProgram(const ConicProblem& problem);

// Solves with the built-in interior-point backend.
ConicSolution Solve(const ConicProblem& problem, double tol = 1e-6);

}  // namespace tempo::socp

#endif  // TEMPO_SOCP_SOLVER_H_
