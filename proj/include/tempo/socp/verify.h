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

// Solver-independent checks of a time allocation. Every check recomputes its
// quantities from the trajectory samples and the returned beta/alpha values.

#ifndef TEMPO_SOCP_VERIFY_H_
#define TEMPO_SOCP_VERIFY_H_

#include <span>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "tempo/socp/problem.h"
#include "tempo/traj.h"

namespace tempo::socp {

// Tolerance for sum(alpha_i) dtau == beta_N - beta_0.
inline constexpr double kTelescopeTolerance = 1e-9;

// The worst offender of one named check. `amount` is how far past the
// allowed bound the value lies (> 0 means violated).
struct Violation {
  std::string check;
  int index = -1;
  double amount = 0.0;
};

struct VerificationReport {
  bool pass = false;
  // Failing checks only, one entry per check name.
  std::vector<Violation> violations;
  // Worst value of every check, passing or not.
  std::vector<Violation> worst;
  double max_speed = 0.0;
  double max_abs_accel = 0.0;
  double total_time = 0.0;
};

VerificationReport Verify(const traj::SampledTrajectory& s,
                          const ConicSolution& sol, const Limits& limits,
                          std::span<const double> speed_limits, double tol);

nlohmann::json ToJson(const VerificationReport& report);

}  // namespace tempo::socp

#endif  // TEMPO_SOCP_VERIFY_H_
