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

#include "tempo/socp/verify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace tempo::socp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Keeps the largest excess seen for each check name.
class Tracker {
 public:
  void Record(const std::string& check, int index, double amount) {
    auto [it, inserted] = worst_.try_emplace(check, Violation{check, index, amount});
    if (!inserted && amount > it->second.amount) {
      it->second.index = index;
      it->second.amount = amount;
    }
  }

  void Fail(const std::string& check, int index) { Record(check, index, kInf); }

  void Finish(VerificationReport& report) const {
    for (const auto& [name, v] : worst_) {
      report.worst.push_back(v);
      if (v.amount > 0.0) report.violations.push_back(v);
    }
    report.pass = report.violations.empty();
  }

 private:
  std::map<std::string, Violation> worst_;
};

}  // namespace

VerificationReport Verify(const traj::SampledTrajectory& s,
                          const ConicSolution& sol, const Limits& limits,
                          std::span<const double> speed_limits, double tol) {
  VerificationReport report;
  Tracker t;
  const int n = s.num_segments();
  if (sol.status != SolveStatus::kOptimal) t.Fail("status", -1);
  if (static_cast<int>(sol.beta.size()) != n + 1 ||
      static_cast<int>(sol.alpha.size()) != n ||
      static_cast<int>(speed_limits.size()) != n + 1) {
    t.Fail("shape", -1);
    t.Finish(report);
    return report;
  }

  bool beta_ok = true;
  for (int i = 0; i <= n; ++i) {
    // Positive excess when beta_i <= 0.
    const double b = sol.beta[i];
    const double excess =
        !std::isfinite(b) ? kInf
        : b > 0.0         ? -b
                          : std::max(-b, std::numeric_limits<double>::min());
    t.Record("beta-positive", i, excess);
    beta_ok = beta_ok && b > 0.0 && std::isfinite(b);
  }

  double alpha_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double expect = (sol.beta[i + 1] - sol.beta[i]) / s.dtau();
    t.Record("alpha-definition", i, std::abs(sol.alpha[i] - expect) - tol);
    alpha_sum += sol.alpha[i] * s.dtau();
  }
  t.Record("telescoping", -1,
           std::abs(alpha_sum - (sol.beta[n] - sol.beta[0])) -
               kTelescopeTolerance);

  if (!beta_ok) {
    t.Finish(report);
    return report;
  }
  absl::StatusOr<traj::TimeMapping> mapping =
      traj::TimeMapping::FromBeta(sol.beta, s.dtau(), s.tau0());
  if (!mapping.ok()) {
    t.Fail("mapping", -1);
    t.Finish(report);
    return report;
  }
  const std::vector<double>& tk = mapping->t_knots();
  for (int i = 0; i < n; ++i) t.Record("monotone", i, tk[i] - tk[i + 1]);
  report.total_time = mapping->total_time();

  absl::StatusOr<traj::ReparamTrajectory> r =
      traj::ReparameterizeAtKnots(s, *mapping);
  if (!r.ok()) {
    t.Fail("reparameterize", -1);
    t.Finish(report);
    return report;
  }
  for (int i = 0; i <= n; ++i) {
    const Vec3& v = r->vel[i];
    const Vec3& a = r->acc[i];
    for (int ax = 0; ax < 3; ++ax) {
      t.Record("velocity", i,
               std::abs(v[ax]) - limits.v_max[ax] -
                   tol * (1.0 + limits.v_max[ax]));
      t.Record("acceleration", i,
               std::abs(a[ax]) - limits.a_max[ax] -
                   tol * (1.0 + limits.a_max[ax]));
      report.max_abs_accel = std::max(report.max_abs_accel, std::abs(a[ax]));
    }
    report.max_speed = std::max(report.max_speed, v.norm());
    if (std::isfinite(speed_limits[i])) {
      t.Record("speed-limit", i, v.norm() - speed_limits[i] - tol);
    }
  }
  t.Finish(report);
  return report;
}

nlohmann::json ToJson(const VerificationReport& report) {
  auto list = [](const std::vector<Violation>& vs) {
    nlohmann::json out = nlohmann::json::array();
    for (const Violation& v : vs) {
      out.push_back({{"check", v.check},
                     {"index", v.index},
                     {"amount", std::isfinite(v.amount) ? nlohmann::json(v.amount)
                                                        : nlohmann::json("inf")}});
    }
    return out;
  };
  return {{"pass", report.pass},
          {"violations", list(report.violations)},
          {"worst", list(report.worst)},
          {"max_speed", report.max_speed},
          {"max_abs_accel", report.max_abs_accel},
          {"total_time", report.total_time}};
}

}  // namespace tempo::socp
