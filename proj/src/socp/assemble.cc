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

#include "tempo/socp/assemble.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace tempo::socp {

absl::StatusOr<SpeedLimits> PerSampleSpeedLimits(
    const traj::SampledTrajectory& s, std::span<const brake::BrakingZone> zones,
    std::span<const std::optional<gridmap::Neighbor>> nearest,
    const ChanceConfig& cfg, const Limits& limits) {
  if (static_cast<int>(nearest.size()) != s.size()) {
    return absl::InvalidArgumentError("nearest obstacle list size mismatch");
  }
  SpeedLimits out;
  out.limit.assign(s.size(), kNoSpeedLimit);
  const double v_cap = limits.v_max.norm();
  for (const brake::BrakingZone& z : zones) {
    if (z.first_index < 0 || z.last_index >= s.size()) {
      return absl::InvalidArgumentError("braking zone outside trajectory");
    }
    for (int i = z.first_index; i <= z.last_index; ++i) {
      if (!nearest[i].has_value()) {
        return absl::InvalidArgumentError(
            absl::StrCat("no nearest obstacle for in-zone sample ", i));
      }
      const chance::SpeedLimit lim = chance::VelocityLimit(
          s.pos()[i], nearest[i]->point, cfg.ellipsoid, cfg.uncertainty,
          cfg.params, v_cap, s.vel()[i]);
      out.limit[i] = lim.value;
      if (lim.mean_in_collision) out.mean_in_collision.push_back(i);
    }
  }
  return out;
}

absl::StatusOr<ConicProblem> Assemble(const traj::SampledTrajectory& s,
                                      const Limits& limits,
                                      std::span<const double> speed_limits,
                                      const AssembleOptions& options) {
  const int n = s.num_segments();
  if (n < 1) return absl::InvalidArgumentError("zero-length trajectory");
  if (absl::Status st = limits.Validate(); !st.ok()) return st;
  if (static_cast<int>(speed_limits.size()) != s.size()) {
    return absl::InvalidArgumentError("speed limit count mismatch");
  }
  if (!(options.lambda >= 0.0)) {
    return absl::InvalidArgumentError("lambda must be non-negative");
  }
  if (!(options.beta_floor > 0.0)) {
    return absl::InvalidArgumentError("beta floor must be positive");
  }
  for (const auto& b : {options.beta_start, options.beta_end}) {
    if (b.has_value() && !(*b > 0.0)) {
      return absl::InvalidArgumentError("boundary beta must be positive");
    }
  }
  for (int i = 0; i < s.size(); ++i) {
    if (speed_limits[i] < 0.0 || std::isnan(speed_limits[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("speed limit at sample ", i, " is negative"));
    }
    if (speed_limits[i] == 0.0 && s.vel()[i].squaredNorm() > 0.0) {
      return absl::FailedPreconditionError(absl::StrCat(
          "infeasible: zero speed limit at moving sample ", i));
    }
  }

  ConicProblem p;
  p.dtau = s.dtau();
  p.layout.num_segments = n;
  p.layout.has_smoothness_slack =
      options.smoothness == SmoothnessMode::kQuadratic;
  const VariableLayout& l = p.layout;
  const double dt = s.dtau();
  p.objective.assign(l.num_vars(), 0.0);
  for (int i = 0; i < n; ++i) {
    p.objective[l.gamma(i)] = dt;
    if (options.smoothness == SmoothnessMode::kQuadratic) {
      p.objective[l.smooth(i)] = options.lambda * dt;
    } else {
      p.objective[l.alpha(i)] = options.lambda * dt;
    }
  }

  auto add_eq = [&](LinearRow row, RowTag tag) {
    p.equalities.push_back(std::move(row));
    p.equality_tags.push_back(tag);
  };
  auto add_le = [&](LinearRow row, RowTag tag) {
    p.inequalities.push_back(std::move(row));
    p.inequality_tags.push_back(tag);
  };

  for (int i = 0; i < n; ++i) {
    add_eq({{{l.alpha(i), 1.0}, {l.beta(i + 1), -1.0 / dt}, {l.beta(i), 1.0 / dt}},
            0.0},
           {RowKind::kAlphaDefinition, i});
  }
  if (options.beta_start) {
    add_eq({{{l.beta(0), 1.0}}, *options.beta_start}, {RowKind::kBoundary, 0});
  }
  if (options.beta_end) {
    add_eq({{{l.beta(n), 1.0}}, *options.beta_end}, {RowKind::kBoundary, n});
  }
  p.beta_start = options.beta_start;
  p.beta_end = options.beta_end;

  for (int i = 0; i <= n; ++i) {
    add_le({{{l.beta(i), -1.0}}, -options.beta_floor}, {RowKind::kBetaFloor, i});
    add_le({{{l.zeta(i), -1.0}}, 0.0}, {RowKind::kZetaNonNegative, i});
    const Vec3& d1 = s.vel()[i];
    const Vec3& d2 = s.acc()[i];
    for (int a = 0; a < 3; ++a) {
      if (d1[a] != 0.0) {
        add_le({{{l.beta(i), d1[a] * d1[a]}}, limits.v_max[a] * limits.v_max[a]},
               {RowKind::kAxisVelocity, i, a});
      }
    }
    if (std::isfinite(speed_limits[i]) && d1.squaredNorm() > 0.0) {
      add_le({{{l.beta(i), d1.squaredNorm()}},
              speed_limits[i] * speed_limits[i]},
             {RowKind::kSpeedLimit, i});
    }
    // Knot i uses the slope of the segment that starts there (the last knot
    // uses the final segment). hddot = alpha / 2.
    const int seg = std::min(i, n - 1);
    for (int a = 0; a < 3; ++a) {
      if (d1[a] == 0.0 && d2[a] == 0.0) continue;
      std::vector<LinearTerm> terms;
      if (d1[a] != 0.0) terms.push_back({l.alpha(seg), 0.5 * d1[a]});
      if (d2[a] != 0.0) terms.push_back({l.beta(i), d2[a]});
      std::vector<LinearTerm> neg = terms;
      for (LinearTerm& t : neg) t.coeff = -t.coeff;
      add_le({std::move(terms), limits.a_max[a]}, {RowKind::kAccelUpper, i, a});
      add_le({std::move(neg), limits.a_max[a]}, {RowKind::kAccelLower, i, a});
    }
  }

  for (int i = 0; i <= n; ++i) {
    p.cones.push_back(RotatedCone{{{{l.beta(i), 1.0}}, 0.0},
                                  {{}, 0.5},
                                  {{{l.zeta(i), 1.0}}, 0.0},
                                  ConeKind::kSqrtBeta,
                                  i});
  }
  for (int i = 0; i < n; ++i) {
    p.cones.push_back(RotatedCone{{{{l.gamma(i), 1.0}}, 0.0},
                                  {{{l.zeta(i), 1.0}, {l.zeta(i + 1), 1.0}}, 0.0},
                                  {{}, 2.0},
                                  ConeKind::kInverseSpeed,
                                  i});
  }
  if (l.has_smoothness_slack) {
    for (int i = 0; i < n; ++i) {
      p.cones.push_back(RotatedCone{{{{l.smooth(i), 1.0}}, 0.0},
                                    {{}, 0.5},
                                    {{{l.alpha(i), 1.0}}, 0.0},
                                    ConeKind::kSmoothness,
                                    i});
    }
  }
  if (absl::Status st = p.Validate(); !st.ok()) return st;
  return p;
}

}  // namespace tempo::socp
