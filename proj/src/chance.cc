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

#include "tempo/chance.h"

#include <algorithm>
#include <cmath>

#include "Eigen/Eigenvalues"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "boost/math/special_functions/erf.hpp"

namespace tempo::chance {

absl::StatusOr<SafetyEllipsoid> SafetyEllipsoid::Create(const Vec3& semi_axes) {
  if (!(semi_axes.array() > 0.0).all() || !semi_axes.allFinite()) {
    return absl::InvalidArgumentError("ellipsoid semi-axes must be positive");
  }
  return SafetyEllipsoid(semi_axes);
}

absl::Status UncertaintyModel::Validate() const {
  if (!(m > 0.0) || !std::isfinite(b)) {
    return absl::InvalidArgumentError("uncertainty slope m must be positive");
  }
  if (!obstacle_cov.allFinite() ||
      (obstacle_cov - obstacle_cov.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    return absl::InvalidArgumentError("obstacle covariance must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(obstacle_cov);
  if (eig.eigenvalues().minCoeff() < -1e-12) {
    return absl::InvalidArgumentError(
        "obstacle covariance must be positive semidefinite");
  }
  return absl::OkStatus();
}

Mat3 UncertaintyModel::PositionCovariance(const Vec3& v) const {
  if (mode == UncertaintyMode::kIsotropic) {
    const double s = StdDev(v.norm());
    return Mat3::Identity() * (s * s);
  }
  Vec3 var;
  for (int k = 0; k < 3; ++k) {
    const double s = StdDev(std::abs(v[k]));
    var[k] = s * s;
  }
  return var.asDiagonal();
}

absl::Status ChanceParams::Validate() const {
  if (!(delta > 0.0 && delta < 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 0.5), got ", delta));
  }
  return absl::OkStatus();
}

TransformedPair TransformPair(const Vec3& p, const Vec3& o,
                              const SafetyEllipsoid& e) {
  const Vec3 inv = e.semi_axes().cwiseInverse();
  return TransformedPair{p.cwiseProduct(inv), o.cwiseProduct(inv)};
}

absl::StatusOr<Linearization> Linearize(const Vec3& p_r_mean,
                                        const Vec3& o_r_mean) {
  const Vec3 d = p_r_mean - o_r_mean;
  const double n = d.norm();
  if (!(n > 0.0)) {
    return absl::InvalidArgumentError(
        "robot and obstacle means coincide; linearization undefined");
  }
  const Vec3 a_hat = d / n;
  return Linearization{a_hat, a_hat.dot(d)};
}

double CollisionProbability(double d_bar, double s_tot2) {
  if (!(s_tot2 > 0.0)) {
    // erf of +-inf, and erf(0) on the boundary for every variance.
    if (d_bar == 1.0) return 0.5;
    return d_bar > 1.0 ? 0.0 : 1.0;
  }
  return 0.5 + 0.5 * std::erf((1.0 - d_bar) / std::sqrt(2.0 * s_tot2));
}

double TransformedVariance(const Linearization& lin, const SafetyEllipsoid& e,
                           const Mat3& sigma_p, const Mat3& sigma_o) {
  const Mat3 sq = e.SqrtQ();
  const Mat3 total = sq * (sigma_p + sigma_o) * sq;
  return lin.a_hat.dot(total * lin.a_hat);
}

absl::StatusOr<double> HalfSpaceProbability(const Vec3& p_mean,
                                            const Vec3& o_mean,
                                            const Mat3& sigma_p,
                                            const Mat3& sigma_o,
                                            const SafetyEllipsoid& e) {
  const TransformedPair tp = TransformPair(p_mean, o_mean, e);
  absl::StatusOr<Linearization> lin = Linearize(tp.p_r, tp.o_r);
  if (!lin.ok()) return lin.status();
  return CollisionProbability(lin->d_bar,
                              TransformedVariance(*lin, e, sigma_p, sigma_o));
}

SpeedLimit VelocityLimit(const Vec3& p, const Vec3& o, const SafetyEllipsoid& e,
                         const UncertaintyModel& u, const ChanceParams& cp,
                         double v_max, const Vec3& direction) {
  const TransformedPair tp = TransformPair(p, o, e);
  absl::StatusOr<Linearization> lin = Linearize(tp.p_r, tp.o_r);
  if (!lin.ok() || lin->d_bar <= 1.0) return SpeedLimit{0.0, true};

  const double z = boost::math::erf_inv(1.0 - 2.0 * cp.delta);
  const double cap = std::pow((lin->d_bar - 1.0) / (std::sqrt(2.0) * z), 2);
  const Mat3 sq = e.SqrtQ();
  const double obstacle_var =
      lin->a_hat.dot((sq * u.obstacle_cov * sq) * lin->a_hat);
  const double zero_noise = std::min(v_max, u.ZeroNoiseSpeed());

  if (u.mode == UncertaintyMode::kIsotropic) {
    const double q_aa = lin->a_hat.dot(e.Q() * lin->a_hat);
    const double s_max2 = (cap - obstacle_var) / q_aa;
    if (s_max2 <= 0.0) return SpeedLimit{std::max(0.0, zero_noise), false};
    const double v = (std::sqrt(s_max2) - u.b) / u.m;
    return SpeedLimit{std::clamp(v, std::max(0.0, zero_noise), v_max), false};
  }

  // Per-axis: total variance is non-decreasing in speed along `direction`.
  Vec3 dir = direction;
  if (dir.norm() > 0.0) dir.normalize();
  auto total_var = [&](double v) {
    return TransformedVariance(*lin, e, u.PositionCovariance(dir * v),
                               u.obstacle_cov);
  };
  if (total_var(v_max) <= cap) return SpeedLimit{v_max, false};
  // Speeds at which every axis is still noise-free.
  double quiet = v_max;
  for (int k = 0; k < 3; ++k) {
    if (std::abs(dir[k]) > 0.0) {
      quiet = std::min(quiet, u.ZeroNoiseSpeed() / std::abs(dir[k]));
    }
  }
  if (total_var(quiet) > cap) return SpeedLimit{std::max(0.0, quiet), false};
  double lo = quiet;
  double hi = v_max;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (total_var(mid) <= cap ? lo : hi) = mid;
  }
  return SpeedLimit{lo, false};
}

}  // namespace tempo::chance
