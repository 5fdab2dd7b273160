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

// Gaussian collision probability against an ellipsoidal robot and its
// inversion into a speed limit.
//
// The robot collides with obstacle o when |p - o|_Qc <= 1 with
// Qc = diag(1/a^2, 1/b^2, 1/c^2). Scaling by Qc^(1/2) turns the ellipsoid
// into the unit ball; the ball is then replaced by the half-space
// a_hat^T (p_r - o_r) <= 1 along the mean separation direction, which
// contains the ball and gives a closed-form (conservative) probability.

#ifndef TEMPO_CHANCE_H_
#define TEMPO_CHANCE_H_

#include <optional>

#include "Eigen/Core"
#include "absl/status/statusor.h"

namespace tempo::chance {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

class SafetyEllipsoid {
 public:
  static absl::StatusOr<SafetyEllipsoid> Create(const Vec3& semi_axes);

  const Vec3& semi_axes() const { return semi_axes_; }
  Mat3 Q() const { return semi_axes_.array().square().inverse().matrix().asDiagonal(); }
  Mat3 SqrtQ() const { return semi_axes_.array().inverse().matrix().asDiagonal(); }
  // |d|_Qc = sqrt(d^T Qc d).
  double Norm(const Vec3& d) const {
    return d.cwiseQuotient(semi_axes_).norm();
  }

 private:
  explicit SafetyEllipsoid(const Vec3& semi_axes) : semi_axes_(semi_axes) {}
  Vec3 semi_axes_;
};

enum class UncertaintyMode {
  // Sigma_p = s(|v|)^2 I.
  kIsotropic,
  // Sigma_p = diag(s(|v_x|)^2, s(|v_y|)^2, s(|v_z|)^2).
  kPerAxis,
};

// Position standard deviation grows linearly with speed:
// s(v) = max(0, m v + b).
struct UncertaintyModel {
  double m = 0.2;   // s
  double b = -0.1;  // m
  Mat3 obstacle_cov = Mat3::Zero();
  UncertaintyMode mode = UncertaintyMode::kIsotropic;

  absl::Status Validate() const;
  double StdDev(double speed) const { return std::max(0.0, m * speed + b); }
  // Largest speed with zero position uncertainty, -b/m clamped at 0.
  double ZeroNoiseSpeed() const { return std::max(0.0, -b / m); }
  // Robot position covariance at velocity v under the configured mode.
  Mat3 PositionCovariance(const Vec3& v) const;
};

struct ChanceParams {
  double delta = 1e-4;

  absl::Status Validate() const;
};

struct TransformedPair {
  Vec3 p_r;
  Vec3 o_r;
};

TransformedPair TransformPair(const Vec3& p, const Vec3& o,
                              const SafetyEllipsoid& e);

struct Linearization {
  Vec3 a_hat;    // Unit normal of the separating half-space.
  double d_bar;  // Mean separation along a_hat, in ellipsoid units.
};

// Fails when the two means coincide.
absl::StatusOr<Linearization> Linearize(const Vec3& p_r_mean,
                                        const Vec3& o_r_mean);

// 1/2 + 1/2 erf((1 - d_bar) / sqrt(2 s_tot2)). For s_tot2 <= 0 this is the
// deterministic limit: 0 when d_bar > 1, 1 when d_bar < 1 and 1/2 on the
// boundary, where the expression is 1/2 for every variance.
double CollisionProbability(double d_bar, double s_tot2);

// Variance of a_hat^T (p_r - o_r) for the given world-frame covariances.
double TransformedVariance(const Linearization& lin, const SafetyEllipsoid& e,
                           const Mat3& sigma_p, const Mat3& sigma_o);

// Half-space collision probability for Gaussian robot/obstacle positions.
absl::StatusOr<double> HalfSpaceProbability(const Vec3& p_mean,
                                            const Vec3& o_mean,
                                            const Mat3& sigma_p,
                                            const Mat3& sigma_o,
                                            const SafetyEllipsoid& e);

struct SpeedLimit {
  double value = 0.0;  // m/s
  // Set when the mean position is already inside the collision set; the
  // limit is then 0.
  bool mean_in_collision = false;
};

// Largest speed in [0, v_max] whose half-space collision probability stays
// at or below delta. In per-axis mode `direction` (the direction of motion)
// decides how speed splits across axes; it is ignored in isotropic mode.
SpeedLimit VelocityLimit(const Vec3& p, const Vec3& o, const SafetyEllipsoid& e,
                         const UncertaintyModel& u, const ChanceParams& cp,
                         double v_max,
                         const Vec3& direction = Vec3::UnitX());

}  // namespace tempo::chance

#endif  // TEMPO_CHANCE_H_
