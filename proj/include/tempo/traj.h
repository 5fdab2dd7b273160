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

#ifndef TEMPO_TRAJ_H_
#define TEMPO_TRAJ_H_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "Eigen/Core"
#include "absl/status/statusor.h"

namespace tempo::traj {

using Vec3 = Eigen::Vector3d;

// One polynomial piece of a spatial trajectory. Coefficients are in ascending
// powers of (tau - tau_start), one list per axis.
struct PolySegment {
  double tau_start = 0.0;
  double tau_end = 0.0;
  std::array<std::vector<double>, 3> coeffs;
};

// A trajectory sigma(tau) given as contiguous polynomial pieces.
class PiecewisePolynomial {
 public:
  static absl::StatusOr<PiecewisePolynomial> Create(
      std::vector<PolySegment> segments);

  double tau_start() const { return segments_.front().tau_start; }
  double tau_end() const { return segments_.back().tau_end; }
  const std::vector<PolySegment>& segments() const { return segments_; }

  // Evaluates the `derivative`-th derivative of sigma at tau. Values outside
  // the covered range are extrapolated from the first/last segment.
  Vec3 Evaluate(double tau, int derivative = 0) const;

 private:
  explicit PiecewisePolynomial(std::vector<PolySegment> segments)
      : segments_(std::move(segments)) {}

  std::vector<PolySegment> segments_;
};

// Positions (and optionally derivatives) at strictly increasing trajectory
// times.
struct PositionSeries {
  std::vector<double> tau;
  std::vector<Vec3> pos;
  std::vector<Vec3> vel;  // Optional; empty or same length as pos.
  std::vector<Vec3> acc;  // Optional; empty or same length as pos.

  // Uniformly spaced series starting at tau0.
  static PositionSeries Uniform(double tau0, double dtau, std::vector<Vec3> pos,
                                std::vector<Vec3> vel = {},
                                std::vector<Vec3> acc = {});
};

// Uniform samples of sigma, sigma' and sigma'' with respect to trajectory
// time tau. Immutable after construction.
class SampledTrajectory {
 public:
  // Validates the invariants: equal lengths >= 2, dtau > 0, finite values.
  static absl::StatusOr<SampledTrajectory> Create(double tau0, double dtau,
                                                  std::vector<Vec3> pos,
                                                  std::vector<Vec3> vel,
                                                  std::vector<Vec3> acc);

  double tau0() const { return tau0_; }
  double dtau() const { return dtau_; }
  // Number of samples, N + 1.
  int size() const { return static_cast<int>(pos_.size()); }
  // Number of segments N.
  int num_segments() const { return size() - 1; }
  double tau_at(int i) const { return tau0_ + i * dtau_; }
  double tau_final() const { return tau_at(num_segments()); }

  const std::vector<Vec3>& pos() const { return pos_; }
  const std::vector<Vec3>& vel() const { return vel_; }
  const std::vector<Vec3>& acc() const { return acc_; }

 private:
  SampledTrajectory(double tau0, double dtau, std::vector<Vec3> pos,
                    std::vector<Vec3> vel, std::vector<Vec3> acc)
      : tau0_(tau0),
        dtau_(dtau),
        pos_(std::move(pos)),
        vel_(std::move(vel)),
        acc_(std::move(acc)) {}

  double tau0_;
  double dtau_;
  std::vector<Vec3> pos_;
  std::vector<Vec3> vel_;
  std::vector<Vec3> acc_;
};

// Resamples a piecewise polynomial with analytic derivatives. When the span
// is not a multiple of dtau, the spacing is shrunk to span / ceil(span/dtau)
// so that the final sample lands on tau_end.
absl::StatusOr<SampledTrajectory> Resample(const PiecewisePolynomial& poly,
                                           double dtau);

// Resamples a position series. Positions between input samples come from
// cubic Hermite interpolation; derivatives not supplied by the source are
// produced by central differences on the output grid (second-order one-sided
// differences at the endpoints).
absl::StatusOr<SampledTrajectory> Resample(const PositionSeries& series,
                                           double dtau);

// Finite-difference derivatives of uniformly spaced positions.
std::vector<Vec3> FiniteDifferenceVelocity(std::span<const Vec3> pos,
                                           double dtau);
std::vector<Vec3> FiniteDifferenceAcceleration(std::span<const Vec3> pos,
                                               double dtau);

// h(t), hdot(t), hddot(t) at one instant.
struct MappingPoint {
  double tau = 0.0;
  double hdot = 0.0;
  double hddot = 0.0;
};

// Piecewise time mapping tau = h(t) reconstructed from knot values
// beta_i = hdot^2. beta is linear in tau on each segment and
// alpha_i = (beta_{i+1} - beta_i) / dtau is the per-segment slope. Since
// d(beta)/d(tau) = 2 * hddot, the time second derivative on a segment is
// alpha_i / 2.
class TimeMapping {
 public:
  // Fails unless beta has at least two entries, all strictly positive and
  // finite, and dtau > 0.
  static absl::StatusOr<TimeMapping> FromBeta(std::vector<double> beta,
                                              double dtau, double tau0);

  int num_segments() const { return static_cast<int>(alpha_.size()); }
  double dtau() const { return dtau_; }
  double tau0() const { return tau0_; }
  double tau_final() const { return tau_knots_.back(); }
  double total_time() const { return t_knots_.back(); }

  const std::vector<double>& tau_knots() const { return tau_knots_; }
  const std::vector<double>& beta() const { return beta_; }
  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<double>& t_knots() const { return t_knots_; }

  // Real-time duration of a segment with end values beta_a, beta_b:
  // integral of dtau / sqrt(beta) for linear beta.
  static double SegmentDuration(double beta_a, double beta_b, double dtau);

  // tau, hdot and hddot at real time t in [0, total_time()].
  absl::StatusOr<MappingPoint> Evaluate(double t) const;

  // Real time at which the mapping reaches trajectory time tau.
  absl::StatusOr<double> TimeAt(double tau) const;

  // beta and segment index at trajectory time tau (clamped to the range).
  double BetaAt(double tau, int* segment = nullptr) const;

 private:
  TimeMapping() = default;

  int SegmentForTau(double tau) const;

  double tau0_ = 0.0;
  double dtau_ = 0.0;
  std::vector<double> tau_knots_;
  std::vector<double> beta_;
  std::vector<double> alpha_;
  std::vector<double> t_knots_;
};

// Trajectory in real time t after applying a time mapping.
struct ReparamTrajectory {
  std::vector<double> t;
  std::vector<double> tau;
  std::vector<double> hdot;
  std::vector<Vec3> pos;
  std::vector<Vec3> vel;
  std::vector<Vec3> acc;

  int size() const { return static_cast<int>(t.size()); }
};

// Velocity and acceleration in real time from the chain rule:
//   v = sigma' * hdot,  a = sigma' * hddot + sigma'' * hdot^2.
inline Vec3 ReparamVelocity(const Vec3& dsigma, double hdot) {
  return dsigma * hdot;
}
inline Vec3 ReparamAcceleration(const Vec3& dsigma, const Vec3& ddsigma,
                                double hdot, double hddot) {
  return dsigma * hddot + ddsigma * (hdot * hdot);
}

// The mapping with beta == 1 on the trajectory's knots (h(t) = tau0 + t).
TimeMapping IdentityMapping(const SampledTrajectory& s);

// Samples the reparameterized trajectory at t = k * dt_out for
// k = 0 .. floor(T_f / dt_out). Positions between knots use cubic Hermite
// interpolation; sigma' and sigma'' are interpolated linearly.
absl::StatusOr<ReparamTrajectory> Reparameterize(const SampledTrajectory& s,
                                                 const TimeMapping& m,
                                                 double dt_out);

// Same quantities evaluated exactly at the mapping knots.
absl::StatusOr<ReparamTrajectory> ReparameterizeAtKnots(
    const SampledTrajectory& s, const TimeMapping& m);

}  // namespace tempo::traj

#endif  // TEMPO_TRAJ_H_
