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

#include "tempo/traj.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace tempo::traj {
namespace {

// Relative slack used when comparing real times against knot boundaries.
constexpr double kTimeSlack = 1e-12;

bool AllFinite(const std::vector<Vec3>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Vec3& x) { return x.allFinite(); });
}

// d^k/dx^k of sum_j c_j x^j.
double PolyDerivative(const std::vector<double>& c, double x, int k) {
  double result = 0.0;
  for (int j = static_cast<int>(c.size()) - 1; j >= k; --j) {
    double factor = 1.0;
    for (int m = 0; m < k; ++m) factor *= (j - m);
    result = result * x + factor * c[j];
  }
  return result;
}

absl::StatusOr<int> GridSegments(double span, double dtau) {
  if (!(dtau > 0.0) || !std::isfinite(dtau)) {
    return absl::InvalidArgumentError(
        absl::StrCat("dtau must be positive, got ", dtau));
  }
  if (dtau >= span) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dtau (", dtau, ") must be smaller than the trajectory span (", span,
        ")"));
  }
  return static_cast<int>(std::ceil(span / dtau - 1e-9));
}

Vec3 Lerp(const Vec3& a, const Vec3& b, double u) { return a + (b - a) * u; }

Vec3 Hermite(const Vec3& p0, const Vec3& v0, const Vec3& p1, const Vec3& v1,
             double h, double u) {
  const double u2 = u * u;
  const double u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * p0 + (u3 - 2 * u2 + u) * h * v0 +
         (-2 * u3 + 3 * u2) * p1 + (u3 - u2) * h * v1;
}

// Three-point derivative estimates on a non-uniform grid. Exact for
// quadratics.
std::vector<Vec3> NonUniformSlopes(const std::vector<double>& t,
                                   const std::vector<Vec3>& p) {
  const int n = static_cast<int>(p.size());
  std::vector<Vec3> slope(n);
  if (n == 2) {
    slope[0] = slope[1] = (p[1] - p[0]) / (t[1] - t[0]);
    return slope;
  }
  for (int k = 1; k + 1 < n; ++k) {
    const double h1 = t[k] - t[k - 1];
    const double h2 = t[k + 1] - t[k];
    slope[k] = -h2 / (h1 * (h1 + h2)) * p[k - 1] +
               (h2 - h1) / (h1 * h2) * p[k] + h1 / (h2 * (h1 + h2)) * p[k + 1];
  }
  {
    const double h1 = t[1] - t[0];
    const double h2 = t[2] - t[1];
    slope[0] = -(2 * h1 + h2) / (h1 * (h1 + h2)) * p[0] +
               (h1 + h2) / (h1 * h2) * p[1] - h1 / (h2 * (h1 + h2)) * p[2];
  }
  {
    const double h1 = t[n - 2] - t[n - 3];
    const double h2 = t[n - 1] - t[n - 2];
    slope[n - 1] = h2 / (h1 * (h1 + h2)) * p[n - 3] -
                   (h1 + h2) / (h1 * h2) * p[n - 2] +
                   (2 * h2 + h1) / (h2 * (h1 + h2)) * p[n - 1];
  }
  return slope;
}

}  // namespace

absl::StatusOr<PiecewisePolynomial> PiecewisePolynomial::Create(
    std::vector<PolySegment> segments) {
  if (segments.empty()) {
    return absl::InvalidArgumentError("piecewise polynomial has no segments");
  }
  for (size_t i = 0; i < segments.size(); ++i) {
    const PolySegment& seg = segments[i];
    if (!(seg.tau_end > seg.tau_start)) {
      return absl::InvalidArgumentError(
          absl::StrCat("segment ", i, " has non-increasing time range"));
    }
    for (const auto& c : seg.coeffs) {
      if (c.empty()) {
        return absl::InvalidArgumentError(
            absl::StrCat("segment ", i, " has an empty coefficient list"));
      }
    }
    if (i > 0 &&
        std::abs(seg.tau_start - segments[i - 1].tau_end) >
            1e-9 * std::max(1.0, std::abs(seg.tau_start))) {
      return absl::InvalidArgumentError(
          absl::StrCat("segment ", i, " does not start where segment ", i - 1,
                       " ends"));
    }
  }
  return PiecewisePolynomial(std::move(segments));
}

Vec3 PiecewisePolynomial::Evaluate(double tau, int derivative) const {
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), tau,
      [](double t, const PolySegment& s) { return t < s.tau_end; });
  if (it == segments_.end()) --it;
  const double x = tau - it->tau_start;
  return Vec3(PolyDerivative(it->coeffs[0], x, derivative),
              PolyDerivative(it->coeffs[1], x, derivative),
              PolyDerivative(it->coeffs[2], x, derivative));
}

PositionSeries PositionSeries::Uniform(double tau0, double dtau,
                                       std::vector<Vec3> pos,
                                       std::vector<Vec3> vel,
                                       std::vector<Vec3> acc) {
  PositionSeries series;
  series.tau.resize(pos.size());
  for (size_t i = 0; i < pos.size(); ++i) series.tau[i] = tau0 + i * dtau;
  series.pos = std::move(pos);
  series.vel = std::move(vel);
  series.acc = std::move(acc);
  return series;
}

absl::StatusOr<SampledTrajectory> SampledTrajectory::Create(
    double tau0, double dtau, std::vector<Vec3> pos, std::vector<Vec3> vel,
    std::vector<Vec3> acc) {
  if (pos.size() < 2) {
    return absl::InvalidArgumentError("trajectory needs at least 2 samples");
  }
  if (vel.size() != pos.size() || acc.size() != pos.size()) {
    return absl::InvalidArgumentError(
        "pos, vel and acc must have identical lengths");
  }
  if (!(dtau > 0.0) || !std::isfinite(dtau) || !std::isfinite(tau0)) {
    return absl::InvalidArgumentError("dtau must be positive and finite");
  }
  if (!AllFinite(pos) || !AllFinite(vel) || !AllFinite(acc)) {
    return absl::InvalidArgumentError("trajectory contains non-finite values");
  }
  return SampledTrajectory(tau0, dtau, std::move(pos), std::move(vel),
                           std::move(acc));
}

std::vector<Vec3> FiniteDifferenceVelocity(std::span<const Vec3> pos,
                                           double dtau) {
  const int n = static_cast<int>(pos.size());
  std::vector<Vec3> vel(n, Vec3::Zero());
  if (n < 2) return vel;
  if (n == 2) {
    vel[0] = vel[1] = (pos[1] - pos[0]) / dtau;
    return vel;
  }
  for (int i = 1; i + 1 < n; ++i) {
    vel[i] = (pos[i + 1] - pos[i - 1]) / (2 * dtau);
  }
  vel[0] = (-3 * pos[0] + 4 * pos[1] - pos[2]) / (2 * dtau);
  vel[n - 1] = (3 * pos[n - 1] - 4 * pos[n - 2] + pos[n - 3]) / (2 * dtau);
  return vel;
}

std::vector<Vec3> FiniteDifferenceAcceleration(std::span<const Vec3> pos,
                                               double dtau) {
  const int n = static_cast<int>(pos.size());
  std::vector<Vec3> acc(n, Vec3::Zero());
  if (n < 3) return acc;
  const double h2 = dtau * dtau;
  for (int i = 1; i + 1 < n; ++i) {
    acc[i] = (pos[i + 1] - 2 * pos[i] + pos[i - 1]) / h2;
  }
  if (n == 3) {
    acc[0] = acc[2] = acc[1];
    return acc;
  }
  acc[0] = (2 * pos[0] - 5 * pos[1] + 4 * pos[2] - pos[3]) / h2;
  acc[n - 1] =
      (2 * pos[n - 1] - 5 * pos[n - 2] + 4 * pos[n - 3] - pos[n - 4]) / h2;
  return acc;
}

absl::StatusOr<SampledTrajectory> Resample(const PiecewisePolynomial& poly,
                                           double dtau) {
  const double tau0 = poly.tau_start();
  const double span = poly.tau_end() - tau0;
  absl::StatusOr<int> n = GridSegments(span, dtau);
  if (!n.ok()) return n.status();
  const double h = span / *n;
  std::vector<Vec3> pos(*n + 1), vel(*n + 1), acc(*n + 1);
  for (int i = 0; i <= *n; ++i) {
    const double tau = (i == *n) ? poly.tau_end() : tau0 + i * h;
    pos[i] = poly.Evaluate(tau, 0);
    vel[i] = poly.Evaluate(tau, 1);
    acc[i] = poly.Evaluate(tau, 2);
  }
  return SampledTrajectory::Create(tau0, h, std::move(pos), std::move(vel),
                                   std::move(acc));
}

absl::StatusOr<SampledTrajectory> Resample(const PositionSeries& series,
                                           double dtau) {
  const size_t n_in = series.pos.size();
  if (n_in == 0) return absl::InvalidArgumentError("empty position series");
  if (series.tau.size() != n_in) {
    return absl::InvalidArgumentError("timestamps and positions differ in size");
  }
  if (n_in < 2) {
    return absl::InvalidArgumentError("position series needs >= 2 samples");
  }
  if (!series.vel.empty() && series.vel.size() != n_in) {
    return absl::InvalidArgumentError("vel length differs from pos length");
  }
  if (!series.acc.empty() && series.acc.size() != n_in) {
    return absl::InvalidArgumentError("acc length differs from pos length");
  }
  for (size_t i = 1; i < n_in; ++i) {
    if (!(series.tau[i] > series.tau[i - 1])) {
      return absl::InvalidArgumentError(
          absl::StrCat("timestamps are not strictly increasing at index ", i));
    }
  }
  const double tau0 = series.tau.front();
  const double span = series.tau.back() - tau0;
  absl::StatusOr<int> n = GridSegments(span, dtau);
  if (!n.ok()) return n.status();
  const double h = span / *n;

  const std::vector<Vec3> slopes = series.vel.empty()
                                       ? NonUniformSlopes(series.tau, series.pos)
                                       : series.vel;
  std::vector<Vec3> pos(*n + 1), vel, acc;
  std::vector<Vec3> vel_interp(*n + 1), acc_interp(*n + 1);
  size_t k = 0;
  for (int i = 0; i <= *n; ++i) {
    const double tau = (i == *n) ? series.tau.back() : tau0 + i * h;
    while (k + 2 < n_in && tau >= series.tau[k + 1]) ++k;
    const double hk = series.tau[k + 1] - series.tau[k];
    const double u = std::clamp((tau - series.tau[k]) / hk, 0.0, 1.0);
    pos[i] = Hermite(series.pos[k], slopes[k], series.pos[k + 1],
                     slopes[k + 1], hk, u);
    if (!series.vel.empty()) {
      vel_interp[i] = Lerp(series.vel[k], series.vel[k + 1], u);
    }
    if (!series.acc.empty()) {
      acc_interp[i] = Lerp(series.acc[k], series.acc[k + 1], u);
    }
  }
  vel = series.vel.empty() ? FiniteDifferenceVelocity(pos, h)
                           : std::move(vel_interp);
  acc = series.acc.empty() ? FiniteDifferenceAcceleration(pos, h)
                           : std::move(acc_interp);
  return SampledTrajectory::Create(tau0, h, std::move(pos), std::move(vel),
                                   std::move(acc));
}

double TimeMapping::SegmentDuration(double beta_a, double beta_b,
                                    double dtau) {
  return 2.0 * dtau / (std::sqrt(beta_a) + std::sqrt(beta_b));
}

absl::StatusOr<TimeMapping> TimeMapping::FromBeta(std::vector<double> beta,
                                                  double dtau, double tau0) {
  if (beta.size() < 2) {
    return absl::InvalidArgumentError("beta needs at least 2 entries");
  }
  if (!(dtau > 0.0) || !std::isfinite(dtau)) {
    return absl::InvalidArgumentError("dtau must be positive");
  }
  for (size_t i = 0; i < beta.size(); ++i) {
    if (!(beta[i] > 0.0) || !std::isfinite(beta[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("beta[", i, "] = ", beta[i], " is not positive"));
    }
  }
  TimeMapping m;
  m.tau0_ = tau0;
  m.dtau_ = dtau;
  const int n = static_cast<int>(beta.size()) - 1;
  m.tau_knots_.resize(n + 1);
  m.alpha_.resize(n);
  m.t_knots_.resize(n + 1);
  m.t_knots_[0] = 0.0;
  for (int i = 0; i <= n; ++i) m.tau_knots_[i] = tau0 + i * dtau;
  for (int i = 0; i < n; ++i) {
    m.alpha_[i] = (beta[i + 1] - beta[i]) / dtau;
    m.t_knots_[i + 1] =
        m.t_knots_[i] + SegmentDuration(beta[i], beta[i + 1], dtau);
  }
  m.beta_ = std::move(beta);
  return m;
}

int TimeMapping::SegmentForTau(double tau) const {
  const int i = static_cast<int>(std::floor((tau - tau0_) / dtau_));
  return std::clamp(i, 0, num_segments() - 1);
}

double TimeMapping::BetaAt(double tau, int* segment) const {
  const int i = SegmentForTau(tau);
  if (segment != nullptr) *segment = i;
  const double d = std::clamp(tau - tau_knots_[i], 0.0, dtau_);
  return beta_[i] + alpha_[i] * d;
}

absl::StatusOr<MappingPoint> TimeMapping::Evaluate(double t) const {
  const double total = total_time();
  const double slack = kTimeSlack * std::max(1.0, total);
  if (!(t >= -slack && t <= total + slack)) {
    return absl::OutOfRangeError(
        absl::StrCat("t = ", t, " outside [0, ", total, "]"));
  }
  t = std::clamp(t, 0.0, total);
  auto it = std::upper_bound(t_knots_.begin(), t_knots_.end(), t);
  int i = static_cast<int>(it - t_knots_.begin()) - 1;
  i = std::clamp(i, 0, num_segments() - 1);
  const double dt = t - t_knots_[i];
  const double root = std::sqrt(beta_[i]);
  // Inverse of t - t_i = 2 (sqrt(beta(tau)) - sqrt(beta_i)) / alpha_i.
  double dtau = root * dt + 0.25 * alpha_[i] * dt * dt;
  dtau = std::clamp(dtau, 0.0, dtau_);
  MappingPoint point;
  point.tau = (i == num_segments() - 1 && t == total) ? tau_knots_.back()
                                                      : tau_knots_[i] + dtau;
  point.hdot = std::sqrt(beta_[i] + alpha_[i] * dtau);
  point.hddot = 0.5 * alpha_[i];
  return point;
}

absl::StatusOr<double> TimeMapping::TimeAt(double tau) const {
  const double slack = kTimeSlack * std::max(1.0, std::abs(tau_final()));
  if (!(tau >= tau0_ - slack && tau <= tau_final() + slack)) {
    return absl::OutOfRangeError(absl::StrCat(
        "tau = ", tau, " outside [", tau0_, ", ", tau_final(), "]"));
  }
  int i = 0;
  const double beta = BetaAt(tau, &i);
  const double d = std::clamp(tau - tau_knots_[i], 0.0, dtau_);
  return t_knots_[i] + SegmentDuration(beta_[i], beta, d);
}

TimeMapping IdentityMapping(const SampledTrajectory& s) {
  return *TimeMapping::FromBeta(std::vector<double>(s.size(), 1.0), s.dtau(),
                                s.tau0());
}

namespace {

absl::Status CheckGrid(const SampledTrajectory& s, const TimeMapping& m) {
  if (m.num_segments() != s.num_segments() ||
      std::abs(m.dtau() - s.dtau()) > 1e-12 * std::max(1.0, s.dtau()) ||
      std::abs(m.tau0() - s.tau0()) > 1e-12 * std::max(1.0, std::abs(s.tau0()))) {
    return absl::InvalidArgumentError(
        "time mapping knots do not match the trajectory samples");
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<ReparamTrajectory> Reparameterize(const SampledTrajectory& s,
                                                 const TimeMapping& m,
                                                 double dt_out) {
  if (absl::Status st = CheckGrid(s, m); !st.ok()) return st;
  if (!(dt_out > 0.0)) {
    return absl::InvalidArgumentError("dt_out must be positive");
  }
  const double total = m.total_time();
  const int count = static_cast<int>(std::floor(total / dt_out + 1e-9)) + 1;
  const double h = s.dtau();
  ReparamTrajectory out;
  out.t.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double t = std::min(k * dt_out, total);
    absl::StatusOr<MappingPoint> mp = m.Evaluate(t);
    if (!mp.ok()) return mp.status();
    const int i = std::clamp(
        static_cast<int>(std::floor((mp->tau - s.tau0()) / h)), 0,
        s.num_segments() - 1);
    const double u = std::clamp((mp->tau - s.tau_at(i)) / h, 0.0, 1.0);
    const Vec3 dsigma = Lerp(s.vel()[i], s.vel()[i + 1], u);
    const Vec3 ddsigma = Lerp(s.acc()[i], s.acc()[i + 1], u);
    out.t.push_back(k * dt_out);
    out.tau.push_back(mp->tau);
    out.hdot.push_back(mp->hdot);
    out.pos.push_back(Hermite(s.pos()[i], s.vel()[i], s.pos()[i + 1],
                              s.vel()[i + 1], h, u));
    out.vel.push_back(ReparamVelocity(dsigma, mp->hdot));
    out.acc.push_back(ReparamAcceleration(dsigma, ddsigma, mp->hdot, mp->hddot));
  }
  return out;
}

absl::StatusOr<ReparamTrajectory> ReparameterizeAtKnots(
    const SampledTrajectory& s, const TimeMapping& m) {
  if (absl::Status st = CheckGrid(s, m); !st.ok()) return st;
  ReparamTrajectory out;
  const int n = s.num_segments();
  for (int i = 0; i <= n; ++i) {
    const double hdot = std::sqrt(m.beta()[i]);
    const double hddot = 0.5 * m.alpha()[std::min(i, n - 1)];
    out.t.push_back(m.t_knots()[i]);
    out.tau.push_back(m.tau_knots()[i]);
    out.hdot.push_back(hdot);
    out.pos.push_back(s.pos()[i]);
    out.vel.push_back(ReparamVelocity(s.vel()[i], hdot));
    out.acc.push_back(ReparamAcceleration(s.vel()[i], s.acc()[i], hdot, hddot));
  }
  return out;
}

}  // namespace tempo::traj
