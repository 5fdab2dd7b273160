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

#include "tempo/socp/interior_point.h"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <limits>
#include <vector>

#include "Eigen/OrderingMethods"
#include "Eigen/SparseCholesky"
#include "absl/strings/str_format.h"

namespace tempo::socp {
namespace {

using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest a >= 0 with x + a * dx still in the second-order cone (x interior).
double SocMaxStep(const double* x, const double* dx, int q) {
  double x1x1 = 0, d1d1 = 0, x1d1 = 0;
  for (int i = 1; i < q; ++i) {
    x1x1 += x[i] * x[i];
    d1d1 += dx[i] * dx[i];
    x1d1 += x[i] * dx[i];
  }
  const double a = dx[0] * dx[0] - d1d1;
  const double b = x[0] * dx[0] - x1d1;
  const double c = (x[0] - std::sqrt(x1x1)) * (x[0] + std::sqrt(x1x1));
  double step = kInf;
  if (dx[0] < 0) step = -x[0] / dx[0];
  // Smallest positive root of a t^2 + 2 b t + c.
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (std::abs(a) <= 1e-300 + 1e-14 * scale) {
    if (b < 0) step = std::min(step, -c / (2 * b));
    return std::max(0.0, step);
  }
  const double disc = b * b - a * c;
  if (disc < 0) return std::max(0.0, step);
  const double sq = std::sqrt(disc);
  const double qv = -(b + std::copysign(sq, b));
  const double r1 = qv / a;
  const double r2 = qv != 0 ? c / qv : kInf;
  for (double r : {r1, r2}) {
    if (r > 0) step = std::min(step, r);
  }
  return std::max(0.0, step);
}

// Cone bookkeeping and Nesterov-Todd scaling for R_+^l x Q^{q_1} x ...
class Cones {
 public:
  Cones(int l, const std::vector<int>& q) : l_(l), q_(q) {
    int off = l;
    for (int dim : q_) {
      offset_.push_back(off);
      off += dim;
    }
    m_ = off;
    w_.assign(m_, 1.0);
    eta_.assign(q_.size(), 1.0);
  }

  int size() const { return m_; }
  int degree() const { return l_ + static_cast<int>(q_.size()); }
  int num_soc() const { return static_cast<int>(q_.size()); }
  int soc_offset(int k) const { return offset_[k]; }
  int soc_dim(int k) const { return q_[k]; }
  int num_orthant() const { return l_; }

  // Smallest "eigenvalue": min over orthant entries and u0 - |u1| per cone.
  double MinEig(const VectorXd& v) const {
    double r = kInf;
    for (int i = 0; i < l_; ++i) r = std::min(r, v[i]);
    for (int k = 0; k < num_soc(); ++k) {
      const int o = offset_[k];
      r = std::min(r, v[o] - v.segment(o + 1, q_[k] - 1).norm());
    }
    return r;
  }

  // v += a * e.
  void AddIdentity(VectorXd& v, double a) const {
    for (int i = 0; i < l_; ++i) v[i] += a;
    for (int k = 0; k < num_soc(); ++k) v[offset_[k]] += a;
  }

  VectorXd Identity() const {
    VectorXd e = VectorXd::Zero(m_);
    AddIdentity(e, 1.0);
    return e;
  }

  // Computes the NT scaling W (W z = W^-1 s) and lambda = W z. Returns false
  // when s or z is not strictly interior.
  bool UpdateScaling(const VectorXd& s, const VectorXd& z) {
    for (int i = 0; i < l_; ++i) {
      if (!(s[i] > 0 && z[i] > 0)) return false;
      w_[i] = std::sqrt(s[i] / z[i]);
    }
    for (int k = 0; k < num_soc(); ++k) {
      const int o = offset_[k];
      const int q = q_[k];
      const double sn = s.segment(o + 1, q - 1).norm();
      const double zn = z.segment(o + 1, q - 1).norm();
      const double s_res2 = (s[o] - sn) * (s[o] + sn);
      const double z_res2 = (z[o] - zn) * (z[o] + zn);
      if (!(s[o] - sn > 0 && z[o] - zn > 0 && s_res2 > 0 && z_res2 > 0)) {
        return false;
      }
      const double s_res = std::sqrt(s_res2);
      const double z_res = std::sqrt(z_res2);
      double sz = s[o] * z[o];
      for (int i = 1; i < q; ++i) sz += s[o + i] * z[o + i];
      const double dot = sz / (s_res * z_res);
      const double gamma = std::sqrt(0.5 * (1.0 + dot));
      // wbar = (sbar + J zbar) / (2 gamma).
      w_[o] = (s[o] / s_res + z[o] / z_res) / (2 * gamma);
      for (int i = 1; i < q; ++i) {
        w_[o + i] = (s[o + i] / s_res - z[o + i] / z_res) / (2 * gamma);
      }
      eta_[k] = std::sqrt(s_res / z_res);
    }
    lambda_ = ApplyW(z);
    return true;
  }

  const VectorXd& lambda() const { return lambda_; }

  VectorXd ApplyW(const VectorXd& v) const { return Apply(v, false); }
  VectorXd ApplyWinv(const VectorXd& v) const { return Apply(v, true); }

  // Entries of the symmetric block W^2 for cone k, row-major q x q.
  std::vector<double> SocW2(int k) const {
    const int q = q_[k];
    const int o = offset_[k];
    std::vector<double> out(q * q);
    VectorXd col(q);
    for (int j = 0; j < q; ++j) {
      col.setZero();
      col[j] = 1.0;
      VectorXd wc = ApplySoc(k, ApplySoc(k, col, false), false);
      for (int i = 0; i < q; ++i) out[i * q + j] = wc[i];
    }
    (void)o;
    return out;
  }
  double OrthantW2(int i) const { return w_[i] * w_[i]; }

  VectorXd JordanProduct(const VectorXd& u, const VectorXd& v) const {
    VectorXd r(m_);
    for (int i = 0; i < l_; ++i) r[i] = u[i] * v[i];
    for (int k = 0; k < num_soc(); ++k) {
      const int o = offset_[k];
      const int q = q_[k];
      r[o] = u.segment(o, q).dot(v.segment(o, q));
      for (int i = 1; i < q; ++i) r[o + i] = u[o] * v[o + i] + v[o] * u[o + i];
    }
    return r;
  }

  // x with lam o x = d.
  VectorXd JordanDivide(const VectorXd& lam, const VectorXd& d) const {
    VectorXd x(m_);
    for (int i = 0; i < l_; ++i) x[i] = d[i] / lam[i];
    for (int k = 0; k < num_soc(); ++k) {
      const int o = offset_[k];
      const int q = q_[k];
      double l1l1 = 0, l1d1 = 0;
      for (int i = 1; i < q; ++i) {
        l1l1 += lam[o + i] * lam[o + i];
        l1d1 += lam[o + i] * d[o + i];
      }
      const double det = lam[o] * lam[o] - l1l1;
      const double x0 = (lam[o] * d[o] - l1d1) / det;
      x[o] = x0;
      for (int i = 1; i < q; ++i) x[o + i] = (d[o + i] - x0 * lam[o + i]) / lam[o];
    }
    return x;
  }

  double MaxStep(const VectorXd& x, const VectorXd& dx) const {
    double step = kInf;
    for (int i = 0; i < l_; ++i) {
      if (dx[i] < 0) step = std::min(step, -x[i] / dx[i]);
    }
    for (int k = 0; k < num_soc(); ++k) {
      const int o = offset_[k];
      step = std::min(step, SocMaxStep(x.data() + o, dx.data() + o, q_[k]));
    }
    return step;
  }

 private:
  VectorXd ApplySoc(int k, const VectorXd& v, bool inverse) const {
    const int o = offset_[k];
    const int q = q_[k];
    const double w0 = w_[o];
    double w1v1 = 0;
    for (int i = 1; i < q; ++i) w1v1 += w_[o + i] * v[i];
    VectorXd r(q);
    const double sign = inverse ? -1.0 : 1.0;
    const double scale = inverse ? 1.0 / eta_[k] : eta_[k];
    r[0] = scale * (w0 * v[0] + sign * w1v1);
    const double coef = w1v1 / (1.0 + w0) + sign * v[0];
    for (int i = 1; i < q; ++i) r[i] = scale * (v[i] + coef * w_[o + i]);
    return r;
  }

  VectorXd Apply(const VectorXd& v, bool inverse) const {
    VectorXd r(m_);
    for (int i = 0; i < l_; ++i) r[i] = inverse ? v[i] / w_[i] : v[i] * w_[i];
    for (int k = 0; k < num_soc(); ++k) {
      const int o = offset_[k];
      r.segment(o, q_[k]) = ApplySoc(k, v.segment(o, q_[k]), inverse);
    }
    return r;
  }

  int l_;
  std::vector<int> q_;
  std::vector<int> offset_;
  int m_ = 0;
  // Orthant: w_i = sqrt(s_i / z_i). SOC: the scaled NT point wbar.
  std::vector<double> w_;
  std::vector<double> eta_;
  VectorXd lambda_;
};

// Regularized KKT matrix
//   [ d I   A^T     G^T        ]
//   [ A    -d I     0          ]
//   [ G     0     -W^2 - d I   ]
// stored as its lower triangle, with the positions of the W^2 block cached so
// that only values change between iterations.
class KktSystem {
 public:
  KktSystem(const ConeProgram& prog, const Cones& cones, double reg)
      : prog_(prog), cones_(cones), reg_(reg) {
    n_ = prog.num_vars;
    p_ = static_cast<int>(prog.A.rows());
    m_ = static_cast<int>(prog.G.rows());
    const int dim = n_ + p_ + m_;
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(n_ + p_ + prog.A.nonZeros() + prog.G.nonZeros() + 6 * m_);
    for (int i = 0; i < n_; ++i) t.emplace_back(i, i, reg_);
    for (int col = 0; col < prog.A.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(prog.A, col); it; ++it) {
        t.emplace_back(n_ + it.row(), col, it.value());
      }
    }
    for (int i = 0; i < p_; ++i) t.emplace_back(n_ + i, n_ + i, -reg_);
    for (int col = 0; col < prog.G.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(prog.G, col); it; ++it) {
        t.emplace_back(n_ + p_ + it.row(), col, it.value());
      }
    }
    const int zo = n_ + p_;
    for (int i = 0; i < cones.num_orthant(); ++i) {
      t.emplace_back(zo + i, zo + i, -1.0);
    }
    for (int k = 0; k < cones.num_soc(); ++k) {
      const int o = cones.soc_offset(k);
      const int q = cones.soc_dim(k);
      for (int i = 0; i < q; ++i) {
        for (int j = 0; j <= i; ++j) t.emplace_back(zo + o + i, zo + o + j, -1.0);
      }
    }
    K_.resize(dim, dim);
    K_.setFromTriplets(t.begin(), t.end());
    K_.makeCompressed();
    for (int i = 0; i < cones.num_orthant(); ++i) {
      orthant_pos_.push_back(Position(zo + i, zo + i));
    }
    for (int k = 0; k < cones.num_soc(); ++k) {
      const int o = cones.soc_offset(k);
      const int q = cones.soc_dim(k);
      for (int i = 0; i < q; ++i) {
        for (int j = 0; j <= i; ++j) {
          soc_pos_.push_back(Position(zo + o + i, zo + o + j));
        }
      }
    }
    ldlt_.analyzePattern(K_);
  }

  bool Factor() {
    double* val = K_.valuePtr();
    for (int i = 0; i < cones_.num_orthant(); ++i) {
      val[orthant_pos_[i]] = -cones_.OrthantW2(i) - reg_;
    }
    size_t idx = 0;
    for (int k = 0; k < cones_.num_soc(); ++k) {
      const int q = cones_.soc_dim(k);
      const std::vector<double> w2 = cones_.SocW2(k);
      for (int i = 0; i < q; ++i) {
        for (int j = 0; j <= i; ++j) {
          val[soc_pos_[idx++]] = -w2[i * q + j] - (i == j ? reg_ : 0.0);
        }
      }
    }
    ldlt_.factorize(K_);
    return ldlt_.info() == Eigen::Success;
  }

  // Solves the unregularized system with iterative refinement.
  VectorXd Solve(const VectorXd& rhs, int refinement_steps) const {
    VectorXd x = ldlt_.solve(rhs);
    const double tol = 1e-14 * (1.0 + rhs.lpNorm<Eigen::Infinity>());
    double prev = kInf;
    for (int k = 0; k < refinement_steps; ++k) {
      const VectorXd r = rhs - Apply(x);
      const double err = r.lpNorm<Eigen::Infinity>();
      if (!(err > tol) || !(err < 0.5 * prev)) break;
      prev = err;
      x += ldlt_.solve(r);
    }
    return x;
  }

 private:
  int Position(int row, int col) {
    return static_cast<int>(&K_.coeffRef(row, col) - K_.valuePtr());
  }

  VectorXd Apply(const VectorXd& v) const {
    VectorXd out(v.size());
    const auto x = v.head(n_);
    const auto y = v.segment(n_, p_);
    const VectorXd z = v.tail(m_);
    out.head(n_) = prog_.A.transpose() * y + prog_.G.transpose() * z;
    out.segment(n_, p_) = prog_.A * x;
    out.tail(m_) = prog_.G * x - cones_.ApplyW(cones_.ApplyW(z));
    return out;
  }

  const ConeProgram& prog_;
  const Cones& cones_;
  double reg_;
  int n_, p_, m_;
  SparseMatrix K_;
  std::vector<int> orthant_pos_;
  std::vector<int> soc_pos_;
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>>
      ldlt_;
};

struct Metrics {
  double pres = kInf;
  double dres = kInf;
  double pcost = 0;
  double dcost = 0;
  double gap = kInf;
  double relgap = kInf;
  // Residual-to-objective ratios of the infeasibility certificates; infinite
  // when the sign condition fails.
  double primal_certificate = kInf;
  double dual_certificate = kInf;
};

}  // namespace

std::string ToString(IpmStatus status) {
  switch (status) {
    case IpmStatus::kOptimal:
      return "optimal";
    case IpmStatus::kOptimalInaccurate:
      return "optimal-inaccurate";
    case IpmStatus::kPrimalInfeasible:
      return "infeasible";
    case IpmStatus::kDualInfeasible:
      return "unbounded";
    case IpmStatus::kMaxIterations:
      return "max-iterations";
    case IpmStatus::kNumericalFailure:
      return "numerical-failure";
  }
  return "unknown";
}

IpmResult SolveConeProgram(const ConeProgram& prog,
                           const IpmSettings& settings) {
  const int n = prog.num_vars;
  const int p = static_cast<int>(prog.A.rows());
  Cones cones(prog.num_orthant, prog.soc_dims);
  const int m = cones.size();
  IpmResult result;
  if (prog.G.rows() != m || prog.h.size() != m || prog.c.size() != n ||
      prog.b.size() != p || prog.A.cols() != n || prog.G.cols() != n) {
    result.status = IpmStatus::kNumericalFailure;
    return result;
  }

  KktSystem kkt(prog, cones, settings.static_regularization);
  const int dim = n + p + m;
  const double bnorm = 1.0 + std::max(prog.b.norm(), prog.h.norm());
  const double cnorm = 1.0 + prog.c.norm();

  // Initial point from two least-squares-like solves with W = I.
  VectorXd x(n), y(p), z(m), s(m);
  double tau = 1.0, kappa = 1.0;
  {
    const VectorXd ones = VectorXd::Ones(m);
    cones.UpdateScaling(cones.Identity(), cones.Identity());
    if (!kkt.Factor()) return result;
    VectorXd rhs = VectorXd::Zero(dim);
    rhs.segment(n, p) = prog.b;
    rhs.tail(m) = prog.h;
    VectorXd sol = kkt.Solve(rhs, settings.refinement_steps);
    x = sol.head(n);
    s = -sol.tail(m);
    const double s_eig = cones.MinEig(s);
    if (!(s_eig > 1e-8)) cones.AddIdentity(s, 1.0 - s_eig);

    rhs.setZero();
    rhs.head(n) = -prog.c;
    sol = kkt.Solve(rhs, settings.refinement_steps);
    y = sol.segment(n, p);
    z = sol.tail(m);
    const double z_eig = cones.MinEig(z);
    if (!(z_eig > 1e-8)) cones.AddIdentity(z, 1.0 - z_eig);
  }

  auto evaluate = [&](Metrics& mt, VectorXd& rx, VectorXd& ry, VectorXd& rz,
                      double& rt) {
    const VectorXd aty = prog.A.transpose() * y;
    const VectorXd gtz = prog.G.transpose() * z;
    const VectorXd ax = prog.A * x;
    const VectorXd gx = prog.G * x;
    rx = aty + gtz + prog.c * tau;
    ry = ax - prog.b * tau;
    rz = s + gx - prog.h * tau;
    const double cx = prog.c.dot(x);
    const double by_hz = prog.b.dot(y) + prog.h.dot(z);
    rt = kappa + cx + by_hz;
    mt.pres = std::max(ry.norm(), rz.norm()) / tau / bnorm;
    mt.dres = rx.norm() / tau / cnorm;
    mt.pcost = cx / tau;
    mt.dcost = -by_hz / tau;
    mt.gap = s.dot(z) / (tau * tau);
    mt.relgap = kInf;
    if (mt.pcost < 0) {
      mt.relgap = mt.gap / -mt.pcost;
    } else if (mt.dcost > 0) {
      mt.relgap = mt.gap / mt.dcost;
    }
    mt.primal_certificate = by_hz < 0 ? (aty + gtz).norm() / -by_hz : kInf;
    mt.dual_certificate =
        cx < 0 ? std::max(ax.norm(), (gx + s).norm()) / -cx : kInf;
  };

  auto finish = [&](IpmStatus status, const Metrics& mt) {
    result.status = status;
    const bool scale = status == IpmStatus::kOptimal ||
                       status == IpmStatus::kOptimalInaccurate ||
                       status == IpmStatus::kMaxIterations ||
                       status == IpmStatus::kNumericalFailure;
    const double f = scale ? 1.0 / tau : 1.0;
    result.x = x * f;
    result.y = y * f;
    result.z = z * f;
    result.s = s * f;
    result.primal_cost = mt.pcost;
    result.dual_cost = mt.dcost;
    result.primal_residual = mt.pres;
    result.dual_residual = mt.dres;
    result.gap = mt.gap;
    return result;
  };

  auto converged = [](const Metrics& mt, double feastol, double abstol,
                      double reltol) {
    return mt.pres < feastol && mt.dres < feastol &&
           (mt.gap < abstol || mt.relgap < reltol);
  };

  VectorXd rx, ry, rz;
  double rt = 0;
  Metrics mt;
  // Best iterate meeting the inaccurate tolerances, by its worst residual.
  struct Snapshot {
    VectorXd x, y, z, s;
    double tau = 1, kappa = 1;
    Metrics mt;
    double score = kInf;
  } best;
  const double degree = cones.degree() + 1.0;
  for (int iter = 0;; ++iter) {
    result.iterations = iter;
    evaluate(mt, rx, ry, rz, rt);
    if (settings.verbose) {
      absl::FPrintF(stderr,
                    "%3d pcost %+.6e dcost %+.6e gap %.2e pres %.2e dres %.2e "
                    "tau %.2e kappa %.2e pinf %.2e dinf %.2e\n",
                    iter, mt.pcost, mt.dcost, mt.gap, mt.pres, mt.dres, tau,
                    kappa, mt.primal_certificate, mt.dual_certificate);
    }
    if (converged(mt, settings.feastol, settings.abstol, settings.reltol)) {
      return finish(IpmStatus::kOptimal, mt);
    }
    if (converged(mt, settings.feastol_inaccurate, settings.abstol_inaccurate,
                  settings.reltol_inaccurate)) {
      const double score = std::max(
          {mt.pres / settings.feastol, mt.dres / settings.feastol,
           std::min(mt.gap / settings.abstol, mt.relgap / settings.reltol)});
      if (score < best.score) best = {x, y, z, s, tau, kappa, mt, score};
    }
    if (mt.primal_certificate < settings.feastol) {
      return finish(IpmStatus::kPrimalInfeasible, mt);
    }
    if (mt.dual_certificate < settings.feastol) {
      return finish(IpmStatus::kDualInfeasible, mt);
    }
    if (iter >= settings.max_iterations) break;

    if (!cones.UpdateScaling(s, z) || !kkt.Factor()) break;
    const VectorXd& lam = cones.lambda();
    const double mu = (s.dot(z) + tau * kappa) / degree;

    VectorXd rhs2(dim);
    rhs2.head(n) = -prog.c;
    rhs2.segment(n, p) = prog.b;
    rhs2.tail(m) = prog.h;
    const VectorXd u2 = kkt.Solve(rhs2, settings.refinement_steps);
    const double den = prog.c.dot(u2.head(n)) + prog.b.dot(u2.segment(n, p)) +
                       prog.h.dot(u2.tail(m)) - kappa / tau;

    struct Direction {
      VectorXd dx, dy, dz, ds;
      double dtau, dkappa;
    };
    auto direction = [&](double sigma, const VectorXd& d_s,
                         double d_k) -> Direction {
      const VectorXd wt = cones.ApplyW(cones.JordanDivide(lam, d_s));
      VectorXd rhs(dim);
      rhs.head(n) = -(1 - sigma) * rx;
      rhs.segment(n, p) = -(1 - sigma) * ry;
      rhs.tail(m) = -(1 - sigma) * rz - wt;
      const VectorXd u1 = kkt.Solve(rhs, settings.refinement_steps);
      const double num = -(1 - sigma) * rt - d_k / tau -
                         (prog.c.dot(u1.head(n)) +
                          prog.b.dot(u1.segment(n, p)) +
                          prog.h.dot(u1.tail(m)));
      Direction d;
      d.dtau = num / den;
      const VectorXd full = u1 + d.dtau * u2;
      d.dx = full.head(n);
      d.dy = full.segment(n, p);
      d.dz = full.tail(m);
      d.ds = wt - cones.ApplyW(cones.ApplyW(d.dz));
      d.dkappa = (d_k - kappa * d.dtau) / tau;
      return d;
    };
    auto max_step = [&](const Direction& d) {
      double a = std::min(cones.MaxStep(s, d.ds), cones.MaxStep(z, d.dz));
      if (d.dtau < 0) a = std::min(a, -tau / d.dtau);
      if (d.dkappa < 0) a = std::min(a, -kappa / d.dkappa);
      return a;
    };

    // Predictor.
    const VectorXd lam_sq = cones.JordanProduct(lam, lam);
    const Direction aff = direction(0.0, -lam_sq, -tau * kappa);
    const double step_aff = std::min(1.0, max_step(aff));
    const double sigma = std::clamp(std::pow(1.0 - step_aff, 3), 0.0, 1.0);

    // Corrector.
    VectorXd d_s = -lam_sq -
                   cones.JordanProduct(cones.ApplyWinv(aff.ds),
                                       cones.ApplyW(aff.dz));
    cones.AddIdentity(d_s, sigma * mu);
    const double d_k = -tau * kappa - aff.dtau * aff.dkappa + sigma * mu;
    const Direction dir = direction(sigma, d_s, d_k);
    const double step =
        std::min(1.0, settings.step_fraction * max_step(dir));
    if (!(step > 1e-10) || !dir.dx.allFinite()) break;

    x += step * dir.dx;
    y += step * dir.dy;
    z += step * dir.dz;
    s += step * dir.ds;
    tau += step * dir.dtau;
    kappa += step * dir.dkappa;
  }

  if (std::isfinite(best.score)) {
    x = best.x;
    y = best.y;
    z = best.z;
    s = best.s;
    tau = best.tau;
    kappa = best.kappa;
    return finish(IpmStatus::kOptimalInaccurate, best.mt);
  }
  evaluate(mt, rx, ry, rz, rt);
  if (mt.primal_certificate < settings.feastol_inaccurate) {
    return finish(IpmStatus::kPrimalInfeasible, mt);
  }
  if (mt.dual_certificate < settings.feastol_inaccurate) {
    return finish(IpmStatus::kDualInfeasible, mt);
  }
  return finish(result.iterations >= settings.max_iterations
                    ? IpmStatus::kMaxIterations
                    : IpmStatus::kNumericalFailure,
                mt);
}

}  // namespace tempo::socp
