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

#include "tempo/io.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "absl/strings/escaping.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace tempo::io {
namespace {

using Json = nlohmann::json;
using Vec3 = Eigen::Vector3d;

absl::Status Invalid(const std::string& what) {
  return absl::InvalidArgumentError(what);
}

absl::StatusOr<double> Number(const Json& j, const std::string& key) {
  if (!j.is_number()) return Invalid(absl::StrCat(key, ": expected a number"));
  const double v = j.get<double>();
  if (!std::isfinite(v)) return Invalid(absl::StrCat(key, ": not finite"));
  return v;
}

absl::StatusOr<Vec3> Vector3(const Json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) {
    return Invalid(absl::StrCat(key, ": expected [x, y, z]"));
  }
  Vec3 v;
  for (int a = 0; a < 3; ++a) {
    absl::StatusOr<double> x = Number(j[a], key);
    if (!x.ok()) return x.status();
    v[a] = *x;
  }
  return v;
}

// A number applies to all three axes.
absl::StatusOr<Vec3> ScalarOrVector3(const Json& j, const std::string& key) {
  if (j.is_number()) {
    absl::StatusOr<double> x = Number(j, key);
    if (!x.ok()) return x.status();
    return Vec3::Constant(*x);
  }
  return Vector3(j, key);
}

absl::StatusOr<std::vector<Vec3>> Points(const Json& j,
                                         const std::string& key) {
  if (!j.is_array()) return Invalid(absl::StrCat(key, ": expected an array"));
  std::vector<Vec3> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    absl::StatusOr<Vec3> p = Vector3(j[i], absl::StrCat(key, "[", i, "]"));
    if (!p.ok()) return p.status();
    out.push_back(*p);
  }
  return out;
}

absl::StatusOr<std::vector<double>> Numbers(const Json& j,
                                            const std::string& key) {
  if (!j.is_array()) return Invalid(absl::StrCat(key, ": expected an array"));
  std::vector<double> out;
  for (size_t i = 0; i < j.size(); ++i) {
    absl::StatusOr<double> x = Number(j[i], key);
    if (!x.ok()) return x.status();
    out.push_back(*x);
  }
  return out;
}

absl::Status CheckKeys(const Json& j, const std::set<std::string>& allowed,
                       const std::string& what) {
  if (!j.is_object()) return Invalid(absl::StrCat(what, ": expected an object"));
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      return Invalid(absl::StrCat(what, ": unknown key \"", key, "\""));
    }
  }
  return absl::OkStatus();
}

std::string Row(std::initializer_list<double> values) {
  std::vector<std::string> parts;
  for (double v : values) parts.push_back(FormatDouble(v));
  return absl::StrCat(absl::StrJoin(parts, ","), "\n");
}

}  // namespace

std::string FormatDouble(double v) { return absl::StrFormat("%.9g", v); }

nlohmann::json Rounded(const nlohmann::json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) return nullptr;
    return std::strtod(FormatDouble(v).c_str(), nullptr);
  }
  if (j.is_array() || j.is_object()) {
    Json out = j;
    for (auto it = out.begin(); it != out.end(); ++it) *it = Rounded(*it);
    return out;
  }
  return j;
}

std::string DumpJson(const nlohmann::json& j) {
  return Rounded(j).dump(2) + "\n";
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  }
  out << content;
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::StatusOr<nlohmann::json> ParseJson(const std::string& text,
                                         const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    return Invalid(absl::StrCat(what, ": ", e.what()));
  }
}

absl::StatusOr<traj::SampledTrajectory> TrajectoryFromJson(
    const nlohmann::json& j, std::optional<double> dtau) {
  if (dtau.has_value() && !(*dtau > 0.0)) return Invalid("dtau must be positive");
  if (j.is_object() && j.contains("piecewise_poly")) {
    if (absl::Status st = CheckKeys(j, {"piecewise_poly"}, "trajectory");
        !st.ok()) {
      return st;
    }
    if (!dtau.has_value()) {
      return Invalid("piecewise polynomial input needs --dtau");
    }
    const Json& pieces = j["piecewise_poly"];
    if (!pieces.is_array() || pieces.empty()) {
      return Invalid("piecewise_poly: expected a non-empty array");
    }
    std::vector<traj::PolySegment> segs;
    for (const Json& piece : pieces) {
      if (absl::Status st = CheckKeys(
              piece, {"tau_start", "tau_end", "coeffs_x", "coeffs_y", "coeffs_z"},
              "piecewise_poly segment");
          !st.ok()) {
        return st;
      }
      traj::PolySegment seg;
      for (const char* key : {"tau_start", "tau_end"}) {
        if (!piece.contains(key)) return Invalid(absl::StrCat("missing ", key));
      }
      absl::StatusOr<double> a = Number(piece["tau_start"], "tau_start");
      absl::StatusOr<double> b = Number(piece["tau_end"], "tau_end");
      if (!a.ok()) return a.status();
      if (!b.ok()) return b.status();
      seg.tau_start = *a;
      seg.tau_end = *b;
      const char* names[] = {"coeffs_x", "coeffs_y", "coeffs_z"};
      for (int ax = 0; ax < 3; ++ax) {
        if (!piece.contains(names[ax])) {
          return Invalid(absl::StrCat("missing ", names[ax]));
        }
        absl::StatusOr<std::vector<double>> c = Numbers(piece[names[ax]], names[ax]);
        if (!c.ok()) return c.status();
        seg.coeffs[ax] = *std::move(c);
      }
      segs.push_back(std::move(seg));
    }
    absl::StatusOr<traj::PiecewisePolynomial> poly =
        traj::PiecewisePolynomial::Create(std::move(segs));
    if (!poly.ok()) return poly.status();
    return traj::Resample(*poly, *dtau);
  }

  if (absl::Status st =
          CheckKeys(j, {"tau0", "dtau", "pos", "vel", "acc"}, "trajectory");
      !st.ok()) {
    return st;
  }
  for (const char* key : {"tau0", "dtau", "pos"}) {
    if (!j.contains(key)) return Invalid(absl::StrCat("trajectory: missing ", key));
  }
  absl::StatusOr<double> tau0 = Number(j["tau0"], "tau0");
  absl::StatusOr<double> src_dtau = Number(j["dtau"], "dtau");
  absl::StatusOr<std::vector<Vec3>> pos = Points(j["pos"], "pos");
  if (!tau0.ok()) return tau0.status();
  if (!src_dtau.ok()) return src_dtau.status();
  if (!pos.ok()) return pos.status();
  std::vector<Vec3> vel, acc;
  if (j.contains("vel")) {
    absl::StatusOr<std::vector<Vec3>> v = Points(j["vel"], "vel");
    if (!v.ok()) return v.status();
    vel = *std::move(v);
  }
  if (j.contains("acc")) {
    absl::StatusOr<std::vector<Vec3>> a = Points(j["acc"], "acc");
    if (!a.ok()) return a.status();
    acc = *std::move(a);
  }
  if (!(*src_dtau > 0.0)) return Invalid("trajectory: dtau must be positive");
  if (pos->size() < 2) return Invalid("trajectory: need at least two samples");
  if ((!vel.empty() && vel.size() != pos->size()) ||
      (!acc.empty() && acc.size() != pos->size())) {
    return Invalid("trajectory: vel/acc length differs from pos");
  }
  const bool same_grid = !dtau.has_value() || *dtau == *src_dtau;
  if (same_grid) {
    if (vel.empty()) vel = traj::FiniteDifferenceVelocity(*pos, *src_dtau);
    if (acc.empty()) acc = traj::FiniteDifferenceAcceleration(*pos, *src_dtau);
    return traj::SampledTrajectory::Create(*tau0, *src_dtau, *std::move(pos),
                                           std::move(vel), std::move(acc));
  }
  return traj::Resample(
      traj::PositionSeries::Uniform(*tau0, *src_dtau, *std::move(pos),
                                    std::move(vel), std::move(acc)),
      *dtau);
}

absl::StatusOr<gridmap::VoxelMap> MapFromJson(const nlohmann::json& j) {
  if (absl::Status st = CheckKeys(
          j, {"origin", "resolution", "dims", "occupancy_b64"}, "map");
      !st.ok()) {
    return st;
  }
  for (const char* key : {"origin", "resolution", "dims", "occupancy_b64"}) {
    if (!j.contains(key)) return Invalid(absl::StrCat("map: missing ", key));
  }
  absl::StatusOr<Vec3> origin = Vector3(j["origin"], "origin");
  absl::StatusOr<double> res = Number(j["resolution"], "resolution");
  if (!origin.ok()) return origin.status();
  if (!res.ok()) return res.status();
  const Json& d = j["dims"];
  if (!d.is_array() || d.size() != 3) return Invalid("dims: expected [nx,ny,nz]");
  gridmap::Index3 dims;
  for (int a = 0; a < 3; ++a) {
    if (!d[a].is_number_integer()) return Invalid("dims: expected integers");
    dims[a] = d[a].get<int>();
  }
  if (!j["occupancy_b64"].is_string()) {
    return Invalid("occupancy_b64: expected a string");
  }
  std::string raw;
  if (!absl::Base64Unescape(j["occupancy_b64"].get<std::string>(), &raw)) {
    return Invalid("occupancy_b64: invalid base64");
  }
  return gridmap::VoxelMap::FromPackedBits(
      *origin, *res, dims, std::vector<uint8_t>(raw.begin(), raw.end()));
}

nlohmann::json MapToJson(const gridmap::VoxelMap& map) {
  const std::vector<uint8_t> bits = map.PackBits();
  const Vec3& o = map.origin();
  return {{"origin", {o.x(), o.y(), o.z()}},
          {"resolution", map.resolution()},
          {"dims", {map.dims()[0], map.dims()[1], map.dims()[2]}},
          {"occupancy_b64",
           absl::Base64Escape(std::string(bits.begin(), bits.end()))}};
}

absl::StatusOr<std::optional<double>> ParseBetaBoundary(const std::string& s) {
  if (s == "free") return std::optional<double>();
  if (absl::StartsWith(s, "fixed:")) {
    double v;
    if (absl::SimpleAtod(s.substr(6), &v) && v > 0.0 && std::isfinite(v)) {
      return std::optional<double>(v);
    }
  }
  return Invalid(absl::StrCat("beta boundary must be fixed:<v> with v > 0 or "
                              "free, got \"", s, "\""));
}

absl::Status ApplyConfig(const nlohmann::json& j, Settings& settings) {
  if (absl::Status st = CheckKeys(
          j,
          {"delta", "m", "b", "semi_axes", "obstacle_cov_diag",
           "uncertainty_mode", "v_max", "a_max", "d_th", "merge_gap",
           "min_zone_duration", "lambda", "smoothness", "beta_boundary", "tol",
           "dt_out", "dtau", "runs", "forest"},
          "config");
      !st.ok()) {
    return st;
  }
  PipelineConfig& p = settings.pipeline;
  auto number = [&](const char* key, double& out) -> absl::Status {
    if (!j.contains(key)) return absl::OkStatus();
    absl::StatusOr<double> v = Number(j[key], key);
    if (!v.ok()) return v.status();
    out = *v;
    return absl::OkStatus();
  };
  for (auto [key, dst] : std::initializer_list<std::pair<const char*, double*>>{
           {"delta", &p.chance.params.delta},
           {"m", &p.chance.uncertainty.m},
           {"b", &p.chance.uncertainty.b},
           {"d_th", &p.braking.d_th},
           {"merge_gap", &p.braking.merge_gap},
           {"lambda", &p.assemble.lambda},
           {"tol", &p.tol},
           {"dt_out", &p.dt_out}}) {
    if (absl::Status st = number(key, *dst); !st.ok()) return st;
  }
  if (j.contains("min_zone_duration")) {
    double v = 0.0;
    if (absl::Status st = number("min_zone_duration", v); !st.ok()) return st;
    p.braking.min_zone_duration = v;
  }
  if (j.contains("dtau")) {
    double v = 0.0;
    if (absl::Status st = number("dtau", v); !st.ok()) return st;
    if (!(v > 0.0)) return Invalid("dtau must be positive");
    settings.dtau = v;
  }
  if (j.contains("semi_axes")) {
    absl::StatusOr<Vec3> v = Vector3(j["semi_axes"], "semi_axes");
    if (!v.ok()) return v.status();
    absl::StatusOr<chance::SafetyEllipsoid> e = chance::SafetyEllipsoid::Create(*v);
    if (!e.ok()) return e.status();
    p.chance.ellipsoid = *e;
  }
  if (j.contains("obstacle_cov_diag")) {
    absl::StatusOr<Vec3> v = Vector3(j["obstacle_cov_diag"], "obstacle_cov_diag");
    if (!v.ok()) return v.status();
    p.chance.uncertainty.obstacle_cov = v->asDiagonal();
  }
  if (j.contains("uncertainty_mode")) {
    const Json& m = j["uncertainty_mode"];
    if (m == "isotropic") {
      p.chance.uncertainty.mode = chance::UncertaintyMode::kIsotropic;
    } else if (m == "per_axis") {
      p.chance.uncertainty.mode = chance::UncertaintyMode::kPerAxis;
    } else {
      return Invalid("uncertainty_mode must be \"isotropic\" or \"per_axis\"");
    }
  }
  for (auto [key, dst] : std::initializer_list<std::pair<const char*, Vec3*>>{
           {"v_max", &p.limits.v_max}, {"a_max", &p.limits.a_max}}) {
    if (!j.contains(key)) continue;
    absl::StatusOr<Vec3> v = ScalarOrVector3(j[key], key);
    if (!v.ok()) return v.status();
    *dst = *v;
  }
  if (j.contains("smoothness")) {
    const Json& m = j["smoothness"];
    if (m == "quadratic") {
      p.assemble.smoothness = socp::SmoothnessMode::kQuadratic;
    } else if (m == "paper_literal") {
      p.assemble.smoothness = socp::SmoothnessMode::kPaperLiteral;
    } else {
      return Invalid("smoothness must be \"quadratic\" or \"paper_literal\"");
    }
  }
  if (j.contains("beta_boundary")) {
    if (!j["beta_boundary"].is_string()) {
      return Invalid("beta_boundary: expected a string");
    }
    absl::StatusOr<std::optional<double>> b =
        ParseBetaBoundary(j["beta_boundary"].get<std::string>());
    if (!b.ok()) return b.status();
    p.assemble.beta_start = p.assemble.beta_end = *b;
  }
  if (j.contains("runs")) {
    if (!j["runs"].is_number_integer() || j["runs"].get<int>() < 1) {
      return Invalid("runs must be a positive integer");
    }
    settings.runs = j["runs"].get<int>();
  }
  if (j.contains("forest")) {
    const Json& f = j["forest"];
    if (absl::Status st = CheckKeys(
            f, {"extent", "density", "radius", "resolution"}, "forest");
        !st.ok()) {
      return st;
    }
    mc::ForestConfig& fc = settings.forest;
    if (f.contains("extent")) {
      absl::StatusOr<Vec3> v = Vector3(f["extent"], "forest.extent");
      if (!v.ok()) return v.status();
      fc.extent = *v;
    }
    for (auto [key, dst] : std::initializer_list<std::pair<const char*, double*>>{
             {"density", &fc.density},
             {"radius", &fc.radius},
             {"resolution", &fc.resolution}}) {
      if (!f.contains(key)) continue;
      absl::StatusOr<double> v = Number(f[key], key);
      if (!v.ok()) return v.status();
      *dst = *v;
    }
  }
  return p.Validate();
}

nlohmann::json ZonesToJson(std::span<const brake::BrakingZone> zones) {
  Json out = Json::array();
  for (const brake::BrakingZone& z : zones) {
    out.push_back({{"tau_start", z.tau_start},
                   {"tau_end", z.tau_end},
                   {"first_index", z.first_index},
                   {"last_index", z.last_index}});
  }
  return out;
}

nlohmann::json MappingToJson(const traj::TimeMapping& m) {
  return {{"tau_knots", m.tau_knots()},
          {"beta", m.beta()},
          {"alpha", m.alpha()},
          {"t_knots", m.t_knots()},
          {"total_time", m.total_time()}};
}

std::string ReparamCsv(const traj::ReparamTrajectory& r) {
  std::string out = "t,tau,hdot,px,py,pz,vx,vy,vz,ax,ay,az\n";
  for (int k = 0; k < r.size(); ++k) {
    const Vec3& p = r.pos[k];
    const Vec3& v = r.vel[k];
    const Vec3& a = r.acc[k];
    absl::StrAppend(&out, Row({r.t[k], r.tau[k], r.hdot[k], p.x(), p.y(),
                               p.z(), v.x(), v.y(), v.z(), a.x(), a.y(),
                               a.z()}));
  }
  return out;
}

std::string ProfileCsv(const traj::SampledTrajectory& s,
                       const traj::ReparamTrajectory& optimized,
                       std::span<const brake::BrakingZone> zones) {
  std::string out =
      "t,tau,in_zone,speed,accel,orig_t,orig_speed,orig_accel\n";
  const int n = s.num_segments();
  for (int k = 0; k < optimized.size(); ++k) {
    const double tau = optimized.tau[k];
    bool in_zone = false;
    for (const brake::BrakingZone& z : zones) {
      in_zone = in_zone || (tau >= z.tau_start - 1e-9 && tau <= z.tau_end + 1e-9);
    }
    // The original trajectory flies tau at unit rate; interpolate its
    // derivatives linearly between samples.
    const double u = std::clamp((tau - s.tau0()) / s.dtau(), 0.0,
                                static_cast<double>(n));
    const int i = std::min(static_cast<int>(u), n - 1);
    const double w = u - i;
    const Vec3 v0 = (1 - w) * s.vel()[i] + w * s.vel()[i + 1];
    const Vec3 a0 = (1 - w) * s.acc()[i] + w * s.acc()[i + 1];
    absl::StrAppend(
        &out, FormatDouble(optimized.t[k]), ",", FormatDouble(tau), ",",
        in_zone ? 1 : 0, ",",
        absl::StrJoin({FormatDouble(optimized.vel[k].norm()),
                       FormatDouble(optimized.acc[k].norm()),
                       FormatDouble(tau - s.tau0()), FormatDouble(v0.norm()),
                       FormatDouble(a0.norm())},
                      ","),
        "\n");
  }
  return out;
}

std::string TrialsCsv(const mc::TrialReport& report) {
  std::string out = "run,collided,min_clearance\n";
  for (int r = 0; r < report.runs; ++r) {
    absl::StrAppend(&out, r, ",", report.collided[r] ? 1 : 0, ",",
                    FormatDouble(report.min_clearance[r]), "\n");
  }
  return out;
}

}  // namespace tempo::io
