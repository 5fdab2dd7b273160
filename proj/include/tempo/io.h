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

// File formats. Every number written by this module is formatted with nine
// significant digits so that identical inputs give byte-identical files.
//
// Trajectory (JSON), either sampled
//   {"tau0": f, "dtau": f, "pos": [[x,y,z],...], "vel": [...], "acc": [...]}
// with "vel"/"acc" optional, or piecewise polynomial
//   {"piecewise_poly": [{"tau_start": f, "tau_end": f, "coeffs_x": [...],
//                        "coeffs_y": [...], "coeffs_z": [...]}, ...]}
// with coefficients in ascending powers of (tau - tau_start).
//
// Map (JSON)
//   {"origin": [x,y,z], "resolution": f, "dims": [nx,ny,nz],
//    "occupancy_b64": "<base64 bitset, bit i + nx (j + ny k), LSB first>"}
//
// Config (JSON), all keys optional:
//   delta, m, b, semi_axes [a,b,c], obstacle_cov_diag [sx,sy,sz],
//   uncertainty_mode ("isotropic" | "per_axis"), v_max, a_max (number or
//   [x,y,z]), d_th, merge_gap, min_zone_duration, lambda,
//   smoothness ("quadratic" | "paper_literal"), beta_boundary
//   ("fixed:<v>" | "free"), tol, dt_out, dtau, runs,
//   forest {extent [x,y,z], density, radius, resolution}.

#ifndef TEMPO_IO_H_
#define TEMPO_IO_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"
#include "tempo/brake.h"
#include "tempo/gridmap.h"
#include "tempo/mc.h"
#include "tempo/pipeline.h"
#include "tempo/traj.h"

namespace tempo::io {

// "%.9g".
std::string FormatDouble(double v);

// Copy of `j` with every floating-point number rounded to nine significant
// digits; non-finite numbers become null.
nlohmann::json Rounded(const nlohmann::json& j);

// Dumps `j` rounded, indented by two spaces, with a trailing newline.
std::string DumpJson(const nlohmann::json& j);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, const std::string& content);

// InvalidArgument with the parser's diagnostic on malformed text.
absl::StatusOr<nlohmann::json> ParseJson(const std::string& text,
                                         const std::string& what);

// Sampled inputs are resampled when `dtau` differs from the file's spacing;
// piecewise polynomials require `dtau`.
absl::StatusOr<traj::SampledTrajectory> TrajectoryFromJson(
    const nlohmann::json& j, std::optional<double> dtau);

absl::StatusOr<gridmap::VoxelMap> MapFromJson(const nlohmann::json& j);
nlohmann::json MapToJson(const gridmap::VoxelMap& map);

// Everything a subcommand may read from the config file.
struct Settings {
  PipelineConfig pipeline;
  std::optional<double> dtau;
  int runs = 50;
  mc::ForestConfig forest;
};

// Applies the keys present in `j` on top of `settings`. Unknown keys and
// out-of-range values are InvalidArgument.
absl::Status ApplyConfig(const nlohmann::json& j, Settings& settings);

// "fixed:<v>" or "free".
absl::StatusOr<std::optional<double>> ParseBetaBoundary(const std::string& s);

nlohmann::json ZonesToJson(std::span<const brake::BrakingZone> zones);
nlohmann::json MappingToJson(const traj::TimeMapping& m);

// Header t,tau,hdot,px,py,pz,vx,vy,vz,ax,ay,az.
std::string ReparamCsv(const traj::ReparamTrajectory& r);

// Optimized speed/acceleration magnitudes against time next to the original
// trajectory's values at the same tau, with a braking-zone flag:
// t,tau,in_zone,speed,accel,orig_t,orig_speed,orig_accel.
std::string ProfileCsv(const traj::SampledTrajectory& s,
                       const traj::ReparamTrajectory& optimized,
                       std::span<const brake::BrakingZone> zones);

// run,collided,min_clearance
std::string TrialsCsv(const mc::TrialReport& report);

}  // namespace tempo::io

#endif  // TEMPO_IO_H_
