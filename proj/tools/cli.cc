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

#include "cli.h"

#include <cstdint>
#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "tempo/io.h"
#include "tempo/mc.h"
#include "tempo/pipeline.h"

namespace tempo::cli {
namespace {

using Json = nlohmann::json;

struct Options {
  std::string traj_path;
  std::string map_path;
  std::string config_path;
  std::string out_dir = ".";
  std::optional<double> dtau;
  std::optional<uint64_t> seed;
  std::optional<int> runs;
  std::optional<std::string> beta_boundary;
  bool paper_literal_smoothness = false;
  std::string mode = "allocated";
};

absl::StatusOr<Json> LoadJson(const std::string& path,
                              const std::string& what) {
  absl::StatusOr<std::string> text = io::ReadFile(path);
  if (!text.ok()) return text.status();
  return io::ParseJson(*text, absl::StrCat(what, " ", path));
}

absl::StatusOr<io::Settings> LoadSettings(const Options& opt) {
  io::Settings settings;
  if (!opt.config_path.empty()) {
    absl::StatusOr<Json> j = LoadJson(opt.config_path, "config");
    if (!j.ok()) return j.status();
    if (absl::Status st = io::ApplyConfig(*j, settings); !st.ok()) return st;
  }
  if (opt.dtau.has_value()) {
    if (!(*opt.dtau > 0.0)) {
      return absl::InvalidArgumentError("--dtau must be positive");
    }
    settings.dtau = opt.dtau;
  }
  if (opt.runs.has_value()) {
    if (*opt.runs < 1) return absl::InvalidArgumentError("--runs must be >= 1");
    settings.runs = *opt.runs;
  }
  if (opt.seed.has_value()) settings.forest.seed = *opt.seed;
  if (opt.paper_literal_smoothness) {
    settings.pipeline.assemble.smoothness = socp::SmoothnessMode::kPaperLiteral;
  }
  if (opt.beta_boundary.has_value()) {
    absl::StatusOr<std::optional<double>> b =
        io::ParseBetaBoundary(*opt.beta_boundary);
    if (!b.ok()) return b.status();
    settings.pipeline.assemble.beta_start = *b;
    settings.pipeline.assemble.beta_end = *b;
  }
  return settings;
}

struct Inputs {
  io::Settings settings;
  traj::SampledTrajectory trajectory;
  gridmap::VoxelMap map;
};

absl::StatusOr<Inputs> LoadInputs(const Options& opt) {
  absl::StatusOr<io::Settings> settings = LoadSettings(opt);
  if (!settings.ok()) return settings.status();
  absl::StatusOr<Json> tj = LoadJson(opt.traj_path, "trajectory");
  if (!tj.ok()) return tj.status();
  absl::StatusOr<traj::SampledTrajectory> s =
      io::TrajectoryFromJson(*tj, settings->dtau);
  if (!s.ok()) return s.status();
  absl::StatusOr<Json> mj = LoadJson(opt.map_path, "map");
  if (!mj.ok()) return mj.status();
  absl::StatusOr<gridmap::VoxelMap> map = io::MapFromJson(*mj);
  if (!map.ok()) return map.status();
  return Inputs{*std::move(settings), *std::move(s), *std::move(map)};
}

absl::Status EnsureDir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create ", dir, ": ", ec.message()));
  }
  return absl::OkStatus();
}

std::string PathIn(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

int ExitCodeFor(Outcome outcome) {
  switch (outcome) {
    case Outcome::kVerified:
      return kExitOk;
    case Outcome::kInfeasible:
      return kExitInfeasible;
    case Outcome::kUnverified:
      return kExitUnverified;
  }
  return kExitUnverified;
}

Json ReportJson(const traj::SampledTrajectory& s, const io::Settings& settings,
                const Allocation& a) {
  const socp::AssembleOptions& ao = settings.pipeline.assemble;
  auto boundary = [](const std::optional<double>& b) -> Json {
    if (!b.has_value()) return "free";
    return absl::StrCat("fixed:", io::FormatDouble(*b));
  };
  Json report = {
      {"outcome", ToString(a.outcome)},
      {"detail", a.detail},
      {"solve_status", socp::ToString(a.solution.status)},
      {"objective", a.solution.objective},
      {"total_time", a.solution.total_time},
      {"original_duration", s.tau_final() - s.tau0()},
      {"iterations", a.solution.iterations},
      {"max_residual", a.solution.max_residual},
      {"solve_seconds", a.solve_seconds},
      {"zones", io::ZonesToJson(a.braking.zones)},
      {"verification", a.outcome == Outcome::kInfeasible
                           ? Json(nullptr)
                           : socp::ToJson(a.verification)},
      {"flags",
       {{"smoothness", ao.smoothness == socp::SmoothnessMode::kQuadratic
                           ? "quadratic"
                           : "paper_literal"},
        {"lambda", ao.lambda},
        {"beta_start", boundary(ao.beta_start)},
        {"beta_end", boundary(ao.beta_end)},
        {"uncertainty_mode", settings.pipeline.chance.uncertainty.mode ==
                                     chance::UncertaintyMode::kIsotropic
                                 ? "isotropic"
                                 : "per_axis"},
        {"dtau", s.dtau()},
        {"num_samples", s.size()},
        {"tol", settings.pipeline.tol}}}};
  return report;
}

int Fail(std::ostream& err, int code, const std::string& message) {
  err << "error: " << message << "\n";
  return code;
}

int Fail(std::ostream& err, const absl::Status& st) {
  return Fail(err, kExitBadInput, std::string(st.message()));
}

int Allocate(const Options& opt, bool profile_only, std::ostream& err) {
  absl::StatusOr<Inputs> in = LoadInputs(opt);
  if (!in.ok()) return Fail(err, in.status());
  if (absl::Status st = EnsureDir(opt.out_dir); !st.ok()) return Fail(err, st);
  absl::StatusOr<Allocation> a =
      RunAllocation(in->trajectory, in->map, in->settings.pipeline);
  if (!a.ok()) return Fail(err, a.status());

  const int code = ExitCodeFor(a->outcome);
  if (!profile_only) {
    if (absl::Status st = io::WriteFile(
            PathIn(opt.out_dir, "report.json"),
            io::DumpJson(ReportJson(in->trajectory, in->settings, *a)));
        !st.ok()) {
      return Fail(err, st);
    }
  }
  if (code != kExitOk) {
    return Fail(err, code, absl::StrCat(ToString(a->outcome), ": ", a->detail));
  }

  absl::StatusOr<traj::ReparamTrajectory> r = traj::Reparameterize(
      in->trajectory, *a->mapping, in->settings.pipeline.dt_out);
  if (!r.ok()) return Fail(err, r.status());
  std::vector<std::pair<std::string, std::string>> files = {
      {"profile.csv", io::ProfileCsv(in->trajectory, *r, a->braking.zones)}};
  if (!profile_only) {
    files.push_back({"mapping.json", io::DumpJson(io::MappingToJson(*a->mapping))});
    files.push_back({"reparam.csv", io::ReparamCsv(*r)});
  }
  for (const auto& [name, content] : files) {
    if (absl::Status st = io::WriteFile(PathIn(opt.out_dir, name), content);
        !st.ok()) {
      return Fail(err, st);
    }
  }
  return kExitOk;
}

int BrakingZones(const Options& opt, std::ostream& out, std::ostream& err) {
  absl::StatusOr<Inputs> in = LoadInputs(opt);
  if (!in.ok()) return Fail(err, in.status());
  const brake::BrakingAnalysis analysis = brake::DetermineBrakingZones(
      in->trajectory, in->map, in->settings.pipeline.braking);
  out << io::DumpJson(io::ZonesToJson(analysis.zones));
  return kExitOk;
}

int Simulate(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.mode != "allocated" && opt.mode != "original") {
    return Fail(err, kExitBadInput, "--mode must be allocated or original");
  }
  absl::StatusOr<Inputs> in = LoadInputs(opt);
  if (!in.ok()) return Fail(err, in.status());
  const PipelineConfig& pc = in->settings.pipeline;
  traj::TimeMapping mapping = traj::IdentityMapping(in->trajectory);
  if (opt.mode == "allocated") {
    absl::StatusOr<Allocation> a = RunAllocation(in->trajectory, in->map, pc);
    if (!a.ok()) return Fail(err, a.status());
    if (a->outcome != Outcome::kVerified) {
      return Fail(err, ExitCodeFor(a->outcome),
                  absl::StrCat(ToString(a->outcome), ": ", a->detail));
    }
    mapping = *a->mapping;
  }
  absl::StatusOr<traj::ReparamTrajectory> r =
      traj::Reparameterize(in->trajectory, mapping, pc.dt_out);
  if (!r.ok()) return Fail(err, r.status());
  const std::vector<traj::ReparamTrajectory> runs(in->settings.runs, *r);
  mc::McConfig mc_cfg;
  mc_cfg.seed = opt.seed.value_or(0);
  absl::StatusOr<mc::TrialReport> report =
      mc::RunCollisionTrials(in->map, runs, pc.chance.uncertainty,
                             pc.chance.ellipsoid, mc_cfg);
  if (!report.ok()) return Fail(err, report.status());
  const std::string json = io::DumpJson(mc::ToJson(*report));
  if (absl::Status st = EnsureDir(opt.out_dir); !st.ok()) return Fail(err, st);
  if (absl::Status st =
          io::WriteFile(PathIn(opt.out_dir, "trials.csv"), io::TrialsCsv(*report));
      !st.ok()) {
    return Fail(err, st);
  }
  out << json;
  return kExitOk;
}

int GenWorld(const Options& opt, std::ostream& err) {
  absl::StatusOr<io::Settings> settings = LoadSettings(opt);
  if (!settings.ok()) return Fail(err, settings.status());
  absl::StatusOr<mc::Forest> forest = mc::GenerateForest(settings->forest);
  if (!forest.ok()) return Fail(err, forest.status());
  if (absl::Status st = EnsureDir(opt.out_dir); !st.ok()) return Fail(err, st);
  if (absl::Status st = io::WriteFile(PathIn(opt.out_dir, "map.json"),
                                      io::DumpJson(io::MapToJson(forest->map)));
      !st.ok()) {
    return Fail(err, st);
  }
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app("Safety-aware time allocation for sampled trajectories.",
               "tempo");
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool needs_inputs) {
    if (needs_inputs) {
      cmd->add_option("--traj", opt.traj_path, "Trajectory JSON")->required();
      cmd->add_option("--map", opt.map_path, "Voxel map JSON")->required();
      cmd->add_option("--dtau", opt.dtau, "Resampling step, s");
    }
    cmd->add_option("--config", opt.config_path, "Config JSON");
    cmd->add_option("--out", opt.out_dir, "Output directory");
  };
  auto add_solver = [&](CLI::App* cmd) {
    cmd->add_flag("--paper-literal-smoothness", opt.paper_literal_smoothness,
                  "Linear smoothness term on alpha");
    cmd->add_option("--beta-boundary", opt.beta_boundary,
                    "fixed:<v> or free");
  };

  CLI::App* allocate =
      app.add_subcommand("allocate", "Optimize the time mapping");
  add_common(allocate, true);
  add_solver(allocate);
  CLI::App* profile =
      app.add_subcommand("profile", "Write profile.csv only");
  add_common(profile, true);
  add_solver(profile);
  CLI::App* zones =
      app.add_subcommand("braking-zones", "Print braking zones as JSON");
  add_common(zones, true);
  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo tracking trials");
  add_common(simulate, true);
  add_solver(simulate);
  simulate->add_option("--seed", opt.seed, "Base seed");
  simulate->add_option("--runs", opt.runs, "Number of runs");
  simulate->add_option("--mode", opt.mode, "allocated or original");
  CLI::App* gen_world =
      app.add_subcommand("gen-world", "Generate a pillar forest map.json");
  add_common(gen_world, false);
  gen_world->add_option("--seed", opt.seed, "Generator seed");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  if (allocate->parsed()) return Allocate(opt, false, err);
  if (profile->parsed()) return Allocate(opt, true, err);
  if (zones->parsed()) return BrakingZones(opt, out, err);
  if (simulate->parsed()) return Simulate(opt, out, err);
  if (gen_world->parsed()) return GenWorld(opt, err);
  return kExitBadInput;
}

}  // namespace tempo::cli
