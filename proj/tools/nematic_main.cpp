// Copyright 2026 The nematic-spectral Authors
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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "nematic/config.hpp"
#include "nematic/driver.hpp"
#include "nematic/error.hpp"
#include "nematic/experiments.hpp"
#include "nematic/snapshot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nematic;

namespace {

int code(ExitCode c) { return static_cast<int>(c); }

RunConfig load(const std::optional<std::string>& path, const std::vector<std::string>& overrides) {
  if (path) return load_config(*path, overrides);
  json doc = json::object();
  for (const auto& o : overrides) apply_override(doc, o);
  return parse_config(doc);
}

int finish_run(const RunSummary& s) {
  std::cout << json{{"status", s.message}, {"exit_code", code(s.code)}, {"last_step", s.last_step},
                    {"t", s.t}}
                   .dump()
            << '\n';
  return code(s.code);
}

int write_report(const json& report, const fs::path& path, bool passed) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report: " + path.string());
  out << report.dump(2) << '\n';
  std::cout << report.at("verdicts").dump() << '\n' << "report: " << path.string() << '\n';
  return passed ? code(ExitCode::ok) : code(ExitCode::failure);
}

json inspect(const fs::path& path) {
  const Snapshot snap = read_snapshot(path);
  static const char* names[] = {"u1", "u2", "u3", "theta", "d1", "d2", "d3"};
  json comps = json::object();
  for (std::size_t c = 0; c < snap.components.size(); ++c) {
    const auto& v = snap.components[c];
    double sum = 0.0;
    for (double x : v) sum += x;
    comps[names[c]] = {{"min", *std::min_element(v.begin(), v.end())},
                       {"max", *std::max_element(v.begin(), v.end())},
                       {"mean", sum / static_cast<double>(v.size())}};
  }
  return json{{"path", path.string()},
              {"n", snap.n},
              {"D", snap.half_width},
              {"time", snap.time},
              {"step", snap.step},
              {"components", comps}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral solver for non-isothermal nematic liquid crystal flow"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::vector<std::string> overrides;
  std::optional<long> max_steps;
  std::optional<std::string> snapshot_path;
  std::optional<std::string> report_path;
  std::string experiment;
  std::string inspect_path;

  const auto add_config = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--config", config_path, "Run configuration (JSON)");
    if (required) opt->required();
    cmd->add_option("--override", overrides, "key=value override, dotted keys (repeatable)");
  };

  auto* validate = app.add_subcommand("validate-config", "Check a configuration and print it resolved");
  add_config(validate, true);

  auto* run_cmd = app.add_subcommand("run", "Run a simulation to t_end");
  add_config(run_cmd, true);
  run_cmd->add_option("--max-steps", max_steps, "Stop after this many steps");

  auto* resume_cmd = app.add_subcommand("resume", "Continue a run from a snapshot");
  add_config(resume_cmd, true);
  resume_cmd->add_option("--snapshot", snapshot_path, "Snapshot file (default: latest)");
  resume_cmd->add_option("--max-steps", max_steps, "Stop after this many steps");

  auto* exp_cmd = app.add_subcommand("experiment", "Run a numerical study and write a JSON report");
  exp_cmd->add_option("name", experiment, "mms | uniqueness | refinement")
      ->required()
      ->check(CLI::IsMember({"mms", "uniqueness", "refinement"}));
  add_config(exp_cmd, false);
  exp_cmd->add_option("--report", report_path, "Report path (default: <output root>/<name>_report.json)");

  auto* inspect_cmd = app.add_subcommand("inspect-snapshot", "Print a snapshot header and field ranges");
  inspect_cmd->add_option("path", inspect_path, "Snapshot file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ExitCode::config);
  }

  RunOptions options;
  options.output_root = output_root_from_env();
  options.max_steps = max_steps;

  try {
    if (*validate) {
      std::cout << serialize_config(load(config_path, overrides)).dump(2) << '\n';
      return 0;
    }
    if (*inspect_cmd) {
      std::cout << inspect(inspect_path).dump(2) << '\n';
      return 0;
    }
    const RunConfig config = load(config_path, overrides);
    if (*run_cmd) return finish_run(run(config, options));
    if (*resume_cmd) {
      const fs::path snap = snapshot_path ? fs::path(*snapshot_path) : latest_snapshot(config, options);
      return finish_run(resume(config, snap, options));
    }
    if (*exp_cmd) {
      const fs::path report =
          report_path ? resolve_output(options, *report_path)
                      : options.output_root / (experiment + "_report.json");
      if (experiment == "mms") {
        const auto t = manufactured_convergence(config);
        return write_report(t.to_json(), report, t.spatial_ok && t.temporal_ok);
      }
      if (experiment == "uniqueness") {
        const auto r = uniqueness_experiment(config);
        return write_report(r.to_json(), report, r.passed());
      }
      const auto r = mode_refinement_study(config);
      return write_report(r.to_json(), report, r.monotone && r.decay_ok);
    }
  } catch (const ConfigError& e) {
    std::cerr << json{{"error", "config"}, {"detail", e.what()}}.dump() << '\n';
    return code(ExitCode::config);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "failure"}, {"detail", e.what()}}.dump() << '\n';
    return code(ExitCode::failure);
  }
  return code(ExitCode::failure);
}
