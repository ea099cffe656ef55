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

#include "nematic/driver.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "nematic/error.hpp"
#include "nematic/snapshot.hpp"

namespace nematic {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path output_root_from_env() {
  const char* root = std::getenv(kOutputRootEnv);
  return (root && *root) ? fs::path(root) : fs::current_path();
}

fs::path resolve_output(const RunOptions& options, const std::string& path) {
  const fs::path p(path);
  return p.is_absolute() ? p : options.output_root / p;
}

std::string snapshot_name(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%08ld.bin", step);
  return buf;
}

bool state_is_finite(const State& s) {
  const auto finite = [](const ScalarField& f) {
    for (const Complex& c : f.coeffs()) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
    return true;
  };
  for (int a = 0; a < 3; ++a) {
    if (!finite(s.u[a]) || !finite(s.d[a])) return false;
  }
  return finite(s.theta);
}

std::vector<DiagnosticsRecord> read_diagnostics(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open diagnostics: " + path.string());
  std::vector<DiagnosticsRecord> out;
  std::string line;
  long number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      out.push_back(DiagnosticsRecord::from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw IoError(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

fs::path latest_snapshot(const RunConfig& config, const RunOptions& options) {
  const fs::path dir = resolve_output(options, config.output.snapshot_dir);
  if (!fs::is_directory(dir)) throw IoError("no snapshot directory: " + dir.string());
  fs::path best;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("snap_", 0) == 0 && entry.path().extension() == ".bin") {
      if (best.empty() || name > best.filename().string()) best = entry.path();
    }
  }
  if (best.empty()) throw IoError("no snapshots in " + dir.string());
  return best;
}

namespace {

class Runner {
 public:
  Runner(const RunConfig& config, const RunOptions& options)
      : config_(config),
        options_(options),
        err_(options.err ? *options.err : std::cerr),
        model_(make_model(config.model)),
        K_(gronwall_constant_K(model_)),
        cfg_(config.step_config()),
        grid_(Grid::create(config.grid.n, config.grid.D)) {}

  const GridPtr& grid() const { return grid_; }
  const CoefficientModel& model() const { return model_; }

  void open_diagnostics(bool truncate) {
    const fs::path path = resolve_output(options_, config_.output.diagnostics_path);
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    diag_.open(path, truncate ? std::ios::trunc : std::ios::app);
    if (!diag_) throw IoError("cannot open diagnostics for writing: " + path.string());
  }

  void emit(const DiagnosticsRecord& r) {
    diag_ << r.to_json().dump() << '\n';
    diag_.flush();
    if (!diag_) throw IoError("failed writing diagnostics");
  }

  void snapshot(const State& s, long step) {
    const fs::path dir = resolve_output(options_, config_.output.snapshot_dir);
    fs::create_directories(dir);
    write_snapshot(dir / snapshot_name(step), snapshot_from_state(s, step));
  }

  bool snapshot_due(long step) const {
    return config_.output.snapshot_every > 0 && step % config_.output.snapshot_every == 0;
  }

  /// Returns a failure summary if the record breaks the cumulative bounds.
  std::optional<RunSummary> check_principles(const DiagnosticsRecord& r) const {
    const bool d_bad = r.d_max_norm - 1.0 > kCumulativePrincipleTolerance;
    const bool theta_bad = r.theta_min - model_.theta_floor() < -kCumulativePrincipleTolerance;
    if (!d_bad && !theta_bad && r.div_ok) return std::nullopt;
    json report{{"error", "principle_violation"},
                {"step", r.step},
                {"t", r.t},
                {"d_max_norm", r.d_max_norm},
                {"theta_min", r.theta_min},
                {"theta_floor", model_.theta_floor()},
                {"div_residual", r.div_residual}};
    err_ << report.dump() << std::endl;
    return RunSummary{ExitCode::principle, r.step, r.t, "maximum principle or divergence violated"};
  }

  RunSummary march(State state, long step, DiagnosticsRecord prev) {
    const long total = config_.total_steps();
    long executed = 0;
    while (step < total) {
      if (options_.max_steps && executed >= *options_.max_steps) {
        return RunSummary{ExitCode::ok, step, state.t, "stopped after max-steps"};
      }
      AdvanceResult adv;
      try {
        adv = picard_advance(state, model_, cfg_);
      } catch (const PicardFailure& e) {
        // Non-finite residuals (serialized as null) mean the iteration diverged.
        json report{{"error", "picard_failure"},
                    {"step", step + 1},
                    {"t", state.t},
                    {"dt", cfg_.dt},
                    {"residuals", e.residuals()},
                    {"guidance", "halve stepping.dt and rerun"},
                    {"F_trend", f_trend_}};
        err_ << report.dump() << std::endl;
        return RunSummary{ExitCode::picard, step, state.t, e.what()};
      }
      ++step;
      ++executed;
      if (!state_is_finite(adv.state)) return nan_failure(step, adv.state.t);

      DiagnosticsRecord rec;
      try {
        rec = make_record(adv.state, model_, K_, step, adv.iterations, &state, &prev, cfg_.dt);
      } catch (const TemperatureBelowFloor& e) {
        json report{{"error", "principle_violation"}, {"step", step}, {"detail", e.what()}};
        err_ << report.dump() << std::endl;
        return RunSummary{ExitCode::principle, step, adv.state.t, e.what()};
      }
      emit(rec);
      track(rec);
      if (auto bad = check_principles(rec)) return *bad;

      state = std::move(adv.state);
      if (snapshot_due(step)) {
        snapshot(state, step);
        state = canonicalize(state, step);
      }
      prev = rec;
    }
    return RunSummary{ExitCode::ok, step, state.t, "completed"};
  }

  RunSummary start(State state) {
    open_diagnostics(true);
    if (!state_is_finite(state)) return nan_failure(0, state.t);
    state.p = pressure_solve(state, model_, cfg_.dealias_on);
    DiagnosticsRecord rec;
    try {
      rec = make_record(state, model_, K_, 0, 0);
    } catch (const TemperatureBelowFloor& e) {
      err_ << json{{"error", "principle_violation"}, {"step", 0}, {"detail", e.what()}}.dump()
           << std::endl;
      return RunSummary{ExitCode::principle, 0, state.t, e.what()};
    }
    emit(rec);
    track(rec);
    if (auto bad = check_principles(rec)) return *bad;
    if (snapshot_due(0)) {
      snapshot(state, 0);
      state = canonicalize(state, 0);
    }
    return march(std::move(state), 0, rec);
  }

  RunSummary restart(const fs::path& snapshot_path) {
    const Snapshot snap = read_snapshot(snapshot_path);
    State state = state_from_snapshot(snap, grid_);
    state.p = pressure_solve(state, model_, cfg_.dealias_on);

    const fs::path diag_path = resolve_output(options_, config_.output.diagnostics_path);
    std::vector<DiagnosticsRecord> kept;
    for (auto& r : read_diagnostics(diag_path)) {
      if (r.step <= snap.step) kept.push_back(std::move(r));
    }
    if (kept.empty() || kept.back().step != snap.step) {
      throw IoError("diagnostics stream has no record for snapshot step " +
                    std::to_string(snap.step));
    }
    open_diagnostics(true);
    for (const auto& r : kept) {
      emit(r);
      track(r);
    }
    return march(std::move(state), snap.step, kept.back());
  }

 private:
  RunSummary nan_failure(long step, double t) {
    err_ << json{{"error", "nan_detected"}, {"step", step}, {"t", t}}.dump() << std::endl;
    return RunSummary{ExitCode::nan, step, t, "non-finite value at step " + std::to_string(step)};
  }

  void track(const DiagnosticsRecord& r) {
    constexpr std::size_t kTrend = 10;
    f_trend_.push_back(r.F_functional);
    if (f_trend_.size() > kTrend) f_trend_.erase(f_trend_.begin());
  }

  const RunConfig& config_;
  const RunOptions& options_;
  std::ostream& err_;
  CoefficientModel model_;
  double K_;
  StepConfig cfg_;
  GridPtr grid_;
  std::ofstream diag_;
  std::vector<double> f_trend_;
};

}  // namespace

RunSummary run(const RunConfig& config, const RunOptions& options) {
  Runner runner(config, options);
  return runner.start(make_initial_data(config, runner.grid()));
}

RunSummary resume(const RunConfig& config, const fs::path& snapshot, const RunOptions& options) {
  Runner runner(config, options);
  return runner.restart(snapshot);
}

}  // namespace nematic
