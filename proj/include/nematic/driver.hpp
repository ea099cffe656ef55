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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nematic/config.hpp"
#include "nematic/diagnostics.hpp"

namespace nematic {

/// Process exit codes of the command-line tool.
enum class ExitCode : int {
  ok = 0,
  failure = 1,
  config = 2,
  picard = 10,
  principle = 11,
  nan = 12,
};

inline constexpr const char* kOutputRootEnv = "NEMATIC_OUTPUT_ROOT";

/// Value of NEMATIC_OUTPUT_ROOT, or the current directory.
std::filesystem::path output_root_from_env();

struct RunOptions {
  std::filesystem::path output_root = ".";
  /// Stop after this many steps in this invocation (an interruption).
  std::optional<long> max_steps;
  /// Receives machine-readable failure reports; defaults to std::cerr.
  std::ostream* err = nullptr;
};

struct RunSummary {
  ExitCode code = ExitCode::ok;
  long last_step = 0;
  double t = 0.0;
  std::string message;
};

/// Relative paths are taken below the output root.
std::filesystem::path resolve_output(const RunOptions& options, const std::string& path);

/// Steps from the configured initial data to t_end, writing one diagnostics
/// line per step (including step 0) and periodic snapshots.
RunSummary run(const RunConfig& config, const RunOptions& options);

/// Continues a run from a snapshot. Diagnostics lines after the snapshot step
/// are dropped before appending, so the stream matches an uninterrupted run.
RunSummary resume(const RunConfig& config, const std::filesystem::path& snapshot,
                  const RunOptions& options);

/// Snapshot with the largest step number in the configured directory.
std::filesystem::path latest_snapshot(const RunConfig& config, const RunOptions& options);
std::string snapshot_name(long step);

/// Parses a diagnostics stream; throws IoError on a malformed line.
std::vector<DiagnosticsRecord> read_diagnostics(const std::filesystem::path& path);

/// False if any coefficient of u, theta or d is not finite.
bool state_is_finite(const State& state);

}  // namespace nematic
