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
#include <vector>

#include "nematic/spectral.hpp"
#include "nematic/stepper.hpp"

namespace nematic {

/// Physical-space image of (u, theta, d): components u1 u2 u3 theta d1 d2 d3,
/// each n^3 values, x-fastest.
struct Snapshot {
  int n = 0;
  double half_width = 0.0;
  double time = 0.0;
  long step = 0;
  std::vector<RealArray> components;
};

inline constexpr int kSnapshotComponents = 7;

Snapshot snapshot_from_state(const State& state, long step);
/// Rebuilds (u, theta, d) on `grid`; p is left empty for the caller to solve.
State state_from_snapshot(const Snapshot& snap, const GridPtr& grid);

/// One JSON header line {n, D, component_count, time, step}, then raw
/// little-endian doubles.
void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Rounds the state through its physical image so that a run continuing
/// from memory and one resuming from disk see identical data.
State canonicalize(const State& state, long step);

}  // namespace nematic
