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

#include "nematic/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <string>

#include "json.hpp"

#include "nematic/error.hpp"

namespace nematic {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

Snapshot snapshot_from_state(const State& state, long step) {
  const Grid& g = state.grid();
  Snapshot snap;
  snap.n = g.n();
  snap.half_width = g.half_width();
  snap.time = state.t;
  snap.step = step;
  const RealVector u = state.u.to_physical();
  const RealVector d = state.d.to_physical();
  snap.components = {u[0], u[1], u[2], state.theta.to_physical(), d[0], d[1], d[2]};
  return snap;
}

State state_from_snapshot(const Snapshot& snap, const GridPtr& grid) {
  if (grid->n() != snap.n || grid->half_width() != snap.half_width) {
    throw InvalidArgument("snapshot grid (n = " + std::to_string(snap.n) +
                          ") does not match the configured grid");
  }
  if (snap.components.size() != kSnapshotComponents) {
    throw InvalidArgument("snapshot must hold 7 components");
  }
  State s;
  s.u = VectorField::from_physical(grid, {snap.components[0], snap.components[1],
                                          snap.components[2]});
  s.theta = ScalarField::from_physical(grid, snap.components[3]);
  s.d = VectorField::from_physical(grid, {snap.components[4], snap.components[5],
                                          snap.components[6]});
  s.t = snap.time;
  return s;
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open snapshot for writing: " + path.string());
  const nlohmann::json header{{"n", snap.n},
                              {"D", snap.half_width},
                              {"component_count", snap.components.size()},
                              {"time", snap.time},
                              {"step", snap.step}};
  out << header.dump() << '\n';
  for (const auto& c : snap.components) {
    out.write(reinterpret_cast<const char*>(c.data()),
              static_cast<std::streamsize>(c.size() * sizeof(double)));
  }
  if (!out) throw IoError("failed writing snapshot: " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError("snapshot has no header: " + path.string());
  Snapshot snap;
  std::size_t count = 0;
  try {
    const auto header = nlohmann::json::parse(line);
    snap.n = header.at("n").get<int>();
    snap.half_width = header.at("D").get<double>();
    snap.time = header.at("time").get<double>();
    snap.step = header.at("step").get<long>();
    count = header.at("component_count").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad snapshot header in " + path.string() + ": " + e.what());
  }
  if (snap.n < 8 || count != kSnapshotComponents) {
    throw IoError("unsupported snapshot layout in " + path.string());
  }
  const std::size_t size = static_cast<std::size_t>(snap.n) * snap.n * snap.n;
  snap.components.assign(count, RealArray(size));
  for (auto& c : snap.components) {
    in.read(reinterpret_cast<char*>(c.data()), static_cast<std::streamsize>(size * sizeof(double)));
    if (!in) throw IoError("truncated snapshot: " + path.string());
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw IoError("trailing bytes in snapshot: " + path.string());
  }
  return snap;
}

State canonicalize(const State& state, long step) {
  State s = state_from_snapshot(snapshot_from_state(state, step), state.grid_ptr());
  s.p = state.p;
  return s;
}

}  // namespace nematic
