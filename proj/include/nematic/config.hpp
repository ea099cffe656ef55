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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "nematic/coefficients.hpp"
#include "nematic/stepper.hpp"

namespace nematic {

struct GridConfig {
  int n = 16;
  double D = 3.14159265358979323846;
  bool operator==(const GridConfig&) const = default;
};

/// "builtin": lambda_bar, a, mu_lo, mu_hi. "constant": mu, lambda.
struct ModelConfig {
  std::string name = "builtin";
  nlohmann::json params = nlohmann::json::object();
  double theta_floor = 1.0;
  bool operator==(const ModelConfig&) const = default;
};

struct PresetParams {
  double amplitude = 0.5;  // velocity scale
  int alpha = 1;           // director twist wavenumber (shear-twist)
  double bump = 0.5;       // temperature excess above the floor
  int max_mode = 3;        // random-smooth: largest |m_j| that is populated
  double width = 1e6;      // random-smooth: Gaussian spectral width in modes
  bool operator==(const PresetParams&) const = default;
};

struct PerturbationConfig {
  double delta = 0.0;
  std::uint64_t seed = 7;
  bool operator==(const PerturbationConfig&) const = default;
};

struct InitialDataConfig {
  std::string preset = "rest";
  std::optional<std::string> snapshot;  // overrides the preset when set
  std::uint64_t seed = 42;
  PresetParams params;
  PerturbationConfig perturbation;
  bool operator==(const InitialDataConfig&) const = default;
};

struct SteppingConfig {
  double dt = 1e-3;
  double t_end = 0.1;
  Splitting splitting = Splitting::imex;
  double picard_tol = 1e-10;
  int picard_max = 50;
  bool dealias_on = true;
  bool cubic_half_rule = false;
  bool skew_symmetric_advection = false;
  bool operator==(const SteppingConfig&) const = default;
};

struct OutputConfig {
  long snapshot_every = 100;  // 0 disables snapshots
  std::string diagnostics_path = "diagnostics.jsonl";
  std::string snapshot_dir = "snapshots";
  bool operator==(const OutputConfig&) const = default;
};

struct MmsConfig {
  std::vector<int> resolutions{8, 16, 32};
  std::vector<double> dts{2.5e-3, 1.25e-3, 6.25e-4};
  // Small enough that the first-order time error sits well below the 8^3
  // spatial error.
  double spatial_dt = 1e-4;
  double t_end = 0.01;
  int temporal_n = 32;
  bool operator==(const MmsConfig&) const = default;
};

struct UniquenessConfig {
  double delta = 1e-6;
  double t_end = 0.1;
  bool operator==(const UniquenessConfig&) const = default;
};

struct RefinementConfig {
  int n = 48;
  std::vector<int> cutoffs{4, 8, 16};
  double t_end = 0.05;
  bool operator==(const RefinementConfig&) const = default;
};

struct ExperimentsConfig {
  MmsConfig mms;
  UniquenessConfig uniqueness;
  RefinementConfig refinement;
  bool operator==(const ExperimentsConfig&) const = default;
};

struct RunConfig {
  GridConfig grid;
  ModelConfig model;
  InitialDataConfig initial_data;
  SteppingConfig stepping;
  OutputConfig output;
  ExperimentsConfig experiments;

  /// Number of steps to reach t_end, rounded to nearest.
  long total_steps() const;
  StepConfig step_config() const;
  bool operator==(const RunConfig&) const = default;
};

/// Validates against the strict schema and the invariants; throws ConfigError
/// naming the offending key.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path,
                      const std::vector<std::string>& overrides = {});
nlohmann::json serialize_config(const RunConfig& config);

/// Applies "a.b.c=value" to a raw config document. The value is parsed as
/// JSON when possible and taken as a string otherwise.
void apply_override(nlohmann::json& doc, const std::string& assignment);

CoefficientModel make_model(const ModelConfig& config);

/// Preset initial data, optionally perturbed per initial_data.perturbation.
State make_initial_data(const RunConfig& config, const GridPtr& grid);
State make_preset(const RunConfig& config, const GridPtr& grid);

/// Seeded random field with modes |m_j| <= max_mode weighted by
/// exp(-|m|^2 / (2 width^2)); zero mean, unit L2 norm.
ScalarField smooth_random_field(const GridPtr& grid, std::uint64_t seed, int max_mode,
                                double width);

struct Perturbation {
  VectorField u;      // solenoidal, unit norm
  ScalarField theta;  // zero mean, unit norm
  VectorField d;      // unit norm
};

/// Fixed-seed smooth perturbation on modes |m_j| <= 2.
Perturbation smooth_perturbation(const GridPtr& grid, std::uint64_t seed);

/// state + delta * perturbation, with d renormalized pointwise where |d| > 1.
State perturb(const State& state, const Perturbation& pert, double delta);

}  // namespace nematic
