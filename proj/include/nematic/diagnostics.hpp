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

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "nematic/coefficients.hpp"
#include "nematic/stepper.hpp"

namespace nematic {

/// Pointwise tolerance for the discrete maximum principles.
inline constexpr double kPrincipleTolerance = 1e-8;
/// Cumulative tolerance over a run.
inline constexpr double kCumulativePrincipleTolerance = 1e-6;
inline constexpr double kDivergenceTolerance = 1e-10;

struct EnergyComponents {
  double kinetic = 0.0;  // (K+1)/2 |u|^2
  double thermal = 0.0;  // (K+1) theta - Lambda(theta)
  double elastic = 0.0;  // |grad d|^2 / 2
  double penalty = 0.0;  // W(d) / 4
  double total() const { return kinetic + thermal + elastic + penalty; }
};

/// Integrated energy density of the basic energy law. Throws
/// TemperatureBelowFloor if theta undershoots the floor by more than the
/// principle tolerance.
EnergyComponents energy_components(const State& state, const CoefficientModel& model, double K);
double total_energy(const State& state, const CoefficientModel& model, double K);

/// Integrated dissipation rate; nonnegative.
double dissipation(const State& state, const CoefficientModel& model);

struct DiagnosticsRecord {
  long step = 0;
  double t = 0.0;
  double total_energy = 0.0;
  double dissipation = 0.0;
  double kinetic = 0.0;
  double thermal = 0.0;
  double elastic = 0.0;
  double penalty = 0.0;
  double d_max_norm = 0.0;
  double theta_min = 0.0;
  double div_residual = 0.0;
  double F_functional = 1.0;
  double H_functional = 0.0;
  double pressure_h1 = 0.0;
  double energy_residual = 0.0;  // zero on the first record
  int picard_iters = 0;
  bool d_ok = true;
  bool theta_ok = true;
  bool div_ok = true;

  nlohmann::json to_json() const;
  static DiagnosticsRecord from_json(const nlohmann::json& j);
};

/// (E_next - E_prev)/dt + (D_prev + D_next)/2; zero for an exact energy law.
double energy_balance_residual(const DiagnosticsRecord& prev, const DiagnosticsRecord& next,
                               double dt);

struct PrincipleReport {
  bool d_ok = true;
  bool theta_ok = true;
  bool div_ok = true;
  double d_margin = 0.0;      // max|d| - 1
  double theta_margin = 0.0;  // min theta - floor
  double div_residual = 0.0;
  bool all_ok() const { return d_ok && theta_ok && div_ok; }
};

PrincipleReport principle_checks(const State& state, double theta_floor,
                                 double tol = kPrincipleTolerance);

struct HighOrderFunctionals {
  double F = 1.0;
  double H = 0.0;
};

/// F = |grad u|_{H1}^2 + |grad theta|_{H1}^2 + |Lap d|_{H1}^2 + 1 and
/// H = |Lap u|_{H1}^2 + |Lap theta|_{H1}^2 + |grad Lap d|^2 + |Lap d_t|^2, with
/// d_t the committed increment (d - d_prev)/dt. Without d_prev the last term is 0.
HighOrderFunctionals high_order_functionals(const State& state,
                                            const DirectorField* d_prev = nullptr,
                                            double dt = 0.0);

struct BlowupEstimate {
  double t_star = std::numeric_limits<double>::infinity();
  double c_fit = 0.0;
};

/// Fits C in dF/dt <= C F^4 (on max(F'/F^4, 0)) and returns T* = 1/(3 C F(0)^3).
/// Needs at least 10 samples; T* is +infinity when F never grows.
BlowupEstimate blowup_monitor(std::span<const double> times, std::span<const double> F);

/// Complete per-step record. `prev` supplies the previous state and record
/// for the increment and energy-law terms.
DiagnosticsRecord make_record(const State& state, const CoefficientModel& model, double K,
                              long step, int picard_iters, const State* prev_state = nullptr,
                              const DiagnosticsRecord* prev_record = nullptr, double dt = 0.0);

}  // namespace nematic
