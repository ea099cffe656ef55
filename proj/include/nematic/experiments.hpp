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

#include <vector>

#include "json.hpp"

#include "nematic/config.hpp"
#include "nematic/coefficients.hpp"
#include "nematic/stepper.hpp"

namespace nematic {

// --- manufactured solutions ---

struct ConvergenceRow {
  int n = 0;
  double dt = 0.0;
  long steps = 0;
  double error = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> spatial;   // fixed dt, increasing n
  std::vector<ConvergenceRow> temporal;  // fixed n, decreasing dt
  double spatial_drop = 0.0;             // error(first n) / error(last n)
  double temporal_order = 0.0;           // least-squares slope of log error vs log dt
  bool spatial_ok = false;               // drop >= 100
  bool temporal_ok = false;              // order within [0.8, 1.2]
  nlohmann::json to_json() const;
};

/// L2 error at t_end of one forced run started from the exact solution.
double manufactured_error(int n, double half_width, double dt, long steps,
                          const CoefficientModel& model, const StepConfig& base,
                          bool trivial = false);

ConvergenceTable manufactured_convergence(const std::vector<int>& resolutions, double spatial_dt,
                                          int temporal_n, const std::vector<double>& dts,
                                          double t_end, double half_width,
                                          const CoefficientModel& model, const StepConfig& base);
ConvergenceTable manufactured_convergence(const RunConfig& config);

// --- uniqueness / stability ---

struct StabilityReport {
  double delta = 0.0;
  double dt = 0.0;
  long steps = 0;
  bool replay_identical = false;    // delta = 0 twin runs: diagnostics bitwise equal
  bool pressure_only_identical = false;  // perturbing only p leaves (u, theta, d) bitwise equal
  std::vector<double> times;
  std::vector<double> N;            // ||u_bar||^2 + ||grad d_bar||^2 + ||theta_bar||^2, delta run
  std::vector<double> N_half;       // same for delta / 2
  double N0 = 0.0;
  double sup_N = 0.0;
  double sup_N_half = 0.0;
  double delta_ratio = 0.0;         // sup_N / sup_N_half, ideally 4
  double A = 0.0;
  double B = 0.0;
  bool envelope_ok = false;         // A, B finite and sup N <= A e^{Bt} N0
  bool scaling_ok = false;          // delta_ratio within a factor 1.5 of 4
  double mean_d_initial = 0.0;      // |d_bar| of the mean-only director perturbation
  double mean_d_final = 0.0;
  bool mean_d_decays = false;
  bool passed() const {
    return replay_identical && pressure_only_identical && envelope_ok && scaling_ok;
  }
  nlohmann::json to_json() const;
};

/// Fits N(t) <= A e^{Bt} N(0) with B the largest per-step growth rate.
void fit_gronwall(std::span<const double> times, std::span<const double> N, double& A, double& B);

StabilityReport uniqueness_experiment(const State& state0, double delta,
                                      const CoefficientModel& model, const StepConfig& cfg,
                                      double t_end, std::uint64_t seed = 7);
StabilityReport uniqueness_experiment(const RunConfig& config);

// --- Galerkin mode refinement ---

struct RefinementTable {
  int n = 0;
  std::vector<int> cutoffs;
  std::vector<double> max_h1_difference;  // vs the largest cutoff, max over steps
  std::vector<double> max_energy_above;   // energy above the cutoff, max over steps
  std::vector<double> decay_ratios;       // difference(m_i) / difference(m_{i+1})
  bool monotone = false;
  bool decay_ok = false;  // every ratio >= 10
  nlohmann::json to_json() const;
};

RefinementTable mode_refinement_study(const State& state0, const std::vector<int>& cutoffs,
                                      const CoefficientModel& model, const StepConfig& cfg,
                                      double t_end);
RefinementTable mode_refinement_study(const RunConfig& config);

}  // namespace nematic
