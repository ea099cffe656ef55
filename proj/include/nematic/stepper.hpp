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

#include <functional>
#include <vector>

#include "nematic/coefficients.hpp"
#include "nematic/spectral.hpp"

namespace nematic {

/// Full solution snapshot (u, theta, d, p) at time t. p is diagnostic and is
/// recomputed from the other fields after every step.
struct State {
  VectorField u;
  ScalarField theta;
  DirectorField d;
  ScalarField p;
  double t = 0.0;

  const GridPtr& grid_ptr() const { return u.grid_ptr(); }
  const Grid& grid() const { return u.grid(); }
};

enum class Splitting { imex, fully_explicit };

struct StepConfig {
  double dt = 1e-3;
  double picard_tol = 1e-10;
  int picard_max = 50;
  Splitting splitting = Splitting::imex;
  bool dealias_on = true;
  /// Dealias the cubic Ginzburg-Landau term with the 1/2 rule instead of 2/3.
  bool cubic_half_rule = false;
  /// Use (u.grad f + div(u f)) / 2 instead of u.grad f for advection.
  bool skew_symmetric_advection = false;

  /// Throws InvalidArgument on dt <= 0, tol outside (0, 1), or max < 1.
  void validate() const;
};

/// Manufactured-solution source terms added explicitly to each equation.
struct ForcingTerms {
  VectorField u;
  ScalarField theta;
  VectorField d;
};
using Forcing = std::function<ForcingTerms(double t)>;

/// Advection term of f by the velocity v (physical values), dealiased per config.
ScalarField advect(const RealVector& v, const ScalarField& f, const StepConfig& cfg);

/// One IMEX step of d_t + v.grad d = Lap d - (|d|^2 - 1) d.
DirectorField director_substep(const DirectorField& d_old, const VectorField& v,
                               const StepConfig& cfg, const VectorField* forcing = nullptr);

/// One IMEX step of the heat equation with viscous heating and elastic work.
ScalarField temperature_substep(const ScalarField& theta_old, const VectorField& v,
                                const DirectorField& d, const CoefficientModel& model,
                                const StepConfig& cfg, const ScalarField* forcing = nullptr);

/// One Leray-projected momentum step. Diffusion with the spatial minimum of
/// mu is implicit; the variable-viscosity remainder and Ericksen stress are
/// explicit. In fully-explicit mode all of it is explicit.
VectorField velocity_substep(const VectorField& u_old, const ScalarField& theta,
                             const DirectorField& d, const CoefficientModel& model,
                             const StepConfig& cfg, const VectorField* forcing = nullptr);

/// Pressure from the Poisson equation obtained by taking the divergence of
/// the momentum equation. Zero mean.
ScalarField pressure_solve(const State& state, const CoefficientModel& model,
                           bool dealias_on = true);

struct AdvanceResult {
  State state;
  int iterations = 0;
  std::vector<double> residuals;
};

/// Advances one step by iterating director -> temperature -> velocity
/// substeps until the velocity is a fixed point. Throws PicardFailure with
/// the residual history when picard_max iterations are not enough.
AdvanceResult picard_advance(const State& state, const CoefficientModel& model,
                             const StepConfig& cfg, const Forcing* forcing = nullptr);

/// Physical-space Ericksen tensor (grad d . grad d)_ij = d_i d . d_j d.
RealTensor ericksen_tensor(const DirectorField& d);

/// Symmetric strain E_ij = d_i u_j + d_j u_i from the gradient tensor.
RealTensor strain(const RealTensor& grad_u);

}  // namespace nematic
