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

#include <span>
#include <vector>

#include "nematic/coefficients.hpp"
#include "nematic/spectral.hpp"

namespace nematic {

/// Coefficients of the finite-dimensional velocity ODE
///   dg_k/dt = -sum_i A[k][i] g_i - sum_ij e[k][i][j] g_i g_j + f[k]
/// for u = sum_i g_i Phi^i over an L2-orthonormal solenoidal basis.
struct GalerkinSystem {
  std::size_t m = 0;
  std::vector<double> a;  // m*m, a[k*m + i] = int mu (grad Phi^i + grad^T Phi^i) : grad Phi^k
  std::vector<double> e;  // m^3, e[(k*m + i)*m + j] = int Phi^i . grad Phi^j . Phi^k
  std::vector<double> f;  // m,   f[k] = int lambda (grad d . grad d) : grad Phi^k

  double A(std::size_t k, std::size_t i) const { return a[k * m + i]; }
  double E(std::size_t k, std::size_t i, std::size_t j) const { return e[(k * m + i) * m + j]; }

  /// Right-hand side of the ODE at coefficient vector g.
  std::vector<double> rhs(std::span<const double> g) const;
  /// sum_ijk e_ij^k g_i g_j g_k; vanishes for divergence-free bases.
  double trilinear(std::span<const double> g) const;
};

/// Assembles the system by grid quadrature. Throws InvalidArgument if the
/// basis is not orthonormal to 1e-10.
GalerkinSystem galerkin_ode_coefficients(std::span<const VectorField> basis,
                                         const ScalarField& theta, const DirectorField& d,
                                         const CoefficientModel& model);

/// Coefficients (u, Phi^k) of a field against the basis.
std::vector<double> project_onto(std::span<const VectorField> basis, const VectorField& u);

/// sum_i g_i Phi^i.
VectorField synthesize(std::span<const VectorField> basis, std::span<const double> g);

}  // namespace nematic
