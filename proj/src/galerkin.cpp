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

#include "nematic/galerkin.hpp"

#include <cmath>
#include <string>

#include "nematic/error.hpp"
#include "nematic/stepper.hpp"

namespace nematic {

std::vector<double> GalerkinSystem::rhs(std::span<const double> g) const {
  if (g.size() != m) throw InvalidArgument("GalerkinSystem::rhs: size mismatch");
  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    double s = f[k];
    for (std::size_t i = 0; i < m; ++i) {
      s -= A(k, i) * g[i];
      for (std::size_t j = 0; j < m; ++j) s -= E(k, i, j) * g[i] * g[j];
    }
    out[k] = s;
  }
  return out;
}

double GalerkinSystem::trilinear(std::span<const double> g) const {
  if (g.size() != m) throw InvalidArgument("GalerkinSystem::trilinear: size mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) s += E(k, i, j) * g[i] * g[j] * g[k];
    }
  }
  return s;
}

GalerkinSystem galerkin_ode_coefficients(std::span<const VectorField> basis,
                                         const ScalarField& theta, const DirectorField& d,
                                         const CoefficientModel& model) {
  const std::size_t m = basis.size();
  if (m == 0) throw InvalidArgument("galerkin_ode_coefficients: empty basis");
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const double ip = inner_product(basis[i], basis[j]);
      if (std::abs(ip - (i == j ? 1.0 : 0.0)) > 1e-10) {
        throw InvalidArgument("galerkin_ode_coefficients: basis not orthonormal at (" +
                              std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
  const Grid& g = theta.grid();
  const std::size_t size = g.physical_size();
  const double w = g.cell_volume();

  std::vector<RealVector> phi(m);
  std::vector<RealTensor> grad(m);
  for (std::size_t i = 0; i < m; ++i) {
    phi[i] = basis[i].to_physical();
    grad[i] = gradient_physical(basis[i]);
  }
  const RealArray th = theta.to_physical();
  const RealTensor ericksen = ericksen_tensor(d);

  GalerkinSystem sys;
  sys.m = m;
  sys.a.assign(m * m, 0.0);
  sys.e.assign(m * m * m, 0.0);
  sys.f.assign(m, 0.0);

  for (std::size_t x = 0; x < size; ++x) {
    const double mu = model.mu(th[x]);
    const double lam = model.lambda(th[x]);
    for (std::size_t k = 0; k < m; ++k) {
      const auto& gk = grad[k];
      double fk = 0.0;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) fk += ericksen[a][b][x] * gk[a][b][x];
      }
      sys.f[k] += w * lam * fk;
      for (std::size_t i = 0; i < m; ++i) {
        const auto& gi = grad[i];
        double aik = 0.0;
        for (int a = 0; a < 3; ++a) {
          for (int b = 0; b < 3; ++b) aik += (gi[a][b][x] + gi[b][a][x]) * gk[a][b][x];
        }
        sys.a[k * m + i] += w * mu * aik;
        for (std::size_t j = 0; j < m; ++j) {
          // Phi^i_a d_a Phi^j_b Phi^k_b
          double eijk = 0.0;
          for (int a = 0; a < 3; ++a) {
            double inner = 0.0;
            for (int b = 0; b < 3; ++b) inner += grad[j][a][b][x] * phi[k][b][x];
            eijk += phi[i][a][x] * inner;
          }
          sys.e[(k * m + i) * m + j] += w * eijk;
        }
      }
    }
  }
  return sys;
}

std::vector<double> project_onto(std::span<const VectorField> basis, const VectorField& u) {
  std::vector<double> g(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) g[i] = inner_product(u, basis[i]);
  return g;
}

VectorField synthesize(std::span<const VectorField> basis, std::span<const double> g) {
  if (basis.empty() || basis.size() != g.size()) {
    throw InvalidArgument("synthesize: size mismatch");
  }
  VectorField u(basis[0].grid_ptr());
  for (std::size_t i = 0; i < basis.size(); ++i) u.axpy(g[i], basis[i]);
  return u;
}

}  // namespace nematic
