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

#include <array>

#include "nematic/coefficients.hpp"
#include "nematic/stepper.hpp"

namespace nematic {

/// Value, gradient and Hessian of a scalar function of x, propagated through
/// arithmetic and elementary functions.
struct Jet {
  double v = 0.0;
  std::array<double, 3> g{};
  std::array<std::array<double, 3>, 3> h{};

  static Jet constant(double c) { return Jet{c, {}, {}}; }
  /// The coordinate x_axis scaled by s.
  static Jet coordinate(int axis, double x, double s);
  double laplacian() const { return h[0][0] + h[1][1] + h[2][2]; }
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(double s, const Jet& a);
Jet operator+(double s, const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet exp(const Jet& a);

/// Smooth, periodic, non-band-limited exact solution with the analytic
/// source terms that make it solve the forced system. The trivial variant is
/// the rest state (u = 0, constant theta, d = e1) with zero forcing.
class ManufacturedSolution {
 public:
  ManufacturedSolution(const CoefficientModel& model, bool trivial = false);

  /// Exact fields at time t sampled on the grid.
  State exact(const GridPtr& grid, double t) const;
  /// Source terms at time t sampled on the grid.
  ForcingTerms forcing(const GridPtr& grid, double t) const;
  /// sqrt(|u - u*|^2 + |theta - theta*|^2 + |d - d*|^2) in L2 at state.t.
  double error(const State& state) const;

 private:
  struct Point {
    std::array<Jet, 3> u, d;
    Jet theta;
    std::array<double, 3> u_t, d_t;
    double theta_t;
  };
  Point evaluate(const std::array<double, 3>& x, double kappa, double t) const;

  const CoefficientModel& model_;
  bool trivial_;
};

}  // namespace nematic
