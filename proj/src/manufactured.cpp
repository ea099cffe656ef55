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

#include "nematic/manufactured.hpp"

#include <cmath>

namespace nematic {

Jet Jet::coordinate(int axis, double x, double s) {
  Jet j;
  j.v = s * x;
  j.g[axis] = s;
  return j;
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet r;
  r.v = a.v + b.v;
  for (int i = 0; i < 3; ++i) {
    r.g[i] = a.g[i] + b.g[i];
    for (int j = 0; j < 3; ++j) r.h[i][j] = a.h[i][j] + b.h[i][j];
  }
  return r;
}

Jet operator-(const Jet& a, const Jet& b) { return a + (-1.0) * b; }

Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  r.v = a.v * b.v;
  for (int i = 0; i < 3; ++i) {
    r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    for (int j = 0; j < 3; ++j) {
      r.h[i][j] = a.h[i][j] * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] + a.v * b.h[i][j];
    }
  }
  return r;
}

Jet operator*(double s, const Jet& a) {
  Jet r = a;
  r.v *= s;
  for (int i = 0; i < 3; ++i) {
    r.g[i] *= s;
    for (int j = 0; j < 3; ++j) r.h[i][j] *= s;
  }
  return r;
}

Jet operator+(double s, const Jet& a) {
  Jet r = a;
  r.v += s;
  return r;
}

namespace {

/// phi(a) given phi, phi', phi'' at a.v.
Jet chain(const Jet& a, double f0, double f1, double f2) {
  Jet r;
  r.v = f0;
  for (int i = 0; i < 3; ++i) {
    r.g[i] = f1 * a.g[i];
    for (int j = 0; j < 3; ++j) r.h[i][j] = f2 * a.g[i] * a.g[j] + f1 * a.h[i][j];
  }
  return r;
}

}  // namespace

Jet sin(const Jet& a) { return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
Jet cos(const Jet& a) { return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
Jet exp(const Jet& a) {
  const double e = std::exp(a.v);
  return chain(a, e, e, e);
}

ManufacturedSolution::ManufacturedSolution(const CoefficientModel& model, bool trivial)
    : model_(model), trivial_(trivial) {}

ManufacturedSolution::Point ManufacturedSolution::evaluate(const std::array<double, 3>& x,
                                                           double kappa, double t) const {
  Point p;
  const double floor = model_.theta_floor();
  if (trivial_) {
    for (int a = 0; a < 3; ++a) {
      p.u[a] = Jet::constant(0.0);
      p.d[a] = Jet::constant(a == 0 ? 1.0 : 0.0);
      p.u_t[a] = p.d_t[a] = 0.0;
    }
    p.theta = Jet::constant(floor + 0.5);
    p.theta_t = 0.0;
    return p;
  }
  const Jet x1 = Jet::coordinate(0, x[0], kappa);
  const Jet x2 = Jet::coordinate(1, x[1], kappa);
  const Jet x3 = Jet::coordinate(2, x[2], kappa);

  // Each velocity component is independent of its own coordinate, so u is
  // solenoidal exactly and on every grid.
  const double a = 0.4 * std::cos(2.0 * t);
  const double a_t = -0.8 * std::sin(2.0 * t);
  const std::array<Jet, 3> shape{exp(sin(x2)) * cos(x3), exp(cos(x3)) * sin(x1),
                                 exp(sin(x1)) * cos(x2)};
  for (int i = 0; i < 3; ++i) {
    p.u[i] = a * shape[i];
    p.u_t[i] = a_t * shape[i].v;
  }

  const double b = 1.0 + std::sin(3.0 * t);
  const double b_t = 3.0 * std::cos(3.0 * t);
  const Jet bump = exp(sin(x1) * cos(x3) + 0.5 * cos(x2));
  p.theta = (floor + 0.5) + (0.25 * b) * bump;
  p.theta_t = 0.25 * b_t * bump.v;

  const double c = 0.9 + 0.05 * std::sin(2.0 * t);
  const double c_t = 0.1 * std::cos(2.0 * t);
  const Jet phi = 0.5 * sin(x1) + 0.4 * cos(x2 + x3);
  const Jet psi = 0.3 * sin(x3 + x1);
  const std::array<Jet, 3> dir{cos(phi) * cos(psi), sin(phi) * cos(psi), sin(psi)};
  for (int i = 0; i < 3; ++i) {
    p.d[i] = c * dir[i];
    p.d_t[i] = c_t * dir[i].v;
  }
  return p;
}

State ManufacturedSolution::exact(const GridPtr& grid, double t) const {
  const Grid& g = *grid;
  const int n = g.n();
  const double kappa = std::numbers::pi / g.half_width();
  const std::size_t size = g.physical_size();
  RealVector u, d;
  for (int a = 0; a < 3; ++a) {
    u[a].resize(size);
    d[a].resize(size);
  }
  RealArray theta(size);
  std::size_t i = 0;
  for (int z = 0; z < n; ++z) {
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x, ++i) {
        const Point p = evaluate({g.coordinate(x), g.coordinate(y), g.coordinate(z)}, kappa, t);
        for (int a = 0; a < 3; ++a) {
          u[a][i] = p.u[a].v;
          d[a][i] = p.d[a].v;
        }
        theta[i] = p.theta.v;
      }
    }
  }
  State s;
  s.u = VectorField::from_physical(grid, u);
  s.theta = ScalarField::from_physical(grid, theta);
  s.d = VectorField::from_physical(grid, d);
  s.t = t;
  return s;
}

ForcingTerms ManufacturedSolution::forcing(const GridPtr& grid, double t) const {
  const Grid& g = *grid;
  const int n = g.n();
  const double kappa = std::numbers::pi / g.half_width();
  const std::size_t size = g.physical_size();
  RealVector fu, fd;
  for (int a = 0; a < 3; ++a) {
    fu[a].resize(size);
    fd[a].resize(size);
  }
  RealArray ftheta(size);

  std::size_t idx = 0;
  for (int z = 0; z < n; ++z) {
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x, ++idx) {
        const Point p = evaluate({g.coordinate(x), g.coordinate(y), g.coordinate(z)}, kappa, t);
        const auto& u = p.u;
        const auto& d = p.d;
        const double th = p.theta.v;
        const double mu = model_.mu(th), mu1 = model_.mu_d1(th);
        const double lam = model_.lambda(th), lam1 = model_.lambda_d1(th);

        // G_ij = d_i u_j, E = G + G^T, M_ij = d_i d . d_j d.
        double G[3][3], E[3][3], M[3][3];
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) G[i][j] = u[j].g[i];
        }
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            E[i][j] = G[i][j] + G[j][i];
            M[i][j] = 0.0;
            for (int a = 0; a < 3; ++a) M[i][j] += d[a].g[i] * d[a].g[j];
          }
        }

        // Director: d_t + u.grad d - Lap d + (|d|^2 - 1) d.
        double dd = 0.0;
        for (int a = 0; a < 3; ++a) dd += d[a].v * d[a].v;
        for (int a = 0; a < 3; ++a) {
          double adv = 0.0;
          for (int i = 0; i < 3; ++i) adv += u[i].v * d[a].g[i];
          fd[a][idx] = p.d_t[a] + adv - d[a].laplacian() + (dd - 1.0) * d[a].v;
        }

        // Temperature: theta_t + u.grad theta - Lap theta - mu/2 |E|^2 + lambda M:G.
        double adv = 0.0, ee = 0.0, work = 0.0;
        for (int i = 0; i < 3; ++i) {
          adv += u[i].v * p.theta.g[i];
          for (int j = 0; j < 3; ++j) {
            ee += E[i][j] * E[i][j];
            work += M[i][j] * G[i][j];
          }
        }
        ftheta[idx] = p.theta_t + adv - p.theta.laplacian() - 0.5 * mu * ee + lam * work;

        // Momentum: u_t + u.grad u - div(mu E - lambda M). The gradient part
        // of the source is removed by the projection, so no pressure appears.
        for (int j = 0; j < 3; ++j) {
          double conv = 0.0, div_stress = 0.0;
          for (int i = 0; i < 3; ++i) {
            conv += u[i].v * u[j].g[i];
            const double dE = u[j].h[i][i] + u[i].h[i][j];  // d_i E_ij
            double dM = 0.0;                                 // d_i M_ij
            for (int a = 0; a < 3; ++a) {
              dM += d[a].h[i][i] * d[a].g[j] + d[a].g[i] * d[a].h[i][j];
            }
            div_stress += mu1 * p.theta.g[i] * E[i][j] + mu * dE -
                          lam1 * p.theta.g[i] * M[i][j] - lam * dM;
          }
          fu[j][idx] = p.u_t[j] + conv - div_stress;
        }
      }
    }
  }
  return ForcingTerms{VectorField::from_physical(grid, fu), ScalarField::from_physical(grid, ftheta),
                      VectorField::from_physical(grid, fd)};
}

double ManufacturedSolution::error(const State& state) const {
  const State ref = exact(state.grid_ptr(), state.t);
  const double eu = sobolev_norm_sq(state.u - ref.u, 0);
  const double et = sobolev_norm_sq(state.theta - ref.theta, 0);
  const double ed = sobolev_norm_sq(state.d - ref.d, 0);
  return std::sqrt(eu + et + ed);
}

}  // namespace nematic
