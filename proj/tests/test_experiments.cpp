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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "nematic/config.hpp"
#include "nematic/diagnostics.hpp"
#include "nematic/error.hpp"
#include "nematic/experiments.hpp"
#include "nematic/manufactured.hpp"
#include "oracles.hpp"

using namespace nematic;

namespace {

double max_abs_field(const ScalarField& f) { return oracle::max_abs(f.to_physical()); }

}  // namespace

TEST_CASE("jet derivatives match finite differences") {
  const auto eval = [](double x, double y, double z) {
    const Jet X = Jet::coordinate(0, x, 1.0), Y = Jet::coordinate(1, y, 2.0), Z = Jet::coordinate(2, z, 1.0);
    return exp(sin(X) * cos(Y)) + 0.5 * (Z * X) - cos(Z + Y);
  };
  const double p[3] = {0.3, -0.8, 1.1};
  const Jet j = eval(p[0], p[1], p[2]);
  const double h = 1e-4;
  for (int a = 0; a < 3; ++a) {
    double q[3] = {p[0], p[1], p[2]}, r[3] = {p[0], p[1], p[2]};
    q[a] += h;
    r[a] -= h;
    const Jet jq = eval(q[0], q[1], q[2]), jr = eval(r[0], r[1], r[2]);
    CHECK(j.g[a] == doctest::Approx((jq.v - jr.v) / (2 * h)).epsilon(1e-7));
    for (int b = 0; b < 3; ++b) {
      CHECK(j.h[a][b] == doctest::Approx((jq.g[b] - jr.g[b]) / (2 * h)).epsilon(1e-7));
    }
  }
}

TEST_CASE("manufactured sources balance the equations") {
  const auto model = CoefficientModel::builtin();
  const ManufacturedSolution mms(model);
  const auto g = Grid::create(32);
  const double t = 0.3, h = 1e-4;
  const State s = mms.exact(g, t);
  const State sp = mms.exact(g, t + h);
  const State sm = mms.exact(g, t - h);
  const ForcingTerms f = mms.forcing(g, t);
  const auto ddt = [&](const ScalarField& a, const ScalarField& b) { return (1.0 / (2 * h)) * (a - b); };

  CHECK(divergence_residual(s.u) < 1e-10);
  CHECK(principle_checks(s, model.theta_floor()).all_ok());

  const RealVector up = s.u.to_physical();
  const RealVector dp = s.d.to_physical();
  const std::size_t size = g->physical_size();

  // Director.
  for (int a = 0; a < 3; ++a) {
    const RealArray dd = s.d[a].to_physical();
    RealArray cubic(size);
    for (std::size_t i = 0; i < size; ++i) {
      const double m2 = dp[0][i] * dp[0][i] + dp[1][i] * dp[1][i] + dp[2][i] * dp[2][i];
      cubic[i] = (m2 - 1.0) * dd[i];
    }
    StepConfig raw;
    raw.dealias_on = false;
    const auto r = ddt(sp.d[a], sm.d[a]) + advect(up, s.d[a], raw) - laplacian(s.d[a]) +
                   ScalarField::from_physical(g, cubic) - f.d[a];
    CHECK(max_abs_field(r) < 1e-6);
  }

  // Temperature.
  {
    const RealTensor gu = gradient_physical(s.u);
    const RealTensor e = strain(gu);
    const RealTensor m = ericksen_tensor(s.d);
    const RealArray th = s.theta.to_physical();
    RealArray src(size);
    for (std::size_t x = 0; x < size; ++x) {
      double ee = 0.0, work = 0.0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          ee += e[i][j][x] * e[i][j][x];
          work += m[i][j][x] * gu[i][j][x];
        }
      }
      src[x] = 0.5 * model.mu(th[x]) * ee - model.lambda(th[x]) * work;
    }
    StepConfig raw;
    raw.dealias_on = false;
    const auto r = ddt(sp.theta, sm.theta) + advect(up, s.theta, raw) - laplacian(s.theta) -
                   ScalarField::from_physical(g, src) - f.theta;
    CHECK(max_abs_field(r) < 1e-6);
  }

  // Momentum, up to a gradient.
  {
    const RealTensor e = strain(gradient_physical(s.u));
    const RealTensor m = ericksen_tensor(s.d);
    const RealArray th = s.theta.to_physical();
    RealTensor stress;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        stress[i][j].resize(size);
        for (std::size_t x = 0; x < size; ++x) {
          stress[i][j][x] = model.mu(th[x]) * e[i][j][x] - model.lambda(th[x]) * m[i][j][x];
        }
      }
    }
    const VectorField div = divergence_of_tensor(g, stress, false);
    StepConfig raw;
    raw.dealias_on = false;
    VectorField r(g);
    for (int a = 0; a < 3; ++a) {
      r[a] = ddt(sp.u[a], sm.u[a]) + advect(up, s.u[a], raw) - div[a] - f.u[a];
    }
    r = leray_project(r);
    for (int a = 0; a < 3; ++a) CHECK(max_abs_field(r[a]) < 1e-6);
  }
}

TEST_CASE("trivial manufactured solution is reproduced exactly") {
  const auto model = CoefficientModel::builtin();
  StepConfig cfg;
  for (int n : {8, 16}) {
    CHECK(manufactured_error(n, std::numbers::pi, 1e-2, 5, model, cfg, true) < 1e-13);
  }
}

TEST_CASE("manufactured error shrinks with the time step") {
  const auto model = CoefficientModel::builtin();
  StepConfig cfg;
  const double e1 = manufactured_error(16, std::numbers::pi, 4e-3, 5, model, cfg);
  const double e2 = manufactured_error(16, std::numbers::pi, 2e-3, 10, model, cfg);
  CHECK(e1 > 0.0);
  CHECK(e2 < e1);
}

TEST_CASE("Gronwall fit") {
  std::vector<double> t, N;
  for (int i = 0; i <= 20; ++i) {
    t.push_back(0.05 * i);
    N.push_back(3.0 * std::exp(2.0 * t.back()));
  }
  double A = 0.0, B = 0.0;
  fit_gronwall(t, N, A, B);
  CHECK(B == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(A == doctest::Approx(1.0).epsilon(1e-10));
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(N[i] <= A * std::exp(B * t[i]) * N[0] * (1 + 1e-12));

  // Decay gives B = 0 and A = 1.
  for (std::size_t i = 0; i < t.size(); ++i) N[i] = std::exp(-t[i]);
  fit_gronwall(t, N, A, B);
  CHECK(B == 0.0);
  CHECK(A == doctest::Approx(1.0));

  // A transient bump above a zero-rate envelope lifts A, not B.
  N.assign(t.size(), 1.0);
  N[3] = 1.5;
  fit_gronwall(t, N, A, B);
  CHECK(B > 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(N[i] <= A * std::exp(B * t[i]) * N[0] * (1 + 1e-12));
}

TEST_CASE("uniqueness experiment on a coarse grid") {
  RunConfig c;
  c.grid.n = 8;
  c.initial_data.preset = "shear-twist";
  c.stepping.dt = 2e-3;
  c.experiments.uniqueness.t_end = 0.02;
  const auto r = uniqueness_experiment(c);
  CHECK(r.steps == 10);
  CHECK(r.replay_identical);
  CHECK(r.pressure_only_identical);
  CHECK(r.N.size() == r.times.size());
  CHECK(r.N0 > 0.0);
  CHECK(r.envelope_ok);
  CHECK(r.delta_ratio == doctest::Approx(4.0).epsilon(0.05));
  CHECK(r.passed());
  const auto j = r.to_json();
  CHECK(j.contains("verdicts"));
}

TEST_CASE("mode refinement of the rest state has no differences") {
  const auto model = CoefficientModel::builtin();
  RunConfig c;
  const auto g = Grid::create(16);
  const State s = make_preset(c, g);
  StepConfig cfg;
  cfg.dt = 1e-2;
  const auto t = mode_refinement_study(s, {2, 4, 6}, model, cfg, 0.05);
  REQUIRE(t.max_h1_difference.size() == 3);
  for (double d : t.max_h1_difference) CHECK(d == 0.0);
  for (double e : t.max_energy_above) CHECK(e == 0.0);
}

TEST_CASE("mode refinement rejects bad cutoffs") {
  const auto model = CoefficientModel::builtin();
  RunConfig c;
  const State s = make_preset(c, Grid::create(16));
  StepConfig cfg;
  CHECK_THROWS_AS(mode_refinement_study(s, {4, 2}, model, cfg, 0.01), InvalidArgument);
  CHECK_THROWS_AS(mode_refinement_study(s, {4, 8}, model, cfg, 0.01), InvalidArgument);
}

TEST_CASE("mode refinement differences shrink with the cutoff") {
  RunConfig c;
  c.initial_data.preset = "random-smooth";
  c.initial_data.params.max_mode = 6;
  c.initial_data.params.width = 2.0;
  c.stepping.dt = 5e-3;
  c.experiments.refinement.n = 16;
  c.experiments.refinement.cutoffs = {2, 4, 7};
  c.experiments.refinement.t_end = 0.02;
  const auto t = mode_refinement_study(c);
  CHECK(t.monotone);
  CHECK(t.max_h1_difference[0] > t.max_h1_difference[1]);
  CHECK(t.max_h1_difference[2] == 0.0);
}
