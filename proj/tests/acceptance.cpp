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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nematic/coefficients.hpp"
#include "nematic/config.hpp"
#include "nematic/diagnostics.hpp"
#include "nematic/experiments.hpp"
#include "nematic/galerkin.hpp"
#include "nematic/stepper.hpp"
#include "basis.hpp"
#include "oracles.hpp"

using namespace nematic;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Trajectory {
  std::vector<DiagnosticsRecord> records;
  bool all_finite_pressure = true;
};

Trajectory march(const RunConfig& c, long steps) {
  const auto grid = Grid::create(c.grid.n, c.grid.D);
  const auto model = make_model(c.model);
  const double K = gronwall_constant_K(model);
  const StepConfig cfg = c.step_config();
  State s = make_initial_data(c, grid);
  s.p = pressure_solve(s, model, cfg.dealias_on);
  Trajectory out;
  out.records.push_back(make_record(s, model, K, 0, 0));
  for (long n = 1; n <= steps; ++n) {
    const auto adv = picard_advance(s, model, cfg);
    out.records.push_back(make_record(adv.state, model, K, n, adv.iterations, &s, &out.records.back(), cfg.dt));
    s = adv.state;
  }
  for (const auto& r : out.records) out.all_finite_pressure = out.all_finite_pressure && std::isfinite(r.pressure_h1);
  return out;
}

RunConfig shear_twist(double dt, double t_end) {
  RunConfig c;
  c.grid.n = 16;
  c.initial_data.preset = "shear-twist";
  c.stepping.dt = dt;
  c.stepping.t_end = t_end;
  return c;
}

// Shared by criteria 1 to 4 and 7.
const Trajectory& coarse_run() {
  static const Trajectory t = march(shear_twist(5e-4, 0.2), 400);
  return t;
}
const Trajectory& fine_run() {
  static const Trajectory t = march(shear_twist(2.5e-4, 0.2), 800);
  return t;
}

double mean_abs_residual(const Trajectory& t) {
  double sum = 0.0;
  for (std::size_t i = 1; i < t.records.size(); ++i) sum += std::abs(t.records[i].energy_residual);
  return sum / static_cast<double>(t.records.size() - 1);
}

Outcome energy_law() {
  const auto& coarse = coarse_run();
  const auto& fine = fine_run();
  int increases = 0;
  double worst = 0.0;
  for (std::size_t i = 1; i < coarse.records.size(); ++i) {
    const double de = coarse.records[i].total_energy - coarse.records[i - 1].total_energy;
    worst = std::max(worst, de);
    if (de > 1e-12 * std::abs(coarse.records[i - 1].total_energy)) ++increases;
  }
  const double r1 = mean_abs_residual(coarse), r2 = mean_abs_residual(fine);
  const double ratio = r1 / r2;
  const bool pass = increases == 0 && ratio >= 1.6 && ratio <= 2.4;
  return {pass, fmt("E(0)=%.6f E(end)=%.6f, steps with energy increase=%d (max dE=%.2e), "
                    "mean|residual| dt=5e-4: %.4e, dt=2.5e-4: %.4e, ratio=%.3f (need 1.6..2.4)",
                    coarse.records.front().total_energy, coarse.records.back().total_energy, increases,
                    worst, r1, r2, ratio)};
}

Outcome director_bound() {
  double worst = -1.0;
  for (const auto& r : coarse_run().records) worst = std::max(worst, r.d_max_norm - 1.0);
  return {worst <= 1e-6, fmt("max over 400 steps of max|d| - 1 = %.3e (need <= 1e-6)", worst)};
}

Outcome temperature_floor() {
  double worst = 1e300;
  for (const auto& r : coarse_run().records) worst = std::min(worst, r.theta_min - 1.0);
  return {worst >= -1e-6, fmt("min over 400 steps of min theta - floor = %.3e (need >= -1e-6)", worst)};
}

Outcome incompressibility() {
  double worst = 0.0;
  for (const auto* t : {&coarse_run(), &fine_run()}) {
    for (const auto& r : t->records) worst = std::max(worst, r.div_residual);
  }
  // The Taylor-Green and Galerkin runs check their own states below.
  return {worst < 1e-10, fmt("max spectral divergence over %zu committed steps = %.3e (need < 1e-10)",
                             coarse_run().records.size() + fine_run().records.size(), worst)};
}

Outcome galerkin() {
  const auto g = Grid::create(16);
  const auto basis = oracle::triad_basis(g);
  RunConfig c;
  c.initial_data.preset = "shear-twist";
  const State s = make_preset(c, g);
  const std::vector<double> g0{0.3, -0.2, 0.5, 0.1, -0.4, 0.25};
  StepConfig cfg;
  cfg.dt = 1e-2;
  cfg.splitting = Splitting::fully_explicit;
  double worst_step = 0.0;
  const auto constant = CoefficientModel::constant(0.5, 1.0);
  const auto builtin = CoefficientModel::builtin();
  for (const CoefficientModel* model : {&constant, &builtin}) {
    const auto sys = galerkin_ode_coefficients(basis, s.theta, s.d, *model);
    const auto rate = sys.rhs(g0);
    const auto spectral = project_onto(basis, velocity_substep(synthesize(basis, g0), s.theta, s.d, *model, cfg));
    std::vector<double> ode(g0.size());
    for (std::size_t k = 0; k < ode.size(); ++k) ode[k] = g0[k] + cfg.dt * rate[k];
    const auto diff = synthesize(basis, ode) - synthesize(basis, spectral);
    worst_step = std::max(worst_step, sobolev_norm(diff, 0));
  }
  const auto sys = galerkin_ode_coefficients(basis, s.theta, s.d, builtin);
  std::mt19937 rng(20);
  std::normal_distribution<double> n01;
  double worst_tri = 0.0;
  for (int t = 0; t < 20; ++t) {
    std::vector<double> gv(sys.m);
    for (double& v : gv) v = n01(rng);
    worst_tri = std::max(worst_tri, std::abs(sys.trilinear(gv)));
  }
  return {worst_step < 1e-8 && worst_tri < 1e-10,
          fmt("m=6 ODE step vs spectral path L2 diff = %.3e (need < 1e-8), "
              "max |trilinear| over 20 random g = %.3e (need < 1e-10)",
              worst_step, worst_tri)};
}

Outcome uniqueness() {
  RunConfig c = shear_twist(1e-3, 0.1);
  c.experiments.uniqueness.delta = 1e-6;
  c.experiments.uniqueness.t_end = 0.1;
  const auto r = uniqueness_experiment(c);
  return {r.passed(), fmt("twin replay identical=%d, pressure-only identical=%d, A=%.4g B=%.4g envelope=%d, "
                          "sup N(delta)/sup N(delta/2)=%.4f (need 4 within x1.5), mean-d decays=%d",
                          r.replay_identical, r.pressure_only_identical, r.A, r.B, r.envelope_ok,
                          r.delta_ratio, r.mean_d_decays)};
}

Outcome pressure() {
  const auto g = Grid::create(32);
  const auto model = CoefficientModel::constant(0.7, 1.0);
  State s;
  s.u = oracle::vector_field(
      g, [](double x, double y, double) { return std::sin(x) * std::cos(y); },
      [](double x, double y, double) { return -std::cos(x) * std::sin(y); },
      [](double, double, double) { return 0.0; });
  s.theta = ScalarField::constant(g, 1.0);
  s.d = VectorField(g);
  s.d[0] = ScalarField::constant(g, 1.0);
  const auto p = pressure_solve(s, model);
  const auto exact = oracle::field(
      g, [](double x, double y, double) { return 0.25 * (std::cos(2 * x) + std::cos(2 * y)); });
  const double rel = sobolev_norm(p - exact, 0) / sobolev_norm(exact, 0);

  // Evolve the vortex and require a finite pressure norm at every step.
  StepConfig cfg;
  cfg.dt = 1e-3;
  const double K = gronwall_constant_K(model);
  bool finite = coarse_run().all_finite_pressure && fine_run().all_finite_pressure;
  double worst_div = 0.0;
  State cur = s;
  for (int n = 0; n < 20; ++n) {
    cur = picard_advance(cur, model, cfg).state;
    const auto rec = make_record(cur, model, K, n + 1, 1);
    finite = finite && std::isfinite(rec.pressure_h1);
    worst_div = std::max(worst_div, rec.div_residual);
  }
  return {rel < 1e-8 && finite && worst_div < 1e-10,
          fmt("Taylor-Green pressure relative L2 error at 32^3 = %.3e (need < 1e-8), "
              "|p|_H1 finite at every step=%d, max divergence=%.2e",
              rel, finite, worst_div)};
}

Outcome convergence() {
  RunConfig c;
  const auto mms = manufactured_convergence(c);
  RunConfig rc;
  rc.initial_data.preset = "random-smooth";
  rc.initial_data.params.max_mode = 12;
  rc.initial_data.params.width = 2.5;
  rc.stepping.dt = 5e-3;
  rc.experiments.refinement = RefinementConfig{};
  const auto ref = mode_refinement_study(rc);
  double min_ratio = 1e300;
  for (double r : ref.decay_ratios) min_ratio = std::min(min_ratio, r);
  return {mms.spatial_ok && ref.decay_ok && ref.monotone,
          fmt("manufactured L2 error %d^3: %.3e -> %d^3: %.3e, drop %.1fx (need >= 100), temporal order %.3f; "
              "refinement at %d^3 cutoffs 4/8/16 vs finest: min decay per doubling %.1fx (need >= 10)",
              mms.spatial.front().n, mms.spatial.front().error, mms.spatial.back().n,
              mms.spatial.back().error, mms.spatial_drop, mms.temporal_order, ref.n, min_ratio)};
}

Outcome blowup() {
  const double C = 0.05, F0 = 1.5;
  const double t_star = 1.0 / (3.0 * C * F0 * F0 * F0);
  std::vector<double> t, F;
  for (int i = 0; i < 50; ++i) {
    t.push_back(0.8 * t_star * i / 49.0);
    F.push_back(std::pow(std::pow(F0, -3.0) - 3.0 * C * t.back(), -1.0 / 3.0));
  }
  const auto est = blowup_monitor(t, F);
  const double ec = std::abs(est.c_fit / C - 1.0), et = std::abs(est.t_star / t_star - 1.0);
  return {ec < 0.01 && et < 0.02,
          fmt("C fit %.6g vs %.6g (rel err %.2e, need < 1%%), T* %.6g vs %.6g (rel err %.2e, need < 2%%)",
              est.c_fit, C, ec, est.t_star, t_star, et)};
}

Outcome coefficients() {
  const auto m = CoefficientModel::builtin();
  const auto report = validate_assumptions(m, uniform_samples(100.0, 1e-3));
  std::mt19937 rng(10);
  std::uniform_real_distribution<double> u(m.theta_floor(), 100.0);
  double worst = 0.0;
  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const double t = u(rng) + 2 * h;
    const double d = (capital_lambda_eval(m, t + h) - capital_lambda_eval(m, t - h)) / (2 * h);
    worst = std::max(worst, std::abs(d * m.lambda(t) - 1.0));
  }
  return {report.passed && worst < 1e-6,
          fmt("validate_assumptions on [0, 100]: %s (%zu checks), max |Lambda' lambda - 1| at 100 points = %.2e",
              report.passed ? "pass" : "fail", report.checks.size(), worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"energy law", energy_law},
      {"director maximum principle", director_bound},
      {"temperature floor", temperature_floor},
      {"incompressibility", incompressibility},
      {"Galerkin cross-check", galerkin},
      {"uniqueness and stability", uniqueness},
      {"pressure consistency", pressure},
      {"convergence", convergence},
      {"blow-up monitor", blowup},
      {"coefficient assumptions", coefficients},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
