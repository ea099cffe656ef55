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

#include "nematic/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "nematic/diagnostics.hpp"
#include "nematic/error.hpp"
#include "nematic/manufactured.hpp"

namespace nematic {

using nlohmann::json;

namespace {

long steps_for(double t_end, double dt) { return std::max(1L, std::lround(t_end / dt)); }

json rows_json(const std::vector<ConvergenceRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"n", r.n}, {"dt", r.dt}, {"steps", r.steps}, {"error", r.error}});
  }
  return out;
}

/// Least-squares slope of log y against log x.
double log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool same_bits(const ScalarField& a, const ScalarField& b) {
  const auto x = a.coeffs();
  const auto y = b.coeffs();
  return x.size() == y.size() && std::equal(x.begin(), x.end(), y.begin(), [](Complex p, Complex q) {
           return std::memcmp(&p, &q, sizeof(Complex)) == 0;
         });
}

bool same_bits(const State& a, const State& b) {
  for (int i = 0; i < 3; ++i) {
    if (!same_bits(a.u[i], b.u[i]) || !same_bits(a.d[i], b.d[i])) return false;
  }
  return same_bits(a.theta, b.theta) && a.t == b.t;
}

double difference_norm(const State& a, const State& b) {
  return sobolev_norm_sq(a.u - b.u, 0) + derivative_norm_sq(a.d - b.d, 1, 0) +
         sobolev_norm_sq(a.theta - b.theta, 0);
}

}  // namespace

// --- manufactured solutions ---

double manufactured_error(int n, double half_width, double dt, long steps,
                          const CoefficientModel& model, const StepConfig& base, bool trivial) {
  const GridPtr grid = Grid::create(n, half_width);
  const ManufacturedSolution mms(model, trivial);
  StepConfig cfg = base;
  cfg.dt = dt;
  const Forcing forcing = [&](double t) { return mms.forcing(grid, t); };
  State s = mms.exact(grid, 0.0);
  for (long i = 0; i < steps; ++i) {
    State next = picard_advance(s, model, cfg, &forcing).state;
    // Pin the clock to i*dt so round-off in t does not drift the exact field.
    next.t = static_cast<double>(i + 1) * dt;
    s = std::move(next);
  }
  return mms.error(s);
}

ConvergenceTable manufactured_convergence(const std::vector<int>& resolutions, double spatial_dt,
                                          int temporal_n, const std::vector<double>& dts,
                                          double t_end, double half_width,
                                          const CoefficientModel& model, const StepConfig& base) {
  if (resolutions.size() < 2 || dts.size() < 2) {
    throw InvalidArgument("manufactured_convergence: need at least two resolutions and two dts");
  }
  ConvergenceTable table;
  const long spatial_steps = steps_for(t_end, spatial_dt);
  for (int n : resolutions) {
    table.spatial.push_back(
        {n, spatial_dt, spatial_steps,
         manufactured_error(n, half_width, spatial_dt, spatial_steps, model, base)});
  }
  std::vector<double> xs, ys;
  for (double dt : dts) {
    const long steps = steps_for(t_end, dt);
    const double err = manufactured_error(temporal_n, half_width, dt, steps, model, base);
    table.temporal.push_back({temporal_n, dt, steps, err});
    xs.push_back(dt);
    ys.push_back(err);
  }
  table.spatial_drop = table.spatial.front().error / table.spatial.back().error;
  table.temporal_order = log_slope(xs, ys);
  table.spatial_ok = table.spatial_drop >= 100.0;
  table.temporal_ok = table.temporal_order >= 0.8 && table.temporal_order <= 1.2;
  return table;
}

ConvergenceTable manufactured_convergence(const RunConfig& config) {
  const auto& m = config.experiments.mms;
  const CoefficientModel model = make_model(config.model);
  return manufactured_convergence(m.resolutions, m.spatial_dt, m.temporal_n, m.dts, m.t_end,
                                  config.grid.D, model, config.step_config());
}

json ConvergenceTable::to_json() const {
  return json{{"experiment", "mms"},
              {"spatial", rows_json(spatial)},
              {"temporal", rows_json(temporal)},
              {"spatial_drop", spatial_drop},
              {"temporal_order", temporal_order},
              {"verdicts",
               {{"spatial_drop_at_least_100", spatial_ok},
                {"temporal_order_in_0.8_1.2", temporal_ok}}}};
}

// --- uniqueness / stability ---

void fit_gronwall(std::span<const double> times, std::span<const double> N, double& A, double& B) {
  if (N.size() < 2 || N.size() != times.size()) {
    throw InvalidArgument("fit_gronwall: need matching series of at least two samples");
  }
  if (!(N[0] > 0.0)) throw InvalidArgument("fit_gronwall: N(0) must be positive");
  B = 0.0;
  for (std::size_t i = 1; i < N.size(); ++i) {
    const double rate = std::log(N[i] / N[i - 1]) / (times[i] - times[i - 1]);
    B = std::max(B, rate);
  }
  A = 0.0;
  for (std::size_t i = 0; i < N.size(); ++i) {
    A = std::max(A, N[i] / (N[0] * std::exp(B * (times[i] - times[0]))));
  }
}

StabilityReport uniqueness_experiment(const State& state0, double delta,
                                      const CoefficientModel& model, const StepConfig& cfg,
                                      double t_end, std::uint64_t seed) {
  if (!(delta > 0.0)) throw InvalidArgument("uniqueness_experiment: delta must be positive");
  const GridPtr& grid = state0.grid_ptr();
  const double K = gronwall_constant_K(model);
  const Perturbation pert = smooth_perturbation(grid, seed);

  StabilityReport rep;
  rep.delta = delta;
  rep.dt = cfg.dt;
  rep.steps = steps_for(t_end, cfg.dt);

  State base = state0;
  State twin = state0;
  State p_only = state0;
  p_only.p = pressure_solve(state0, model, cfg.dealias_on);
  p_only.p.axpy(delta, pert.theta);
  State full = perturb(state0, pert, delta);
  State half = perturb(state0, pert, 0.5 * delta);
  State mean_d = state0;
  mean_d.d[0][0] += delta;  // k = 0 coefficient of d1

  rep.replay_identical = true;
  rep.pressure_only_identical = true;
  DiagnosticsRecord rec_base = make_record(base, model, K, 0, 0);
  DiagnosticsRecord rec_twin = make_record(twin, model, K, 0, 0);
  rep.replay_identical = rec_base.to_json().dump() == rec_twin.to_json().dump();

  rep.times.push_back(0.0);
  rep.N.push_back(difference_norm(full, base));
  rep.N_half.push_back(difference_norm(half, base));
  rep.mean_d_initial = sobolev_norm(mean_d.d - base.d, 0);

  for (long step = 1; step <= rep.steps; ++step) {
    const AdvanceResult a = picard_advance(base, model, cfg);
    const AdvanceResult b = picard_advance(twin, model, cfg);
    const DiagnosticsRecord ra = make_record(a.state, model, K, step, a.iterations, &base,
                                             &rec_base, cfg.dt);
    const DiagnosticsRecord rb = make_record(b.state, model, K, step, b.iterations, &twin,
                                             &rec_twin, cfg.dt);
    rep.replay_identical = rep.replay_identical && ra.to_json().dump() == rb.to_json().dump();
    base = a.state;
    twin = b.state;
    rec_base = ra;
    rec_twin = rb;

    p_only = picard_advance(p_only, model, cfg).state;
    rep.pressure_only_identical = rep.pressure_only_identical && same_bits(p_only, base);

    full = picard_advance(full, model, cfg).state;
    half = picard_advance(half, model, cfg).state;
    mean_d = picard_advance(mean_d, model, cfg).state;
    rep.times.push_back(base.t);
    rep.N.push_back(difference_norm(full, base));
    rep.N_half.push_back(difference_norm(half, base));
  }
  rep.mean_d_final = sobolev_norm(mean_d.d - base.d, 0);
  rep.mean_d_decays = rep.mean_d_final < rep.mean_d_initial;

  rep.N0 = rep.N.front();
  rep.sup_N = *std::max_element(rep.N.begin(), rep.N.end());
  rep.sup_N_half = *std::max_element(rep.N_half.begin(), rep.N_half.end());
  rep.delta_ratio = rep.sup_N / rep.sup_N_half;
  fit_gronwall(rep.times, rep.N, rep.A, rep.B);
  bool bounded = std::isfinite(rep.A) && std::isfinite(rep.B);
  for (std::size_t i = 0; bounded && i < rep.N.size(); ++i) {
    bounded = rep.N[i] <= rep.A * std::exp(rep.B * rep.times[i]) * rep.N0 * (1.0 + 1e-12);
  }
  rep.envelope_ok = bounded;
  rep.scaling_ok = rep.delta_ratio >= 4.0 / 1.5 && rep.delta_ratio <= 4.0 * 1.5;
  return rep;
}

StabilityReport uniqueness_experiment(const RunConfig& config) {
  const GridPtr grid = Grid::create(config.grid.n, config.grid.D);
  const CoefficientModel model = make_model(config.model);
  const State state0 = make_preset(config, grid);
  return uniqueness_experiment(state0, config.experiments.uniqueness.delta, model,
                               config.step_config(), config.experiments.uniqueness.t_end,
                               config.initial_data.perturbation.seed);
}

json StabilityReport::to_json() const {
  return json{{"experiment", "uniqueness"},
              {"delta", delta},
              {"dt", dt},
              {"steps", steps},
              {"times", times},
              {"N", N},
              {"N_half_delta", N_half},
              {"N0", N0},
              {"sup_N", sup_N},
              {"sup_N_half_delta", sup_N_half},
              {"delta_halving_ratio", delta_ratio},
              {"A", A},
              {"B", B},
              {"mean_director_perturbation", {{"initial", mean_d_initial}, {"final", mean_d_final}}},
              {"verdicts",
               {{"replay_bitwise_identical", replay_identical},
                {"pressure_only_perturbation_identical", pressure_only_identical},
                {"gronwall_envelope_finite", envelope_ok},
                {"quadratic_delta_scaling", scaling_ok},
                {"mean_director_perturbation_decays", mean_d_decays}}}};
}

// --- Galerkin mode refinement ---

RefinementTable mode_refinement_study(const State& state0, const std::vector<int>& cutoffs,
                                      const CoefficientModel& model, const StepConfig& cfg,
                                      double t_end) {
  const Grid& g = state0.grid();
  if (cutoffs.empty()) throw InvalidArgument("mode_refinement_study: no cutoffs");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] < 1 || 2 * cutoffs[i] >= g.n()) {
      throw InvalidArgument("mode_refinement_study: cutoff " + std::to_string(cutoffs[i]) +
                            " is not below the grid Nyquist mode");
    }
    if (i > 0 && cutoffs[i] <= cutoffs[i - 1]) {
      throw InvalidArgument("mode_refinement_study: cutoffs must be strictly increasing");
    }
  }
  const auto truncate = [](State& s, int m) {
    truncate_in_place(s.u, m);
    truncate_in_place(s.theta, m);
    truncate_in_place(s.d, m);
  };
  const auto energy_above_cutoff = [](const State& s, int m) {
    double e = energy_above(s.theta, m);
    for (int a = 0; a < 3; ++a) e += energy_above(s.u[a], m) + energy_above(s.d[a], m);
    return e;
  };

  RefinementTable table;
  table.n = g.n();
  table.cutoffs = cutoffs;
  const std::size_t count = cutoffs.size();
  std::vector<State> states(count, state0);
  table.max_h1_difference.assign(count, 0.0);
  table.max_energy_above.assign(count, 0.0);

  const auto record = [&] {
    const State& finest = states.back();
    for (std::size_t i = 0; i < count; ++i) {
      table.max_h1_difference[i] =
          std::max(table.max_h1_difference[i], sobolev_norm(states[i].u - finest.u, 1));
      table.max_energy_above[i] =
          std::max(table.max_energy_above[i], energy_above_cutoff(states[i], cutoffs[i]));
    }
  };
  for (std::size_t i = 0; i < count; ++i) truncate(states[i], cutoffs[i]);
  record();
  const long steps = steps_for(t_end, cfg.dt);
  for (long step = 0; step < steps; ++step) {
    for (std::size_t i = 0; i < count; ++i) {
      states[i] = picard_advance(states[i], model, cfg).state;
      truncate(states[i], cutoffs[i]);
    }
    record();
  }

  table.monotone = true;
  table.decay_ok = true;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    const double a = table.max_h1_difference[i];
    const double b = table.max_h1_difference[i + 1];
    table.monotone = table.monotone && b <= a;
    if (i + 2 < count) {
      const double ratio = b > 0.0 ? a / b : (a > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
      table.decay_ratios.push_back(ratio);
      // Both zero means the truncation never acted.
      table.decay_ok = table.decay_ok && (ratio >= 10.0 || a == 0.0);
    }
  }
  return table;
}

RefinementTable mode_refinement_study(const RunConfig& config) {
  const auto& rc = config.experiments.refinement;
  const GridPtr grid = Grid::create(rc.n, config.grid.D);
  const CoefficientModel model = make_model(config.model);
  RunConfig fine = config;
  fine.grid.n = rc.n;
  const State state0 = make_preset(fine, grid);
  return mode_refinement_study(state0, rc.cutoffs, model, config.step_config(), rc.t_end);
}

json RefinementTable::to_json() const {
  json inf_safe = json::array();
  for (double r : decay_ratios) inf_safe.push_back(std::isfinite(r) ? json(r) : json("inf"));
  return json{{"experiment", "refinement"},
              {"n", n},
              {"cutoffs", cutoffs},
              {"max_h1_difference", max_h1_difference},
              {"max_energy_above_cutoff", max_energy_above},
              {"decay_ratios", inf_safe},
              {"verdicts", {{"monotone", monotone}, {"decay_at_least_10_per_doubling", decay_ok}}}};
}

}  // namespace nematic
