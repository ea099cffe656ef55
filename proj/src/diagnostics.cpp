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

#include "nematic/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nematic/error.hpp"

namespace nematic {

namespace {

void require_above_floor(std::span<const double> theta, double floor, const char* where) {
  const double lo = *std::min_element(theta.begin(), theta.end());
  if (lo < floor - kPrincipleTolerance) {
    throw TemperatureBelowFloor(std::string(where) + ": min theta " + std::to_string(lo) +
                                " below floor " + std::to_string(floor));
  }
}

}  // namespace

EnergyComponents energy_components(const State& state, const CoefficientModel& model, double K) {
  const Grid& g = state.grid();
  const std::size_t size = g.physical_size();
  const RealVector u = state.u.to_physical();
  const RealVector d = state.d.to_physical();
  const RealArray th = state.theta.to_physical();
  require_above_floor(th, model.theta_floor(), "total_energy");

  EnergyComponents e;
  for (std::size_t x = 0; x < size; ++x) {
    const double uu = u[0][x] * u[0][x] + u[1][x] * u[1][x] + u[2][x] * u[2][x];
    const auto gl = ginzburg_landau({d[0][x], d[1][x], d[2][x]});
    e.kinetic += 0.5 * (K + 1.0) * uu;
    e.thermal += (K + 1.0) * th[x] - model.capital_lambda_unchecked(th[x]);
    e.penalty += 0.25 * gl.energy;
  }
  const double w = g.cell_volume();
  e.kinetic *= w;
  e.thermal *= w;
  e.penalty *= w;
  e.elastic = 0.5 * derivative_norm_sq(state.d, 1, 0);
  return e;
}

double total_energy(const State& state, const CoefficientModel& model, double K) {
  return energy_components(state, model, K).total();
}

double dissipation(const State& state, const CoefficientModel& model) {
  const Grid& g = state.grid();
  const std::size_t size = g.physical_size();
  const RealArray th = state.theta.to_physical();
  require_above_floor(th, model.theta_floor(), "dissipation");
  const RealVector grad_th = gradient(state.theta).to_physical();
  const RealTensor e = strain(gradient_physical(state.u));
  const RealVector d = state.d.to_physical();
  const RealVector lap_d = laplacian(state.d).to_physical();

  double sum = 0.0;
  for (std::size_t x = 0; x < size; ++x) {
    const double lam = model.lambda(th[x]);
    const double gg = grad_th[0][x] * grad_th[0][x] + grad_th[1][x] * grad_th[1][x] +
                      grad_th[2][x] * grad_th[2][x];
    double ee = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) ee += e[i][j][x] * e[i][j][x];
    }
    const auto gl = ginzburg_landau({d[0][x], d[1][x], d[2][x]});
    double hh = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double h = lap_d[a][x] - gl.force[a];
      hh += h * h;
    }
    sum += model.lambda_d1(th[x]) / (lam * lam) * gg + model.mu(th[x]) / (2.0 * lam) * ee + hh;
  }
  return sum * g.cell_volume();
}

double energy_balance_residual(const DiagnosticsRecord& prev, const DiagnosticsRecord& next,
                               double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("energy_balance_residual: dt must be positive");
  return (next.total_energy - prev.total_energy) / dt +
         0.5 * (prev.dissipation + next.dissipation);
}

PrincipleReport principle_checks(const State& state, double theta_floor, double tol) {
  const Grid& g = state.grid();
  const RealVector d = state.d.to_physical();
  const RealArray th = state.theta.to_physical();
  double d_max = 0.0;
  for (std::size_t x = 0; x < g.physical_size(); ++x) {
    d_max = std::max(d_max, d[0][x] * d[0][x] + d[1][x] * d[1][x] + d[2][x] * d[2][x]);
  }
  PrincipleReport r;
  r.d_margin = std::sqrt(d_max) - 1.0;
  r.theta_margin = *std::min_element(th.begin(), th.end()) - theta_floor;
  r.div_residual = divergence_residual(state.u);
  r.d_ok = r.d_margin <= tol;
  r.theta_ok = r.theta_margin >= -tol;
  r.div_ok = r.div_residual < kDivergenceTolerance;
  return r;
}

HighOrderFunctionals high_order_functionals(const State& state, const DirectorField* d_prev,
                                            double dt) {
  HighOrderFunctionals out;
  out.F = derivative_norm_sq(state.u, 1, 1) + derivative_norm_sq(state.theta, 1, 1) +
          derivative_norm_sq(state.d, 2, 1) + 1.0;
  out.H = derivative_norm_sq(state.u, 2, 1) + derivative_norm_sq(state.theta, 2, 1) +
          derivative_norm_sq(state.d, 3, 0);
  if (d_prev) {
    if (!(dt > 0.0)) throw InvalidArgument("high_order_functionals: dt must be positive");
    VectorField rate = state.d - *d_prev;
    rate *= 1.0 / dt;
    out.H += derivative_norm_sq(rate, 2, 0);
  }
  return out;
}

BlowupEstimate blowup_monitor(std::span<const double> times, std::span<const double> F) {
  const std::size_t n = F.size();
  if (times.size() != n) throw InvalidArgument("blowup_monitor: size mismatch");
  if (n < 10) throw InvalidArgument("blowup_monitor: need at least 10 samples");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(times[i] > times[i - 1])) throw InvalidArgument("blowup_monitor: times not increasing");
  }
  // F'/F^4 = -(1/3) d(F^-3)/dt; the right side is exact for the Riccati profile.
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / (F[i] * F[i] * F[i]);

  // Second-order three-point derivative on a nonuniform grid, with the
  // rounding noise of the stencil sum.
  struct Slope {
    double value, noise;
  };
  const auto deriv = [&](std::size_t i0, std::size_t at) {
    const double x0 = times[i0], x1 = times[i0 + 1], x2 = times[i0 + 2];
    const double x = times[at];
    const double c0 = ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2));
    const double c1 = ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2));
    const double c2 = ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
    const double scale = std::abs(c0 * w[i0]) + std::abs(c1 * w[i0 + 1]) + std::abs(c2 * w[i0 + 2]);
    return Slope{c0 * w[i0] + c1 * w[i0 + 1] + c2 * w[i0 + 2],
                 8.0 * std::numeric_limits<double>::epsilon() * scale};
  };
  double sum = 0.0;
  bool grows = false;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t i0 = i == 0 ? 0 : (i == n - 1 ? n - 3 : i - 1);
    const Slope s = deriv(i0, i);
    if (-s.value <= s.noise) continue;
    grows = true;
    sum += -s.value / 3.0;
  }
  BlowupEstimate est;
  if (!grows) return est;
  est.c_fit = sum / static_cast<double>(n);
  if (est.c_fit > 0.0) est.t_star = 1.0 / (3.0 * est.c_fit * F[0] * F[0] * F[0]);
  return est;
}

DiagnosticsRecord make_record(const State& state, const CoefficientModel& model, double K,
                              long step, int picard_iters, const State* prev_state,
                              const DiagnosticsRecord* prev_record, double dt) {
  DiagnosticsRecord r;
  r.step = step;
  r.t = state.t;
  r.picard_iters = picard_iters;
  const auto principles = principle_checks(state, model.theta_floor());
  r.d_max_norm = 1.0 + principles.d_margin;
  r.theta_min = model.theta_floor() + principles.theta_margin;
  r.div_residual = principles.div_residual;
  r.d_ok = principles.d_ok;
  r.theta_ok = principles.theta_ok;
  r.div_ok = principles.div_ok;

  const auto e = energy_components(state, model, K);
  r.kinetic = e.kinetic;
  r.thermal = e.thermal;
  r.elastic = e.elastic;
  r.penalty = e.penalty;
  r.total_energy = e.total();
  r.dissipation = dissipation(state, model);

  const auto fh = high_order_functionals(state, prev_state ? &prev_state->d : nullptr, dt);
  r.F_functional = fh.F;
  r.H_functional = fh.H;
  if (!state.p.empty()) r.pressure_h1 = sobolev_norm(state.p, 1);
  if (prev_record) r.energy_residual = energy_balance_residual(*prev_record, r, dt);
  return r;
}

nlohmann::json DiagnosticsRecord::to_json() const {
  return nlohmann::json{{"step", step},
                        {"t", t},
                        {"total_energy", total_energy},
                        {"dissipation", dissipation},
                        {"kinetic", kinetic},
                        {"thermal", thermal},
                        {"elastic", elastic},
                        {"penalty", penalty},
                        {"d_max_norm", d_max_norm},
                        {"theta_min", theta_min},
                        {"div_residual", div_residual},
                        {"F_functional", F_functional},
                        {"H_functional", H_functional},
                        {"pressure_h1", pressure_h1},
                        {"energy_residual", energy_residual},
                        {"picard_iters", picard_iters},
                        {"d_ok", d_ok},
                        {"theta_ok", theta_ok},
                        {"div_ok", div_ok}};
}

DiagnosticsRecord DiagnosticsRecord::from_json(const nlohmann::json& j) {
  DiagnosticsRecord r;
  r.step = j.at("step").get<long>();
  r.t = j.at("t").get<double>();
  r.total_energy = j.at("total_energy").get<double>();
  r.dissipation = j.at("dissipation").get<double>();
  r.kinetic = j.at("kinetic").get<double>();
  r.thermal = j.at("thermal").get<double>();
  r.elastic = j.at("elastic").get<double>();
  r.penalty = j.at("penalty").get<double>();
  r.d_max_norm = j.at("d_max_norm").get<double>();
  r.theta_min = j.at("theta_min").get<double>();
  r.div_residual = j.at("div_residual").get<double>();
  r.F_functional = j.at("F_functional").get<double>();
  r.H_functional = j.at("H_functional").get<double>();
  r.pressure_h1 = j.at("pressure_h1").get<double>();
  r.energy_residual = j.at("energy_residual").get<double>();
  r.picard_iters = j.at("picard_iters").get<int>();
  r.d_ok = j.at("d_ok").get<bool>();
  r.theta_ok = j.at("theta_ok").get<bool>();
  r.div_ok = j.at("div_ok").get<bool>();
  return r;
}

}  // namespace nematic
