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

#include "nematic/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "nematic/error.hpp"

namespace nematic {

void StepConfig::validate() const {
  if (!(dt > 0.0)) throw InvalidArgument("stepping.dt must be positive");
  if (!(picard_tol > 0.0 && picard_tol < 1.0)) {
    throw InvalidArgument("stepping.picard_tol must lie in (0, 1)");
  }
  if (picard_max < 1) throw InvalidArgument("stepping.picard_max must be >= 1");
}

namespace {

void maybe_dealias(ScalarField& f, const StepConfig& cfg,
                   DealiasRule rule = DealiasRule::two_thirds) {
  if (cfg.dealias_on) dealias_in_place(f, rule);
}

std::vector<double> map_values(std::span<const double> x, double (CoefficientModel::*fn)(double) const,
                               const CoefficientModel& model) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (model.*fn)(x[i]);
  return out;
}

}  // namespace

RealTensor strain(const RealTensor& g) {
  RealTensor e;
  const std::size_t size = g[0][0].size();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      e[i][j].resize(size);
      for (std::size_t x = 0; x < size; ++x) e[i][j][x] = g[i][j][x] + g[j][i][x];
    }
  }
  return e;
}

RealTensor ericksen_tensor(const DirectorField& d) {
  const RealTensor g = gradient_physical(d);  // g[i][a] = d_i d_a
  const std::size_t size = g[0][0].size();
  RealTensor m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (j < i) {
        m[i][j] = m[j][i];
        continue;
      }
      m[i][j].assign(size, 0.0);
      for (int a = 0; a < 3; ++a) {
        for (std::size_t x = 0; x < size; ++x) m[i][j][x] += g[i][a][x] * g[j][a][x];
      }
    }
  }
  return m;
}

ScalarField advect(const RealVector& v, const ScalarField& f, const StepConfig& cfg) {
  const GridPtr& grid = f.grid_ptr();
  const std::size_t size = grid->physical_size();
  RealArray product(size, 0.0);
  for (int a = 0; a < 3; ++a) {
    const RealArray df = partial(f, a).to_physical();
    for (std::size_t x = 0; x < size; ++x) product[x] += v[a][x] * df[x];
  }
  ScalarField out = ScalarField::from_physical(grid, product);
  if (cfg.skew_symmetric_advection) {
    const RealArray fp = f.to_physical();
    VectorField flux(grid);
    for (int a = 0; a < 3; ++a) {
      RealArray vf(size);
      for (std::size_t x = 0; x < size; ++x) vf[x] = v[a][x] * fp[x];
      flux[a] = ScalarField::from_physical(grid, vf);
    }
    out += divergence(flux);
    out *= 0.5;
  }
  maybe_dealias(out, cfg);
  return out;
}

DirectorField director_substep(const DirectorField& d_old, const VectorField& v,
                               const StepConfig& cfg, const VectorField* forcing) {
  require_same_grid(d_old.grid(), v.grid(), "director_substep");
  const GridPtr& grid = d_old.grid_ptr();
  const double dt = cfg.dt;
  const RealVector vp = v.to_physical();
  const RealVector dp = d_old.to_physical();
  const std::size_t size = grid->physical_size();

  RealArray excess(size);
  for (std::size_t x = 0; x < size; ++x) {
    excess[x] = dp[0][x] * dp[0][x] + dp[1][x] * dp[1][x] + dp[2][x] * dp[2][x] - 1.0;
  }
  const DealiasRule cubic_rule =
      cfg.cubic_half_rule ? DealiasRule::one_half : DealiasRule::two_thirds;

  DirectorField rhs = d_old;
  for (int a = 0; a < 3; ++a) {
    RealArray cubic(size);
    for (std::size_t x = 0; x < size; ++x) cubic[x] = excess[x] * dp[a][x];
    ScalarField penalty = ScalarField::from_physical(grid, cubic);
    maybe_dealias(penalty, cfg, cubic_rule);
    rhs[a].axpy(-dt, advect(vp, d_old[a], cfg));
    rhs[a].axpy(-dt, penalty);
    if (forcing) rhs[a].axpy(dt, (*forcing)[a]);
  }
  if (cfg.splitting == Splitting::imex) return helmholtz_solve(rhs, dt);
  return rhs.axpy(dt, laplacian(d_old));
}

ScalarField temperature_substep(const ScalarField& theta_old, const VectorField& v,
                                const DirectorField& d, const CoefficientModel& model,
                                const StepConfig& cfg, const ScalarField* forcing) {
  require_same_grid(theta_old.grid(), v.grid(), "temperature_substep");
  require_same_grid(theta_old.grid(), d.grid(), "temperature_substep");
  const GridPtr& grid = theta_old.grid_ptr();
  const double dt = cfg.dt;
  const std::size_t size = grid->physical_size();
  const RealVector vp = v.to_physical();
  const RealArray th = theta_old.to_physical();
  const RealTensor grad_v = gradient_physical(v);
  const RealTensor e = strain(grad_v);
  const RealTensor m = ericksen_tensor(d);

  RealArray heat(size);
  for (std::size_t x = 0; x < size; ++x) {
    double ee = 0.0, work = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        ee += e[i][j][x] * e[i][j][x];
        work += m[i][j][x] * grad_v[i][j][x];
      }
    }
    heat[x] = 0.5 * model.mu(th[x]) * ee - model.lambda(th[x]) * work;
  }
  ScalarField source = ScalarField::from_physical(grid, heat);
  maybe_dealias(source, cfg);

  ScalarField rhs = theta_old;
  rhs.axpy(-dt, advect(vp, theta_old, cfg));
  rhs.axpy(dt, source);
  if (forcing) rhs.axpy(dt, *forcing);
  if (cfg.splitting == Splitting::imex) return helmholtz_solve(rhs, dt);
  return rhs.axpy(dt, laplacian(theta_old));
}

VectorField velocity_substep(const VectorField& u_old, const ScalarField& theta,
                             const DirectorField& d, const CoefficientModel& model,
                             const StepConfig& cfg, const VectorField* forcing) {
  require_same_grid(u_old.grid(), theta.grid(), "velocity_substep");
  require_same_grid(u_old.grid(), d.grid(), "velocity_substep");
  const GridPtr& grid = u_old.grid_ptr();
  const double dt = cfg.dt;
  const std::size_t size = grid->physical_size();
  const RealArray th = theta.to_physical();
  const RealArray mu = map_values(th, &CoefficientModel::mu, model);
  const RealArray lam = map_values(th, &CoefficientModel::lambda, model);
  const double mu0 =
      cfg.splitting == Splitting::imex ? *std::min_element(mu.begin(), mu.end()) : 0.0;

  const RealTensor e = strain(gradient_physical(u_old));
  const RealTensor m = ericksen_tensor(d);
  RealTensor stress;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      stress[i][j].resize(size);
      for (std::size_t x = 0; x < size; ++x) {
        stress[i][j][x] = (mu[x] - mu0) * e[i][j][x] - lam[x] * m[i][j][x];
      }
    }
  }
  VectorField rhs = divergence_of_tensor(grid, stress, cfg.dealias_on);
  const RealVector up = u_old.to_physical();
  for (int a = 0; a < 3; ++a) rhs[a].axpy(-1.0, advect(up, u_old[a], cfg));
  if (forcing) rhs += *forcing;

  VectorField next = u_old;
  next.axpy(dt, leray_project(rhs));
  if (cfg.splitting == Splitting::imex) next = helmholtz_solve(next, dt * mu0);
  return leray_project(next);
}

ScalarField pressure_solve(const State& state, const CoefficientModel& model, bool dealias_on) {
  const GridPtr& grid = state.grid_ptr();
  const Grid& g = *grid;
  const std::size_t size = g.physical_size();
  const RealArray th = state.theta.to_physical();
  const RealTensor e = strain(gradient_physical(state.u));
  const RealTensor m = ericksen_tensor(state.d);

  std::array<std::array<ScalarField, 3>, 3> stress;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      RealArray s(size);
      for (std::size_t x = 0; x < size; ++x) {
        s[x] = model.mu(th[x]) * e[i][j][x] - model.lambda(th[x]) * m[i][j][x];
      }
      stress[i][j] = ScalarField::from_physical(grid, s);
      if (dealias_on) dealias_in_place(stress[i][j]);
    }
  }
  StepConfig adv_cfg;
  adv_cfg.dealias_on = dealias_on;
  const RealVector up = state.u.to_physical();
  std::array<ScalarField, 3> adv;
  for (int a = 0; a < 3; ++a) adv[a] = advect(up, state.u[a], adv_cfg);

  ScalarField p(grid);
  for_each_mode(g, [&](int ix, int iy, int iz, std::size_t idx) {
    const double k[3] = {g.k_deriv(ix), g.k_deriv(iy), g.k_deriv(iz)};
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    if (k2 == 0.0) return;
    Complex rhs{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const auto& s = i <= j ? stress[i][j] : stress[j][i];
        rhs -= k[i] * k[j] * s[idx];
      }
      rhs -= Complex(0.0, k[i]) * adv[i][idx];
    }
    p[idx] = -rhs / k2;
  });
  return p;
}

AdvanceResult picard_advance(const State& state, const CoefficientModel& model,
                             const StepConfig& cfg, const Forcing* forcing) {
  cfg.validate();
  std::optional<ForcingTerms> source;
  if (forcing && *forcing) source = (*forcing)(state.t);
  const VectorField* f_u = source ? &source->u : nullptr;
  const ScalarField* f_theta = source ? &source->theta : nullptr;
  const VectorField* f_d = source ? &source->d : nullptr;

  AdvanceResult result;
  VectorField v = state.u;
  for (int j = 0; j < cfg.picard_max; ++j) {
    DirectorField d = director_substep(state.d, v, cfg, f_d);
    ScalarField theta = temperature_substep(state.theta, v, d, model, cfg, f_theta);
    VectorField v_next = velocity_substep(state.u, theta, d, model, cfg, f_u);

    const double change = sobolev_norm(v_next - v, 0);
    const double scale = std::max(sobolev_norm(v_next, 0), 1.0);
    const double residual = change / scale;
    result.residuals.push_back(residual);
    if (!std::isfinite(residual)) break;
    if (cfg.splitting == Splitting::fully_explicit || residual <= cfg.picard_tol) {
      result.iterations = j + 1;
      result.state.u = std::move(v_next);
      result.state.theta = std::move(theta);
      result.state.d = std::move(d);
      result.state.t = state.t + cfg.dt;
      result.state.p = pressure_solve(result.state, model, cfg.dealias_on);
      return result;
    }
    v = std::move(v_next);
  }
  throw PicardFailure("Picard iteration did not converge within " +
                          std::to_string(cfg.picard_max) + " iterations at t = " +
                          std::to_string(state.t) + "; consider halving dt",
                      std::move(result.residuals));
}

}  // namespace nematic
