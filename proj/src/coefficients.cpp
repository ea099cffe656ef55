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

#include "nematic/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nematic/error.hpp"

namespace nematic {

ScalarLaw saturating_law(double lambda_bar, double a) {
  if (!(lambda_bar > 0.0) || !(a > 0.0)) {
    throw InvalidArgument("saturating_law: lambda_bar and a must be positive");
  }
  ScalarLaw law;
  law.value = [=](double t) { return -lambda_bar * std::expm1(-a * t); };
  law.d1 = [=](double t) { return lambda_bar * a * std::exp(-a * t); };
  law.d2 = [=](double t) { return -lambda_bar * a * a * std::exp(-a * t); };
  // (1/lambda_bar) [theta + (1/a) ln(1 - e^{-a theta})]
  law.inverse_primitive = [=](double t) {
    return (t + std::log(-std::expm1(-a * t)) / a) / lambda_bar;
  };
  return law;
}

ScalarLaw decaying_law(double lo, double hi) {
  const double span = hi - lo;
  ScalarLaw law;
  law.value = [=](double t) { return lo + span * std::exp(-t); };
  law.d1 = [=](double t) { return -span * std::exp(-t); };
  law.d2 = [=](double t) { return span * std::exp(-t); };
  return law;
}

ScalarLaw constant_law(double c) {
  ScalarLaw law;
  law.value = [=](double) { return c; };
  law.d1 = [](double) { return 0.0; };
  law.d2 = [](double) { return 0.0; };
  if (c != 0.0) law.inverse_primitive = [=](double t) { return t / c; };
  return law;
}

ScalarLaw linear_law(double c) {
  ScalarLaw law;
  law.value = [=](double t) { return c * t; };
  law.d1 = [=](double) { return c; };
  law.d2 = [](double) { return 0.0; };
  law.inverse_primitive = [=](double t) { return std::log(t) / c; };
  return law;
}

CoefficientModel::CoefficientModel(std::string name, ScalarLaw mu, ScalarLaw lambda,
                                   CoefficientBounds bounds, double theta_floor,
                                   Validation validation)
    : name_(std::move(name)),
      mu_(std::move(mu)),
      lambda_(std::move(lambda)),
      bounds_(bounds),
      theta_floor_(theta_floor),
      validation_(validation) {
  if (!mu_.value || !mu_.d1 || !mu_.d2 || !lambda_.value || !lambda_.d1 || !lambda_.d2) {
    throw InvalidArgument("coefficient model '" + name_ + "': incomplete law");
  }
  if (!(theta_floor_ > 0.0)) {
    throw InvalidArgument("coefficient model '" + name_ + "': theta_floor must be positive");
  }
  if (validation_ == Validation::strict) {
    const auto report = validate_assumptions(*this, uniform_samples(100.0, 1e-2));
    if (!report.passed) {
      throw InvalidArgument("coefficient model '" + name_ + "' violates " +
                            report.violations().front());
    }
  }
}

CoefficientModel CoefficientModel::builtin(double theta_floor, double lambda_bar, double a,
                                           double mu_lo, double mu_hi) {
  if (!(mu_lo > 0.0) || !(mu_hi >= mu_lo)) {
    throw InvalidArgument("builtin model: need 0 < mu_lo <= mu_hi");
  }
  CoefficientBounds b;
  b.mu_lo = mu_lo;
  b.mu_hi = mu_hi;
  b.mu_d1_max = mu_hi - mu_lo;
  b.mu_d2_max = mu_hi - mu_lo;
  b.lambda_max = lambda_bar;
  b.lambda_d1_max = lambda_bar * a;
  b.lambda_d2_max = lambda_bar * a * a;
  return CoefficientModel("builtin", decaying_law(mu_lo, mu_hi), saturating_law(lambda_bar, a),
                          b, theta_floor, Validation::strict);
}

CoefficientModel CoefficientModel::constant(double mu, double lambda, double theta_floor) {
  if (!(mu > 0.0) || !(lambda > 0.0)) {
    throw InvalidArgument("constant model: mu and lambda must be positive");
  }
  CoefficientBounds b;
  b.mu_lo = mu;
  b.mu_hi = mu;
  b.lambda_max = lambda;
  return CoefficientModel("constant", constant_law(mu), constant_law(lambda), b, theta_floor,
                          Validation::relaxed);
}

double CoefficientModel::capital_lambda_unchecked(double theta) const {
  if (lambda_.inverse_primitive) {
    return lambda_.inverse_primitive(theta) - lambda_.inverse_primitive(theta_floor_);
  }
  if (theta == theta_floor_) return 0.0;
  const auto integrand = [this](double s) { return 1.0 / lambda_.value(s); };
  const double lo = std::min(theta, theta_floor_);
  const double hi = std::max(theta, theta_floor_);
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, lo, hi, 20, 1e-12);
  return theta >= theta_floor_ ? value : -value;
}

std::vector<std::string> ValidationReport::violations() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.ok) out.push_back(c.name);
  }
  return out;
}

std::vector<double> uniform_samples(double hi, double step) {
  if (!(hi >= 0.0) || !(step > 0.0)) throw InvalidArgument("uniform_samples: bad range");
  const auto count = static_cast<std::size_t>(std::floor(hi / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<double>(i) * step;
  return out;
}

ValidationReport validate_assumptions(const CoefficientModel& model,
                                      std::span<const double> theta_samples) {
  if (theta_samples.empty()) throw InvalidArgument("validate_assumptions: empty sample set");
  for (double t : theta_samples) {
    if (!(t >= 0.0)) {
      throw InvalidArgument("validate_assumptions: negative temperature sample " +
                            std::to_string(t));
    }
  }
  std::vector<double> samples(theta_samples.begin(), theta_samples.end());
  samples.push_back(0.0);
  samples.push_back(model.theta_floor());

  const auto& b = model.bounds();
  constexpr double inf = std::numeric_limits<double>::infinity();
  double lam_hi = inf, lam_d1_lo = inf, lam_d1_hi = inf, lam_d2 = inf;
  double mu_lo = inf, mu_hi = inf, mu_d1 = inf, mu_d2 = inf;
  for (double t : samples) {
    lam_hi = std::min(lam_hi, b.lambda_max - model.lambda(t));
    lam_d1_lo = std::min(lam_d1_lo, model.lambda_d1(t));
    lam_d1_hi = std::min(lam_d1_hi, b.lambda_d1_max - model.lambda_d1(t));
    lam_d2 = std::min(lam_d2, b.lambda_d2_max - std::abs(model.lambda_d2(t)));
    mu_lo = std::min(mu_lo, model.mu(t) - b.mu_lo);
    mu_hi = std::min(mu_hi, b.mu_hi - model.mu(t));
    mu_d1 = std::min(mu_d1, b.mu_d1_max - std::abs(model.mu_d1(t)));
    mu_d2 = std::min(mu_d2, b.mu_d2_max - std::abs(model.mu_d2(t)));
  }

  ValidationReport report;
  const auto add = [&](std::string name, double margin, bool ok) {
    report.checks.push_back({std::move(name), margin, ok});
  };
  const double lam0 = model.lambda(0.0);
  const double lam0_d1 = model.lambda_d1(0.0);
  add("lambda(0) = 0", 1e-12 - std::abs(lam0), std::abs(lam0) <= 1e-12);
  add("lambda'(0) > 0", lam0_d1, lam0_d1 > 0.0);
  add("lambda(theta) <= lambda_max", lam_hi, lam_hi >= 0.0);
  add("lambda'(theta) >= 0", lam_d1_lo, lam_d1_lo >= 0.0);
  add("lambda'(theta) <= lambda_d1_max", lam_d1_hi, lam_d1_hi >= 0.0);
  add("|lambda''(theta)| <= lambda_d2_max", lam_d2, lam_d2 >= 0.0);
  add("mu(theta) >= mu_lo", mu_lo, mu_lo >= 0.0 && b.mu_lo > 0.0);
  add("mu(theta) <= mu_hi", mu_hi, mu_hi >= 0.0);
  add("|mu'(theta)| <= mu_d1_max", mu_d1, mu_d1 >= 0.0);
  add("|mu''(theta)| <= mu_d2_max", mu_d2, mu_d2 >= 0.0);
  report.passed = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const BoundCheck& c) { return c.ok; });
  return report;
}

double capital_lambda_eval(const CoefficientModel& model, double theta) {
  if (!(theta >= model.theta_floor())) {
    throw InvalidArgument("capital_lambda_eval: theta " + std::to_string(theta) +
                          " below floor " + std::to_string(model.theta_floor()));
  }
  return model.capital_lambda_unchecked(theta);
}

double gronwall_constant_K(const CoefficientModel& model) {
  const double lam = model.lambda(model.theta_floor());
  if (!(lam > 0.0)) {
    throw InvalidArgument("gronwall_constant_K: lambda(theta_floor) <= 0, invalid model");
  }
  return 1.0 / lam;
}

GinzburgLandau ginzburg_landau(const std::array<double, 3>& d) {
  const double s = d[0] * d[0] + d[1] * d[1] + d[2] * d[2] - 1.0;
  return {s * s, {s * d[0], s * d[1], s * d[2]}};
}

}  // namespace nematic
