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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nematic {

/// A smooth scalar function of temperature with its first two derivatives.
/// `inverse_primitive`, when present, is an antiderivative of 1/f.
struct ScalarLaw {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  std::function<double(double)> inverse_primitive;
};

/// lambda_bar * (1 - exp(-a*theta)); vanishes at zero and saturates at lambda_bar.
ScalarLaw saturating_law(double lambda_bar, double a);
/// lo + (hi - lo) * exp(-theta).
ScalarLaw decaying_law(double lo, double hi);
ScalarLaw constant_law(double c);
/// c * theta. Unbounded; only useful as a negative control.
ScalarLaw linear_law(double c);

struct CoefficientBounds {
  double mu_lo = 0.0;
  double mu_hi = 0.0;
  double mu_d1_max = 0.0;
  double mu_d2_max = 0.0;
  double lambda_max = 0.0;
  double lambda_d1_max = 0.0;
  double lambda_d2_max = 0.0;
};

enum class Validation { strict, relaxed };

/// Temperature-dependent viscosity mu and elastic coupling lambda, plus the
/// temperature floor anchoring the thermal potential. Immutable once built.
class CoefficientModel {
 public:
  /// Strict models are validated on a dense grid over [0, 100] at
  /// construction and throw InvalidArgument on the first violated bound.
  CoefficientModel(std::string name, ScalarLaw mu, ScalarLaw lambda,
                   CoefficientBounds bounds, double theta_floor,
                   Validation validation = Validation::strict);

  /// lambda = lambda_bar (1 - e^{-a theta}), mu = mu_lo + (mu_hi - mu_lo) e^{-theta}.
  static CoefficientModel builtin(double theta_floor = 1.0, double lambda_bar = 1.0,
                                  double a = 1.0, double mu_lo = 0.1,
                                  double mu_hi = 1.0);
  /// Constant mu and lambda. Violates lambda(0) = 0, so always relaxed.
  static CoefficientModel constant(double mu, double lambda, double theta_floor = 1.0);

  const std::string& name() const { return name_; }
  double theta_floor() const { return theta_floor_; }
  const CoefficientBounds& bounds() const { return bounds_; }
  bool relaxed() const { return validation_ == Validation::relaxed; }
  bool has_closed_form_potential() const { return static_cast<bool>(lambda_.inverse_primitive); }

  double mu(double theta) const { return mu_.value(theta); }
  double mu_d1(double theta) const { return mu_.d1(theta); }
  double mu_d2(double theta) const { return mu_.d2(theta); }
  double lambda(double theta) const { return lambda_.value(theta); }
  double lambda_d1(double theta) const { return lambda_.d1(theta); }
  double lambda_d2(double theta) const { return lambda_.d2(theta); }

  /// Thermal potential without the floor check; valid for any theta > 0
  /// where lambda is positive. Diagnostics use this to tolerate roundoff
  /// undershoot below the floor.
  double capital_lambda_unchecked(double theta) const;

 private:
  std::string name_;
  ScalarLaw mu_;
  ScalarLaw lambda_;
  CoefficientBounds bounds_;
  double theta_floor_;
  Validation validation_;
};

struct BoundCheck {
  std::string name;
  double margin;  // worst case over samples, >= 0 means satisfied
  bool ok;
};

struct ValidationReport {
  std::vector<BoundCheck> checks;
  bool passed = false;
  /// Names of the checks that failed, in declaration order.
  std::vector<std::string> violations() const;
};

/// Evaluates every coefficient assumption on the given samples. Zero and the
/// model's temperature floor are always included.
ValidationReport validate_assumptions(const CoefficientModel& model,
                                      std::span<const double> theta_samples);

/// Uniform samples 0, step, 2*step, ..., hi.
std::vector<double> uniform_samples(double hi, double step);

/// Lambda(theta) = integral from the floor to theta of 1/lambda.
/// Throws InvalidArgument below the floor.
double capital_lambda_eval(const CoefficientModel& model, double theta);

/// K = 1/lambda(theta_floor); makes K*theta - Lambda(theta) >= 0 above the floor.
double gronwall_constant_K(const CoefficientModel& model);

struct GinzburgLandau {
  double energy;               // W(d) = (|d|^2 - 1)^2
  std::array<double, 3> force; // (|d|^2 - 1) d = grad(W/4)
};

GinzburgLandau ginzburg_landau(const std::array<double, 3>& d);

}  // namespace nematic
