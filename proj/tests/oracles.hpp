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

// Independent reference computations used by the tests. Nothing here calls
// into the solver beyond building fields from sampled values.

#include <cmath>
#include <functional>
#include <random>

#include "nematic/spectral.hpp"

namespace oracle {

using Fn3 = std::function<double(double, double, double)>;

/// Samples f at the grid points, x-fastest.
inline nematic::RealArray sample(const nematic::Grid& g, const Fn3& f) {
  const int n = g.n();
  nematic::RealArray out(g.physical_size());
  std::size_t i = 0;
  for (int z = 0; z < n; ++z) {
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x, ++i) out[i] = f(g.coordinate(x), g.coordinate(y), g.coordinate(z));
    }
  }
  return out;
}

inline nematic::ScalarField field(const nematic::GridPtr& g, const Fn3& f) {
  return nematic::ScalarField::from_physical(g, sample(*g, f));
}

inline nematic::VectorField vector_field(const nematic::GridPtr& g, const Fn3& f1, const Fn3& f2,
                                         const Fn3& f3) {
  return nematic::VectorField::from_physical(g, {sample(*g, f1), sample(*g, f2), sample(*g, f3)});
}

/// Random physical values, uniform in [-1, 1].
inline nematic::RealArray random_values(const nematic::Grid& g, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  nematic::RealArray out(g.physical_size());
  for (double& v : out) v = u(rng);
  return out;
}

/// Random field with content only on modes |m_j| <= max_mode (no Nyquist).
inline nematic::ScalarField random_low_mode(const nematic::GridPtr& g, unsigned seed, int max_mode) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double s = std::numbers::pi / g->half_width();
  std::vector<std::array<double, 5>> terms;
  for (int a = -max_mode; a <= max_mode; ++a) {
    for (int b = -max_mode; b <= max_mode; ++b) {
      for (int c = 0; c <= max_mode; ++c) terms.push_back({double(a), double(b), double(c), u(rng), u(rng)});
    }
  }
  return field(g, [&](double x, double y, double z) {
    double v = 0.0;
    for (const auto& t : terms) {
      const double ph = s * (t[0] * x + t[1] * y + t[2] * z);
      v += t[3] * std::cos(ph) + t[4] * std::sin(ph);
    }
    return v;
  });
}

/// Max |a - b| over physical values.
inline double max_diff(const nematic::RealArray& a, const nematic::RealArray& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const nematic::RealArray& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

/// Adaptive Simpson quadrature with Richardson correction.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol,
                      int depth = 40) {
  const std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
          int d) {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        const double delta = left + right - whole;
        if (d <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
        return rec(lo, mid, flo, flm, fmid, left, eps / 2, d - 1) +
               rec(mid, hi, fmid, frm, fhi, right, eps / 2, d - 1);
      };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

}  // namespace oracle
