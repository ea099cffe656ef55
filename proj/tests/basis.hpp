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

// Orthonormal solenoidal test basis: cos and sin of k.x times a polarization
// orthogonal to k, for k = (1,0,0), (0,1,0), (1,1,0). The third wavevector is
// the sum of the first two, so the advection triads do not vanish.

#include <cmath>
#include <numbers>
#include <vector>

#include "nematic/spectral.hpp"
#include "oracles.hpp"

namespace oracle {

inline std::vector<nematic::VectorField> triad_basis(const nematic::GridPtr& g) {
  const double pi = std::numbers::pi;
  const double D = g->half_width();
  const double s = pi / D;
  const double norm = 1.0 / std::sqrt(4.0 * D * D * D);  // |cos(k.x)|^2 = (2D)^3 / 2
  struct Mode {
    std::array<int, 3> k;
    std::array<double, 3> a;
  };
  const double r2 = 1.0 / std::sqrt(2.0), r3 = 1.0 / std::sqrt(3.0);
  const Mode modes[] = {{{1, 0, 0}, {0.0, r2, r2}}, {{0, 1, 0}, {r2, 0.0, r2}}, {{1, 1, 0}, {r3, -r3, r3}}};
  std::vector<nematic::VectorField> basis;
  for (const auto& m : modes) {
    for (int trig = 0; trig < 2; ++trig) {
      const auto comp = [=](int c) {
        return [=](double x, double y, double z) {
          const double ph = s * (m.k[0] * x + m.k[1] * y + m.k[2] * z);
          return norm * m.a[c] * (trig == 0 ? std::cos(ph) : std::sin(ph));
        };
      };
      basis.push_back(vector_field(g, comp(0), comp(1), comp(2)));
    }
  }
  return basis;
}

}  // namespace oracle
