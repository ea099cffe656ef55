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

#include "nematic/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "nematic/error.hpp"

namespace nematic {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool beyond(const Grid& g, int ix, int iy, int iz, int limit_times_denominator, int denominator) {
  // |m| * denominator > limit  <=>  |m| > limit / denominator
  const auto over = [&](int m) { return std::abs(m) * denominator > limit_times_denominator; };
  return over(ix) || over(g.mode(iy)) || over(g.mode(iz));
}

}  // namespace

struct Grid::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

Grid::Grid(int n, double half_width)
    : n_(n), half_width_(half_width), k_full_(n), k_deriv_(n), plans_(std::make_unique<Plans>()) {
  const double k0 = std::numbers::pi / half_width;
  for (int i = 0; i < n; ++i) {
    k_full_[i] = k0 * mode(i);
    k_deriv_[i] = (i == n / 2) ? 0.0 : k_full_[i];
  }
  double* in = fftw_alloc_real(physical_size());
  fftw_complex* out = fftw_alloc_complex(spectral_size());
  {
    std::lock_guard lock(planner_mutex());
    plans_->r2c = fftw_plan_dft_r2c_3d(n, n, n, in, out, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_->c2r = fftw_plan_dft_c2r_3d(n, n, n, out, in, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  fftw_free(in);
  fftw_free(out);
  if (!plans_->r2c || !plans_->c2r) throw NematicError("FFTW planning failed");
}

Grid::~Grid() = default;

std::shared_ptr<const Grid> Grid::create(int n, double half_width) {
  if (n < 8 || n % 2 != 0) {
    throw InvalidArgument("grid.n must be even and >= 8, got " + std::to_string(n));
  }
  if (!(half_width > 0.0)) throw InvalidArgument("grid.D must be positive");
  return std::shared_ptr<const Grid>(new Grid(n, half_width));
}

void Grid::forward(std::span<const double> in, std::span<Complex> out) const {
  if (in.size() != physical_size() || out.size() != spectral_size()) {
    throw InvalidArgument("Grid::forward: size mismatch");
  }
  // r2c transforms preserve their input.
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(physical_size());
  for (auto& c : out) c *= scale;
}

void Grid::backward(std::span<const Complex> in, std::span<double> out) const {
  if (in.size() != spectral_size() || out.size() != physical_size()) {
    throw InvalidArgument("Grid::backward: size mismatch");
  }
  std::vector<Complex> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.data());
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!a.same_as(b)) throw InvalidArgument(std::string(where) + ": grid mismatch");
}

// --- ScalarField ---

ScalarField::ScalarField(GridPtr grid) : grid_(std::move(grid)) {
  if (!grid_) throw InvalidArgument("ScalarField: null grid");
  coeffs_.assign(grid_->spectral_size(), Complex{});
}

ScalarField ScalarField::from_physical(GridPtr grid, std::span<const double> values) {
  ScalarField f(std::move(grid));
  f.grid_->forward(values, f.coeffs_);
  return f;
}

ScalarField ScalarField::constant(GridPtr grid, double c) {
  ScalarField f(std::move(grid));
  f.coeffs_[0] = c;
  return f;
}

RealArray ScalarField::to_physical() const {
  RealArray out(grid_->physical_size());
  grid_->backward(coeffs_, out);
  return out;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) { return axpy(1.0, o); }
ScalarField& ScalarField::operator-=(const ScalarField& o) { return axpy(-1.0, o); }

ScalarField& ScalarField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

ScalarField& ScalarField::axpy(double s, const ScalarField& o) {
  require_same_grid(*grid_, *o.grid_, "ScalarField::axpy");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * o.coeffs_[i];
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

// --- VectorField ---

VectorField::VectorField(GridPtr grid) : c_{ScalarField(grid), ScalarField(grid), ScalarField(grid)} {}

VectorField VectorField::from_physical(GridPtr grid, const RealVector& values) {
  VectorField v;
  for (int i = 0; i < 3; ++i) v.c_[i] = ScalarField::from_physical(grid, values[i]);
  return v;
}

RealVector VectorField::to_physical() const {
  return {c_[0].to_physical(), c_[1].to_physical(), c_[2].to_physical()};
}

VectorField& VectorField::operator+=(const VectorField& o) { return axpy(1.0, o); }
VectorField& VectorField::operator-=(const VectorField& o) { return axpy(-1.0, o); }

VectorField& VectorField::operator*=(double s) {
  for (auto& c : c_) c *= s;
  return *this;
}

VectorField& VectorField::axpy(double s, const VectorField& o) {
  for (int i = 0; i < 3; ++i) c_[i].axpy(s, o.c_[i]);
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

// --- differential operators ---

ScalarField partial(const ScalarField& f, int axis) {
  const Grid& g = f.grid();
  ScalarField out(f.grid_ptr());
  for_each_mode(g, [&](int ix, int iy, int iz, std::size_t idx) {
    const int index = axis == 0 ? ix : (axis == 1 ? iy : iz);
    out[idx] = Complex(0.0, g.k_deriv(index)) * f[idx];
  });
  return out;
}

VectorField gradient(const ScalarField& f) {
  VectorField out(f.grid_ptr());
  for (int a = 0; a < 3; ++a) out[a] = partial(f, a);
  return out;
}

ScalarField divergence(const VectorField& v) {
  const Grid& g = v.grid();
  ScalarField out(v.grid_ptr());
  for_each_mode(g, [&](int ix, int iy, int iz, std::size_t idx) {
    out[idx] = Complex(0.0, 1.0) *
               (g.k_deriv(ix) * v[0][idx] + g.k_deriv(iy) * v[1][idx] + g.k_deriv(iz) * v[2][idx]);
  });
  return out;
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  ScalarField out(f.grid_ptr());
  for_each_mode(g, [&](int ix, int iy, int iz, std::size_t idx) {
    const double k2 = g.k(ix) * g.k(ix) + g.k(iy) * g.k(iy) + g.k(iz) * g.k(iz);
    out[idx] = -k2 * f[idx];
  });
  return out;
}

VectorField laplacian(const VectorField& v) {
  VectorField out;
  for (int a = 0; a < 3; ++a) out[a] = laplacian(v[a]);
  return out;
}

RealTensor gradient_physical(const VectorField& v) {
  RealTensor t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t[i][j] = partial(v[j], i).to_physical();
  }
  return t;
}

VectorField divergence_of_tensor(GridPtr grid, const RealTensor& t, bool dealias_on) {
  const Grid& g = *grid;
  std::array<std::array<ScalarField, 3>, 3> hat;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      hat[i][j] = ScalarField::from_physical(grid, t[i][j]);
      if (dealias_on) dealias_in_place(hat[i][j]);
    }
  }
  VectorField out(grid);
  for_each_mode(g, [&](int ix, int iy, int iz, std::size_t idx) {
    const double k[3] = {g.k_deriv(ix), g.k_deriv(iy), g.k_deriv(iz)};
    for (int j = 0; j < 3; ++j) {
      Complex s{};
      for (int i = 0; i < 3; ++i) {
        const auto& entry = i <= j ? hat[i][j] : hat[j][i];
        s += k[i] * entry[idx];
      }
      out[j][idx] = Complex(0.0, 1.0) * s;
    }
  });
  return out;
}

ScalarField helmholtz_solve(const ScalarField& f, double factor) {
  const Grid& g = f.grid();
  ScalarField out(f.grid_ptr());
  for_each_mode(g, [&](int ix, int iy, int iz, std::size_t idx) {
    const double k2 = g.k(ix) * g.k(ix) + g.k(iy) * g.k(iy) + g.k(iz) * g.k(iz);
    out[idx] = f[idx] / (1.0 + factor * k2);
  });
  return out;
}

VectorField helmholtz_solve(const VectorField& f, double factor) {
  VectorField out;
  for (int a = 0; a < 3; ++a) out[a] = helmholtz_solve(f[a], factor);
  return out;
}

VectorField leray_project(const VectorField& v) {
  const Grid& g = v.grid();
  VectorField out = v;
  for_each_mode(g, [&](int ix, int iy, int iz, std::size_t idx) {
    const double k[3] = {g.k_deriv(ix), g.k_deriv(iy), g.k_deriv(iz)};
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    if (k2 == 0.0) return;
    const Complex kv = k[0] * v[0][idx] + k[1] * v[1][idx] + k[2] * v[2][idx];
    for (int a = 0; a < 3; ++a) out[a][idx] -= k[a] * kv / k2;
  });
  return out;
}

double divergence_residual(const VectorField& v) {
  const Grid& g = v.grid();
  double worst = 0.0;
  for_each_mode(g, [&](int ix, int iy, int iz, std::size_t idx) {
    const Complex kv =
        g.k_deriv(ix) * v[0][idx] + g.k_deriv(iy) * v[1][idx] + g.k_deriv(iz) * v[2][idx];
    worst = std::max(worst, std::abs(kv));
  });
  return worst;
}

void dealias_in_place(ScalarField& f, DealiasRule rule) {
  const Grid& g = f.grid();
  const int denominator = rule == DealiasRule::two_thirds ? 3 : 4;
  for_each_mode(g, [&](int ix, int iy, int iz, std::size_t idx) {
    if (beyond(g, ix, iy, iz, g.n(), denominator)) f[idx] = 0.0;
  });
}

void dealias_in_place(VectorField& v, DealiasRule rule) {
  for (int a = 0; a < 3; ++a) dealias_in_place(v[a], rule);
}

ScalarField dealias(const ScalarField& f, DealiasRule rule) {
  ScalarField out = f;
  dealias_in_place(out, rule);
  return out;
}

VectorField dealias(const VectorField& v, DealiasRule rule) {
  VectorField out = v;
  dealias_in_place(out, rule);
  return out;
}

void truncate_in_place(ScalarField& f, int cutoff) {
  const Grid& g = f.grid();
  for_each_mode(g, [&](int ix, int iy, int iz, std::size_t idx) {
    if (beyond(g, ix, iy, iz, cutoff, 1)) f[idx] = 0.0;
  });
}

void truncate_in_place(VectorField& v, int cutoff) {
  for (int a = 0; a < 3; ++a) truncate_in_place(v[a], cutoff);
}

double energy_above(const ScalarField& f, int cutoff) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for_each_mode(g, [&](int ix, int iy, int iz, std::size_t idx) {
    if (beyond(g, ix, iy, iz, cutoff, 1)) sum += g.hermitian_weight(ix) * std::norm(f[idx]);
  });
  return sum * g.volume();
}

// --- norms ---

double derivative_norm_sq(const ScalarField& f, int order, int s) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for_each_mode(g, [&](int ix, int iy, int iz, std::size_t idx) {
    const double k2 = g.k(ix) * g.k(ix) + g.k(iy) * g.k(iy) + g.k(iz) * g.k(iz);
    double w = g.hermitian_weight(ix);
    for (int i = 0; i < order; ++i) w *= k2;
    for (int i = 0; i < s; ++i) w *= 1.0 + k2;
    sum += w * std::norm(f[idx]);
  });
  return sum * g.volume();
}

double derivative_norm_sq(const VectorField& v, int order, int s) {
  return derivative_norm_sq(v[0], order, s) + derivative_norm_sq(v[1], order, s) +
         derivative_norm_sq(v[2], order, s);
}

double sobolev_norm_sq(const ScalarField& f, int s) { return derivative_norm_sq(f, 0, s); }
double sobolev_norm_sq(const VectorField& v, int s) { return derivative_norm_sq(v, 0, s); }
double sobolev_norm(const ScalarField& f, int s) { return std::sqrt(sobolev_norm_sq(f, s)); }
double sobolev_norm(const VectorField& v, int s) { return std::sqrt(sobolev_norm_sq(v, s)); }

double inner_product(const ScalarField& f, const ScalarField& h) {
  require_same_grid(f.grid(), h.grid(), "inner_product");
  const Grid& g = f.grid();
  double sum = 0.0;
  for_each_mode(g, [&](int ix, int, int, std::size_t idx) {
    sum += g.hermitian_weight(ix) * (f[idx] * std::conj(h[idx])).real();
  });
  return sum * g.volume();
}

double inner_product(const VectorField& f, const VectorField& h) {
  return inner_product(f[0], h[0]) + inner_product(f[1], h[1]) + inner_product(f[2], h[2]);
}

double integrate(const Grid& grid, std::span<const double> values) {
  if (values.size() != grid.physical_size()) throw InvalidArgument("integrate: size mismatch");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * grid.cell_volume();
}

}  // namespace nematic
