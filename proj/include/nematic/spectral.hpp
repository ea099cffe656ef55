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
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace nematic {

using Complex = std::complex<double>;
using RealArray = std::vector<double>;
using RealVector = std::array<RealArray, 3>;
/// Physical-space 3x3 tensor field; entry [i][j].
using RealTensor = std::array<std::array<RealArray, 3>, 3>;

/// Periodic box [-D, D]^3 sampled on n^3 points, with the real-to-complex
/// Fourier layout of FFTW. Physical arrays are x-fastest: index x + n*(y + n*z).
/// Spectral arrays are (z, y, x) with x holding the n/2 + 1 non-negative modes.
class Grid {
 public:
  static std::shared_ptr<const Grid> create(int n, double half_width = std::numbers::pi);
  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int n() const { return n_; }
  int nx_half() const { return n_ / 2 + 1; }
  double half_width() const { return half_width_; }
  double spacing() const { return 2.0 * half_width_ / n_; }
  double volume() const { return 8.0 * half_width_ * half_width_ * half_width_; }
  double cell_volume() const { return spacing() * spacing() * spacing(); }
  std::size_t physical_size() const { return static_cast<std::size_t>(n_) * n_ * n_; }
  std::size_t spectral_size() const { return static_cast<std::size_t>(n_) * n_ * nx_half(); }

  /// Signed mode number in [-n/2, n/2) for an axis index.
  int mode(int index) const { return index < n_ / 2 ? index : index - n_; }
  /// Wavenumber (pi/D) * mode, used by the Laplacian and norms.
  double k(int index) const { return k_full_[index]; }
  /// Same as k() with the Nyquist entry zeroed; used by odd-order derivatives.
  double k_deriv(int index) const { return k_deriv_[index]; }
  double coordinate(int index) const { return -half_width_ + index * spacing(); }

  /// Weight of a half-spectrum column in Hermitian sums: 1 for the kx = 0 and
  /// Nyquist planes, 2 otherwise.
  double hermitian_weight(int ix) const { return (ix == 0 || ix == n_ / 2) ? 1.0 : 2.0; }

  /// Forward transform normalized so a constant c maps to a k = 0 coefficient c.
  void forward(std::span<const double> in, std::span<Complex> out) const;
  /// Inverse of forward(); `in` is not modified.
  void backward(std::span<const Complex> in, std::span<double> out) const;

  bool same_as(const Grid& other) const {
    return n_ == other.n_ && half_width_ == other.half_width_;
  }

 private:
  Grid(int n, double half_width);

  struct Plans;
  int n_;
  double half_width_;
  std::vector<double> k_full_;
  std::vector<double> k_deriv_;
  std::unique_ptr<Plans> plans_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Real scalar field stored by its Fourier coefficients.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(GridPtr grid);

  static ScalarField from_physical(GridPtr grid, std::span<const double> values);
  static ScalarField constant(GridPtr grid, double c);

  RealArray to_physical() const;

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  Complex& operator[](std::size_t i) { return coeffs_[i]; }
  const Complex& operator[](std::size_t i) const { return coeffs_[i]; }
  bool empty() const { return !grid_; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);
  /// this += s * o
  ScalarField& axpy(double s, const ScalarField& o);

 private:
  GridPtr grid_;
  std::vector<Complex> coeffs_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// Three-component real field (velocity or director).
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(GridPtr grid);

  static VectorField from_physical(GridPtr grid, const RealVector& values);
  RealVector to_physical() const;

  ScalarField& operator[](int i) { return c_[i]; }
  const ScalarField& operator[](int i) const { return c_[i]; }
  const Grid& grid() const { return c_[0].grid(); }
  const GridPtr& grid_ptr() const { return c_[0].grid_ptr(); }
  bool empty() const { return c_[0].empty(); }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
  VectorField& axpy(double s, const VectorField& o);

 private:
  std::array<ScalarField, 3> c_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

using DirectorField = VectorField;

/// Throws InvalidArgument unless both fields live on equal grids.
void require_same_grid(const Grid& a, const Grid& b, const char* where);

// --- differential operators (spectral, exact mode-wise) ---

VectorField gradient(const ScalarField& f);
ScalarField partial(const ScalarField& f, int axis);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);
/// Physical-space gradient tensor G[i][j] = d_i v_j.
RealTensor gradient_physical(const VectorField& v);
/// Divergence of a symmetric tensor given in physical space:
/// (div T)_j = sum_i d_i T_ij. Products are optionally dealiased first.
VectorField divergence_of_tensor(GridPtr grid, const RealTensor& t, bool dealias_on);

/// Solves (1 - factor * Laplacian) x = f mode-wise.
ScalarField helmholtz_solve(const ScalarField& f, double factor);
VectorField helmholtz_solve(const VectorField& f, double factor);

/// Orthogonal projection onto divergence-free fields; k = 0 is untouched.
VectorField leray_project(const VectorField& v);
/// Largest |k . u(k)| over all modes.
double divergence_residual(const VectorField& v);

enum class DealiasRule { two_thirds, one_half };

/// Zeroes modes with any |m_j| above n/3 (two_thirds) or n/4 (one_half).
ScalarField dealias(const ScalarField& f, DealiasRule rule = DealiasRule::two_thirds);
VectorField dealias(const VectorField& v, DealiasRule rule = DealiasRule::two_thirds);
void dealias_in_place(ScalarField& f, DealiasRule rule = DealiasRule::two_thirds);
void dealias_in_place(VectorField& v, DealiasRule rule = DealiasRule::two_thirds);

/// Zeroes modes with any |m_j| > cutoff.
void truncate_in_place(ScalarField& f, int cutoff);
void truncate_in_place(VectorField& v, int cutoff);
/// Energy (squared L2 norm) held in modes with any |m_j| > cutoff.
double energy_above(const ScalarField& f, int cutoff);

// --- norms ---

/// sum_k (1 + |k|^2)^s |k|^(2*order) |f(k)|^2 * volume.
/// order 0 gives the H^s norm squared; order 1 the H^s norm of the gradient, ...
double derivative_norm_sq(const ScalarField& f, int order, int s);
double derivative_norm_sq(const VectorField& v, int order, int s);
double sobolev_norm(const ScalarField& f, int s);
double sobolev_norm(const VectorField& v, int s);
double sobolev_norm_sq(const ScalarField& f, int s);
double sobolev_norm_sq(const VectorField& v, int s);
/// L2 pairing via Parseval.
double inner_product(const ScalarField& f, const ScalarField& g);
double inner_product(const VectorField& f, const VectorField& g);

/// Physical-space integral by the trapezoidal (spectrally exact) rule.
double integrate(const Grid& grid, std::span<const double> values);

/// Calls fn(ix, iy, iz, linear_index) for every spectral coefficient.
template <class Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
  const int n = g.n();
  const int nh = g.nx_half();
  std::size_t idx = 0;
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < nh; ++ix, ++idx) fn(ix, iy, iz, idx);
    }
  }
}

}  // namespace nematic
