#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "nslab/grid.hpp"

namespace nslab {

using Complex = std::complex<double>;

/// Point samples of a two-component velocity field on the grid.
struct PhysicalField {
  GridSpec grid;
  std::vector<double> u1;
  std::vector<double> u2;

  explicit PhysicalField(GridSpec g)
      : grid(g), u1(g.size(), 0.0), u2(g.size(), 0.0) {}

  std::vector<double>& component(int c) { return c == 0 ? u1 : u2; }
  const std::vector<double>& component(int c) const { return c == 0 ? u1 : u2; }
};

/// Normalized Fourier coefficients of a two-component field.
///
/// Coefficients are scaled so that mode k = 0 holds the mean. `divfree` marks
/// membership of the discrete divergence-free subspace: k . u(k) = 0 for all
/// k and no content on the Nyquist row or column.
struct SpectralField {
  GridSpec grid;
  std::array<std::vector<Complex>, 2> c;
  bool divfree = false;

  explicit SpectralField(GridSpec g)
      : grid(g), c{std::vector<Complex>(g.size()), std::vector<Complex>(g.size())} {}

  std::vector<Complex>& operator[](int comp) { return c[comp]; }
  const std::vector<Complex>& operator[](int comp) const { return c[comp]; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// y += alpha * x. The divfree flag of y is kept only if both carry it.
void axpy(double alpha, const SpectralField& x, SpectralField& y);

/// Real part of the coefficient inner product; equals the L2(torus) inner
/// product of the represented functions by Parseval.
double inner(const SpectralField& a, const SpectralField& b);
double inner(std::span<const Complex> a, std::span<const Complex> b);

/// L2 norm over the unit torus, computed from coefficients.
double l2_norm(const SpectralField& v);
double l2_norm(std::span<const Complex> v);

/// L2 norm over the unit torus as sqrt(mean of squared samples).
double l2_norm(const PhysicalField& f);

bool all_finite(const SpectralField& v);

/// max_k |v(k) - conj(v(-k))| relative to the coefficient L2 norm.
double hermitian_defect(std::span<const Complex> v, const GridSpec& g);
double hermitian_defect(const SpectralField& v);

/// max over k of |2 pi i k . v(k)|, the largest spectral divergence amplitude.
double spectral_divergence_max(const SpectralField& v);

}  // namespace nslab
