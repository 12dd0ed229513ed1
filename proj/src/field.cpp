#include "nslab/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nslab {

namespace {

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("spectral fields live on different grids");
}

}  // namespace

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  axpy(1.0, o, *this);
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  axpy(-1.0, o, *this);
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& comp : c) {
    for (auto& z : comp) z *= s;
  }
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

void axpy(double alpha, const SpectralField& x, SpectralField& y) {
  require_same_grid(x, y);
  for (int comp = 0; comp < 2; ++comp) {
    const auto& xs = x.c[comp];
    auto& ys = y.c[comp];
    for (std::size_t i = 0; i < ys.size(); ++i) ys[i] += alpha * xs[i];
  }
  y.divfree = y.divfree && x.divfree;
}

double inner(std::span<const Complex> a, std::span<const Complex> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  }
  return s;
}

double inner(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  return inner(a.c[0], b.c[0]) + inner(a.c[1], b.c[1]);
}

double l2_norm(std::span<const Complex> v) { return std::sqrt(inner(v, v)); }

double l2_norm(const SpectralField& v) { return std::sqrt(inner(v, v)); }

double l2_norm(const PhysicalField& f) {
  double s = 0.0;
  for (int comp = 0; comp < 2; ++comp) {
    for (double x : f.component(comp)) s += x * x;
  }
  return std::sqrt(s / static_cast<double>(f.grid.size()));
}

bool all_finite(const SpectralField& v) {
  for (const auto& comp : v.c) {
    for (const auto& z : comp) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

double hermitian_defect(std::span<const Complex> v, const GridSpec& g) {
  const int n = g.n();
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Complex a = v[g.index(i, j)];
      const Complex b = v[g.index(g.mirror(i), g.mirror(j))];
      worst = std::max(worst, std::abs(a - std::conj(b)));
    }
  }
  const double scale = l2_norm(v);
  return scale > 0.0 ? worst / scale : worst;
}

double hermitian_defect(const SpectralField& v) {
  return std::max(hermitian_defect(v.c[0], v.grid), hermitian_defect(v.c[1], v.grid));
}

double spectral_divergence_max(const SpectralField& v) {
  const GridSpec& g = v.grid;
  const int n = g.n();
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    const double ky = g.wavenumber(j);
    for (int i = 0; i < n; ++i) {
      const double kx = g.wavenumber(i);
      const std::size_t idx = g.index(i, j);
      const Complex d = kx * v.c[0][idx] + ky * v.c[1][idx];
      worst = std::max(worst, 2.0 * std::numbers::pi * std::abs(d));
    }
  }
  return worst;
}

}  // namespace nslab
