#include "nslab/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace nslab {

using detail::FftDirection;
using detail::fft2d_inplace;

namespace {

void check_shape(std::size_t got, const GridSpec& g, const char* what) {
  if (got != g.size()) {
    throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(g.size()) +
                                " entries, got " + std::to_string(got));
  }
}

// Padded-grid index of coarse FFT index i (non-Nyquist).
int padded_index(const GridSpec& g, int i) {
  const int k = g.wavenumber(i);
  return k >= 0 ? k : g.padded_n() + k;
}

}  // namespace

std::vector<Complex> forward_scalar(std::span<const double> samples, const GridSpec& g) {
  check_shape(samples.size(), g, "forward");
  std::vector<Complex> out(samples.begin(), samples.end());
  fft2d_inplace(out, g.n(), FftDirection::Forward);
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& z : out) z *= scale;
  return out;
}

std::vector<double> inverse_scalar(std::span<const Complex> coeffs, const GridSpec& g) {
  check_shape(coeffs.size(), g, "inverse");
  std::vector<Complex> work(coeffs.begin(), coeffs.end());
  fft2d_inplace(work, g.n(), FftDirection::Backward);
  double residue = 0.0;
  for (const auto& z : work) residue = std::max(residue, std::abs(z.imag()));
  if (residue > kHermitianTolerance * l2_norm(coeffs)) {
    throw std::domain_error("inverse: spectrum is not Hermitian symmetric (imaginary residue " +
                            std::to_string(residue) + ")");
  }
  std::vector<double> out(work.size());
  for (std::size_t i = 0; i < work.size(); ++i) out[i] = work[i].real();
  return out;
}

SpectralField forward(const PhysicalField& f, const GridSpec& g) {
  if (!(f.grid == g)) throw std::invalid_argument("forward: field grid does not match");
  SpectralField v(g);
  v.c[0] = forward_scalar(f.u1, g);
  v.c[1] = forward_scalar(f.u2, g);
  return v;
}

PhysicalField inverse(const SpectralField& v, const GridSpec& g) {
  if (!(v.grid == g)) throw std::invalid_argument("inverse: field grid does not match");
  PhysicalField f(g);
  f.u1 = inverse_scalar(v.c[0], g);
  f.u2 = inverse_scalar(v.c[1], g);
  return f;
}

std::vector<Complex> derivative(std::span<const Complex> coeffs, const GridSpec& g, int axis) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("derivative: axis must be 1 or 2");
  check_shape(coeffs.size(), g, "derivative");
  const int n = g.n();
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<Complex> out(coeffs.size());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::size_t idx = g.index(i, j);
      if (g.is_nyquist(i) || g.is_nyquist(j)) {
        out[idx] = 0.0;
        continue;
      }
      const double k = axis == 1 ? g.wavenumber(i) : g.wavenumber(j);
      out[idx] = Complex(0.0, two_pi * k) * coeffs[idx];
    }
  }
  return out;
}

SpectralField derivative(const SpectralField& v, int axis) {
  SpectralField out(v.grid);
  out.c[0] = derivative(v.c[0], v.grid, axis);
  out.c[1] = derivative(v.c[1], v.grid, axis);
  return out;
}

std::vector<Complex> to_padded_physical(std::span<const Complex> coeffs, const GridSpec& g) {
  check_shape(coeffs.size(), g, "to_padded_physical");
  const int n = g.n();
  const int m = g.padded_n();
  std::vector<Complex> padded(static_cast<std::size_t>(m) * m);
  for (int j = 0; j < n; ++j) {
    if (g.is_nyquist(j)) continue;
    const std::size_t row = static_cast<std::size_t>(padded_index(g, j)) * m;
    for (int i = 0; i < n; ++i) {
      if (g.is_nyquist(i)) continue;
      padded[row + padded_index(g, i)] = coeffs[g.index(i, j)];
    }
  }
  fft2d_inplace(padded, m, FftDirection::Backward);
  return padded;
}

void from_padded_physical(std::span<Complex> samples, const GridSpec& g, std::span<Complex> out) {
  const int n = g.n();
  const int m = g.padded_n();
  check_shape(out.size(), g, "from_padded_physical");
  fft2d_inplace(samples, m, FftDirection::Forward);
  const double scale = 1.0 / (static_cast<double>(m) * m);
  for (int j = 0; j < n; ++j) {
    const std::size_t row = static_cast<std::size_t>(padded_index(g, j)) * m;
    for (int i = 0; i < n; ++i) {
      const std::size_t idx = g.index(i, j);
      if (g.is_nyquist(i) || g.is_nyquist(j)) {
        out[idx] = 0.0;
      } else {
        out[idx] = samples[row + padded_index(g, i)] * scale;
      }
    }
  }
}

std::vector<Complex> dealiased_product(std::span<const Complex> a, std::span<const Complex> b,
                                       const GridSpec& g) {
  auto pa = to_padded_physical(a, g);
  const auto pb = to_padded_physical(b, g);
  for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
  std::vector<Complex> out(g.size());
  from_padded_physical(pa, g, out);
  return out;
}

}  // namespace nslab
