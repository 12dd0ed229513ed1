#include "nslab/projection.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nslab {

namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

void check_time_viscosity(double t, double mu) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("time must be finite and >= 0");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::invalid_argument("viscosity must be finite and >= 0");
}

void require_divfree(const SpectralField& v, const char* op) {
  if (!v.divfree) {
    throw std::invalid_argument(std::string(op) + ": field is not flagged divergence-free");
  }
}

}  // namespace

double phi1(double z) {
  if (std::abs(z) < kPhi1SeriesCutoff) {
    return 1.0 + z * (1.0 / 2.0 + z * (1.0 / 6.0 + z * (1.0 / 24.0)));
  }
  return std::expm1(z) / z;
}

MultiplierTable MultiplierTable::make(const GridSpec& g, MultiplierKind kind, double t, double mu) {
  check_time_viscosity(t, mu);
  MultiplierTable table{g, kind, t * mu, std::vector<double>(g.size())};
  const int n = g.n();
  for (int j = 0; j < n; ++j) {
    const int ky = g.wavenumber(j);
    for (int i = 0; i < n; ++i) {
      const int kx = g.wavenumber(i);
      const double z = -kFourPiSq * table.t_mu * static_cast<double>(kx * kx + ky * ky);
      double f = 1.0;
      switch (kind) {
        case MultiplierKind::Heat: f = std::exp(z); break;
        case MultiplierKind::Phi1: f = phi1(z); break;
        case MultiplierKind::InverseHelmholtz: f = 1.0 / (1.0 - z); break;
      }
      table.factors[g.index(i, j)] = f;
    }
  }
  return table;
}

SpectralField MultiplierTable::apply(SpectralField v) const {
  if (!(v.grid == grid)) throw std::invalid_argument("multiplier grid does not match field");
  for (auto& comp : v.c) {
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= factors[i];
  }
  return v;
}

SpectralField leray_project(SpectralField f) {
  const GridSpec& g = f.grid;
  const int n = g.n();
  for (int j = 0; j < n; ++j) {
    const double ky = g.wavenumber(j);
    for (int i = 0; i < n; ++i) {
      const double kx = g.wavenumber(i);
      const std::size_t idx = g.index(i, j);
      if (g.is_nyquist(i) || g.is_nyquist(j)) {
        f.c[0][idx] = 0.0;
        f.c[1][idx] = 0.0;
        continue;
      }
      if (i == 0 && j == 0) continue;
      const Complex kdotu = kx * f.c[0][idx] + ky * f.c[1][idx];
      const Complex s = kdotu / (kx * kx + ky * ky);
      f.c[0][idx] -= kx * s;
      f.c[1][idx] -= ky * s;
    }
  }
  f.divfree = true;
  return f;
}

SpectralField heat_semigroup(SpectralField v, double t, double mu) {
  require_divfree(v, "heat_semigroup");
  check_time_viscosity(t, mu);
  if (t == 0.0 || mu == 0.0) return v;
  [[maybe_unused]] const double before = l2_norm(v);
  v = MultiplierTable::make(v.grid, MultiplierKind::Heat, t, mu).apply(std::move(v));
  assert(l2_norm(v) <= before);
  return v;
}

SpectralField phi1_apply(SpectralField v, double t, double mu) {
  require_divfree(v, "phi1_apply");
  check_time_viscosity(t, mu);
  if (t == 0.0 || mu == 0.0) return v;
  return MultiplierTable::make(v.grid, MultiplierKind::Phi1, t, mu).apply(std::move(v));
}

SpectralField inverse_helmholtz(SpectralField v, double t, double mu) {
  check_time_viscosity(t, mu);
  if (t == 0.0 || mu == 0.0) return v;
  return MultiplierTable::make(v.grid, MultiplierKind::InverseHelmholtz, t, mu).apply(std::move(v));
}

}  // namespace nslab
