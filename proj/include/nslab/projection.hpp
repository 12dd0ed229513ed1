#pragma once

#include <vector>

#include "nslab/field.hpp"

namespace nslab {

/// phi1(z) = (e^z - 1) / z with phi1(0) = 1. Below |z| = kPhi1SeriesCutoff a
/// four-term Taylor series is used.
inline constexpr double kPhi1SeriesCutoff = 1e-5;
double phi1(double z);

enum class MultiplierKind { Heat, Phi1, InverseHelmholtz };

/// Per-mode real factors of a diagonal Fourier multiplier with argument
/// t * mu. All kinds equal 1 at k = 0 and lie in (0, 1] elsewhere.
///   Heat:             exp(-4 pi^2 mu t |k|^2)
///   Phi1:             phi1(-4 pi^2 mu t |k|^2)
///   InverseHelmholtz: 1 / (1 + 4 pi^2 mu t |k|^2)
struct MultiplierTable {
  GridSpec grid;
  MultiplierKind kind;
  double t_mu;
  std::vector<double> factors;

  /// Throws std::invalid_argument for negative t or mu.
  static MultiplierTable make(const GridSpec& g, MultiplierKind kind, double t, double mu);

  SpectralField apply(SpectralField v) const;
};

/// Leray projection onto the discrete divergence-free subspace:
/// u(k) <- u(k) - k (k . u(k)) / |k|^2 for k != 0, mean untouched, Nyquist
/// row and column removed. Sets divfree.
SpectralField leray_project(SpectralField f);

/// Stokes semigroup exp(t mu A); on divergence-free fields A is the Laplacian.
/// Throws std::invalid_argument if v is not flagged divergence-free.
SpectralField heat_semigroup(SpectralField v, double t, double mu);

/// phi1(t mu A) applied to a divergence-free field.
SpectralField phi1_apply(SpectralField v, double t, double mu);

/// (I - t mu Laplacian)^{-1}; defined on any field.
SpectralField inverse_helmholtz(SpectralField v, double t, double mu);

}  // namespace nslab
