#pragma once

#include <span>
#include <vector>

#include "nslab/field.hpp"
#include "nslab/grid.hpp"

namespace nslab {

/// Relative tolerance on the imaginary residue accepted by inverse().
inline constexpr double kHermitianTolerance = 1e-12;

/// Normalized forward transform of a velocity field: coefficients are the
/// samples' DFT divided by n^2. Throws std::invalid_argument on shape mismatch.
SpectralField forward(const PhysicalField& f, const GridSpec& g);

/// Samples of a spectral field. Throws std::domain_error if the field does
/// not represent a real function, i.e. the imaginary residue exceeds
/// kHermitianTolerance times the coefficient norm.
PhysicalField inverse(const SpectralField& v, const GridSpec& g);

std::vector<Complex> forward_scalar(std::span<const double> samples, const GridSpec& g);
std::vector<double> inverse_scalar(std::span<const Complex> coeffs, const GridSpec& g);

/// Spectral derivative along axis 1 (x) or 2 (y). The Nyquist row and column
/// are zeroed so the derivative of a real field stays real.
SpectralField derivative(const SpectralField& v, int axis);
std::vector<Complex> derivative(std::span<const Complex> coeffs, const GridSpec& g, int axis);

/// Coefficients of the pointwise product of two band-limited scalars, free of
/// aliasing. Both factors are zero-padded to the 3/2 grid, multiplied there and
/// truncated back. Nyquist content of the inputs is ignored and the Nyquist
/// row and column of the result are zero.
std::vector<Complex> dealiased_product(std::span<const Complex> a, std::span<const Complex> b,
                                       const GridSpec& g);

/// Samples on the padded (3n/2)^2 grid of a band-limited scalar.
std::vector<Complex> to_padded_physical(std::span<const Complex> coeffs, const GridSpec& g);

/// Inverse of to_padded_physical restricted to the n-mode set. `samples` is
/// used as workspace and overwritten. Nyquist row and column are set to zero.
void from_padded_physical(std::span<Complex> samples, const GridSpec& g, std::span<Complex> out);

}  // namespace nslab
