#pragma once

#include <complex>
#include <span>

namespace nslab::detail {

enum class FftDirection { Forward, Backward };

/// Unnormalized in-place 2D complex transform of an m x m row-major array.
/// Forward uses exp(-2 pi i k x / m); backward uses the positive exponent.
/// Plans are created once per (m, direction) under a lock; execution is
/// reentrant.
void fft2d_inplace(std::span<std::complex<double>> data, int m, FftDirection dir);

}  // namespace nslab::detail
