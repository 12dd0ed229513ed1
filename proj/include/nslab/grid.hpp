#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nslab {

/// Resolution of the periodic unit torus [0,1)^2.
///
/// Storage is row-major with x fastest: entry (i, j) lives at j * n + i, with
/// x_i = i / n and y_j = j / n. Spectral arrays use the same layout with FFT
/// ordering, so index i maps to wavenumber i for i < n/2 and i - n otherwise.
class GridSpec {
 public:
  explicit GridSpec(int n) : n_(n) {
    if (n < 8 || n % 2 != 0) {
      throw std::invalid_argument("grid size must be an even integer >= 8, got " +
                                  std::to_string(n));
    }
  }

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * n_; }

  /// Wavenumber of FFT index i in {-n/2, ..., n/2 - 1}.
  int wavenumber(int i) const noexcept { return i < n_ / 2 ? i : i - n_; }

  /// Index of the mode -k, taken modulo n.
  int mirror(int i) const noexcept { return i == 0 ? 0 : n_ - i; }

  bool is_nyquist(int i) const noexcept { return i == n_ / 2; }

  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * n_ + i;
  }

  /// Size of the 3/2-rule padded grid used for quadratic products.
  int padded_n() const noexcept { return 3 * n_ / 2; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int n_;
};

}  // namespace nslab
