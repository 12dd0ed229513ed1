#pragma once

#include <vector>

#include "nslab/field.hpp"

namespace nslab {

/// The linear map u -> w . grad u for a fixed divergence-free advecting field
/// w. The padded samples of w are computed once, so repeated applications
/// (as inside an implicit solve) cost four inverse and two forward padded
/// transforms each.
class AdvectionOperator {
 public:
  /// Throws std::invalid_argument if w is not flagged divergence-free. Builds
  /// with NSLAB_DEBUG_CHECKS defined also verify the divergence numerically.
  explicit AdvectionOperator(const SpectralField& w);

  const GridSpec& grid() const noexcept { return grid_; }

  /// Alias-free coefficients of (w1 d1 + w2 d2) u_i, i = 1, 2.
  SpectralField convect(const SpectralField& u) const;

  /// P_X(w . grad u). The mean mode is set to zero, its exact value for
  /// divergence-free w.
  SpectralField projected(const SpectralField& u) const;

 private:
  GridSpec grid_;
  std::vector<Complex> w1_;
  std::vector<Complex> w2_;
};

SpectralField convect(const SpectralField& w, const SpectralField& u, const GridSpec& g);
SpectralField projected_convect(const SpectralField& w, const SpectralField& u, const GridSpec& g);

}  // namespace nslab
