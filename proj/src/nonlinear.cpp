#include "nslab/nonlinear.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "nslab/projection.hpp"
#include "nslab/spectral.hpp"

namespace nslab {

AdvectionOperator::AdvectionOperator(const SpectralField& w) : grid_(w.grid) {
  if (!w.divfree) {
    throw std::invalid_argument("convect: advecting field is not flagged divergence-free");
  }
#ifdef NSLAB_DEBUG_CHECKS
  if (spectral_divergence_max(w) > 1e-10 * std::max(1.0, l2_norm(w))) {
    throw std::invalid_argument("convect: advecting field has nonzero divergence");
  }
#endif
  w1_ = to_padded_physical(w.c[0], grid_);
  w2_ = to_padded_physical(w.c[1], grid_);
}

SpectralField AdvectionOperator::convect(const SpectralField& u) const {
  if (!(u.grid == grid_)) throw std::invalid_argument("convect: grid mismatch");
  SpectralField out(grid_);
  for (int comp = 0; comp < 2; ++comp) {
    auto dx = to_padded_physical(derivative(u.c[comp], grid_, 1), grid_);
    const auto dy = to_padded_physical(derivative(u.c[comp], grid_, 2), grid_);
    for (std::size_t i = 0; i < dx.size(); ++i) dx[i] = w1_[i] * dx[i] + w2_[i] * dy[i];
    from_padded_physical(dx, grid_, out.c[comp]);
  }
  return out;
}

SpectralField AdvectionOperator::projected(const SpectralField& u) const {
  SpectralField out = leray_project(convect(u));
  out.c[0][0] = 0.0;
  out.c[1][0] = 0.0;
  return out;
}

SpectralField convect(const SpectralField& w, const SpectralField& u, const GridSpec& g) {
  if (!(w.grid == g) || !(u.grid == g)) throw std::invalid_argument("convect: grid mismatch");
  return AdvectionOperator(w).convect(u);
}

SpectralField projected_convect(const SpectralField& w, const SpectralField& u, const GridSpec& g) {
  if (!(w.grid == g) || !(u.grid == g)) throw std::invalid_argument("convect: grid mismatch");
  return AdvectionOperator(w).projected(u);
}

}  // namespace nslab
