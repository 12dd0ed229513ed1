#pragma once

#include <functional>
#include <stdexcept>

#include "nslab/field.hpp"

namespace nslab {

enum class SolverMethod { Krylov, FixedPoint };

struct SolverConfig {
  double rel_tol = 1e-10;
  int max_iter = 500;
  int restart = 30;
  SolverMethod method = SolverMethod::Krylov;

  /// Throws std::invalid_argument unless rel_tol is in (0, 1) and the
  /// iteration counts are positive.
  void validate() const;
};

/// The iterative solver ran out of iterations (or diverged) before reaching
/// the requested relative residual.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(int iterations, double residual);

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

using LinearOperator = std::function<SpectralField(const SpectralField&)>;

struct SolveResult {
  SpectralField x;
  int iterations = 0;
  /// ||apply(x) - rhs|| / ||rhs||, recomputed from x.
  double residual = 0.0;
};

/// Solves apply(x) = rhs without forming a matrix.
///
/// Krylov runs restarted GMRES in the real inner product of the coefficient
/// space, preconditioned on the right so the monitored residual is the true
/// one. FixedPoint runs the preconditioned Richardson sweep
/// x <- x + precond(rhs - apply(x)), which reduces to x <- rhs - (apply - I) x
/// without a preconditioner; it only converges when apply - I is a
/// contraction and aborts early once the residual grows past 1e3 times its
/// initial value. An empty `precond` means the identity.
///
/// Throws NonConvergence if max_iter iterations do not suffice.
SolveResult iterative_solve(const LinearOperator& apply, const SpectralField& rhs,
                            const LinearOperator& precond, const SolverConfig& cfg);

}  // namespace nslab
