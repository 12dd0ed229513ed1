#include "nslab/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace nslab {

namespace {

std::string non_convergence_message(int iterations, double residual) {
  std::ostringstream os;
  os << "iterative solver did not converge: " << iterations << " iterations, relative residual "
     << residual;
  return os.str();
}

SpectralField precondition(const LinearOperator& precond, const SpectralField& v) {
  return precond ? precond(v) : v;
}

SolveResult fixed_point(const LinearOperator& apply, const SpectralField& rhs,
                        const LinearOperator& precond, const SolverConfig& cfg, double bnorm) {
  SpectralField x(rhs.grid);
  x.divfree = rhs.divfree;
  SpectralField r = rhs;
  double rel = 1.0;
  int it = 0;
  while (true) {
    if (it > 0) r = rhs - apply(x);
    rel = l2_norm(r) / bnorm;
    if (rel <= cfg.rel_tol) return {std::move(x), it, rel};
    if (it >= cfg.max_iter || !std::isfinite(rel) || rel > 1e3) throw NonConvergence(it, rel);
    axpy(1.0, precondition(precond, r), x);
    x.divfree = rhs.divfree;
    ++it;
  }
}

// Restarted GMRES with modified Gram-Schmidt and Givens rotations.
SolveResult gmres(const LinearOperator& apply, const SpectralField& rhs,
                  const LinearOperator& precond, const SolverConfig& cfg, double bnorm) {
  const int m = cfg.restart;
  SpectralField x(rhs.grid);
  int total = 0;
  bool first = true;

  std::vector<SpectralField> basis;
  std::vector<std::vector<double>> h(m + 1, std::vector<double>(m, 0.0));
  std::vector<double> cs(m), sn(m), g(m + 1);

  while (true) {
    SpectralField r = first ? rhs : rhs - apply(x);
    first = false;
    const double beta = l2_norm(r);
    const double rel = beta / bnorm;
    if (rel <= cfg.rel_tol) {
      x.divfree = rhs.divfree;
      return {std::move(x), total, rel};
    }
    if (total >= cfg.max_iter || !std::isfinite(rel)) throw NonConvergence(total, rel);

    basis.clear();
    r *= 1.0 / beta;
    basis.push_back(std::move(r));
    std::fill(g.begin(), g.end(), 0.0);
    g[0] = beta;

    int k = 0;
    while (k < m && total < cfg.max_iter) {
      SpectralField w = apply(precondition(precond, basis[k]));
      ++total;
      for (int i = 0; i <= k; ++i) {
        h[i][k] = inner(w, basis[i]);
        axpy(-h[i][k], basis[i], w);
      }
      const double hnext = l2_norm(w);
      for (int i = 0; i < k; ++i) {
        const double t = cs[i] * h[i][k] + sn[i] * h[i + 1][k];
        h[i + 1][k] = -sn[i] * h[i][k] + cs[i] * h[i + 1][k];
        h[i][k] = t;
      }
      const double denom = std::hypot(h[k][k], hnext);
      cs[k] = denom > 0.0 ? h[k][k] / denom : 1.0;
      sn[k] = denom > 0.0 ? hnext / denom : 0.0;
      h[k][k] = denom;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      ++k;
      const bool breakdown = hnext <= 1e-300;
      if (std::abs(g[k]) <= cfg.rel_tol * bnorm || breakdown) break;
      w *= 1.0 / hnext;
      basis.push_back(std::move(w));
    }

    // Back substitution for the k x k triangular system.
    std::vector<double> y(k);
    for (int i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (int j = i + 1; j < k; ++j) s -= h[i][j] * y[j];
      y[i] = h[i][i] != 0.0 ? s / h[i][i] : 0.0;
    }
    SpectralField update(rhs.grid);
    for (int i = 0; i < k; ++i) axpy(y[i], basis[i], update);
    axpy(1.0, precondition(precond, update), x);
  }
}

}  // namespace

void SolverConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("rel_tol must lie in (0, 1)");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (restart < 1) throw std::invalid_argument("restart must be >= 1");
}

NonConvergence::NonConvergence(int iterations, double residual)
    : std::runtime_error(non_convergence_message(iterations, residual)),
      iterations_(iterations),
      residual_(residual) {}

SolveResult iterative_solve(const LinearOperator& apply, const SpectralField& rhs,
                            const LinearOperator& precond, const SolverConfig& cfg) {
  cfg.validate();
  const double bnorm = l2_norm(rhs);
  if (bnorm == 0.0) {
    SpectralField zero(rhs.grid);
    zero.divfree = rhs.divfree;
    return {std::move(zero), 0, 0.0};
  }
  if (cfg.method == SolverMethod::FixedPoint) return fixed_point(apply, rhs, precond, cfg, bnorm);
  return gmres(apply, rhs, precond, cfg, bnorm);
}

}  // namespace nslab
