#include "nslab/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "nslab/nonlinear.hpp"
#include "nslab/projection.hpp"
#include "nslab/spectral.hpp"
#include "fft.hpp"

namespace nslab {

namespace {

void require_divfree(const SpectralField& u, const char* op) {
  if (!u.divfree) {
    throw std::invalid_argument(std::string(op) + ": input is not flagged divergence-free");
  }
}

void check_step_args(double tau, double mu) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("stepsize must be positive and finite");
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::invalid_argument("viscosity must be >= 0");
}

double divergence_inf(const SpectralField& u) {
  const GridSpec& g = u.grid;
  auto div = derivative(u.c[0], g, 1);
  const auto dy = derivative(u.c[1], g, 2);
  for (std::size_t i = 0; i < div.size(); ++i) div[i] += dy[i];
  // The divergence is roundoff-sized, so the Hermitian check in inverse_scalar
  // would reject it; take the real part of the raw transform instead.
  detail::fft2d_inplace(div, g.n(), detail::FftDirection::Backward);
  double worst = 0.0;
  for (const auto& d : div) worst = std::max(worst, std::abs(d.real()));
  return worst;
}

StepResult finish(SpectralField u, int iterations, double residual) {
  StepResult out{std::move(u), {}};
  out.diag.finite = all_finite(out.u);
  out.diag.energy = l2_norm(out.u);
  out.diag.divergence_inf =
      out.diag.finite ? divergence_inf(out.u) : std::numeric_limits<double>::quiet_NaN();
  out.diag.solver_iterations = iterations;
  out.diag.solver_residual = residual;
  return out;
}

// The k = 0 equation of every implicit system decouples to u_n(0) = rhs(0).
SpectralField with_mean_of(SpectralField u, const SpectralField& src) {
  u.c[0][0] = src.c[0][0];
  u.c[1][0] = src.c[1][0];
  return u;
}

}  // namespace

std::string_view scheme_name(SchemeKind s) {
  switch (s) {
    case SchemeKind::LRI: return "lri";
    case SchemeKind::ExplicitLRI: return "explicit-lri";
    case SchemeKind::SemiImplicitEuler: return "semi-euler";
    case SchemeKind::ExponentialEuler: return "exp-euler";
  }
  return "?";
}

std::string_view scheme_label(SchemeKind s) {
  switch (s) {
    case SchemeKind::LRI: return "Exponential LRI";
    case SchemeKind::ExplicitLRI: return "Explicit LRI";
    case SchemeKind::SemiImplicitEuler: return "Semi-implicit Euler";
    case SchemeKind::ExponentialEuler: return "Exponential Euler";
  }
  return "?";
}

SchemeKind parse_scheme(std::string_view name) {
  for (auto s : {SchemeKind::LRI, SchemeKind::ExplicitLRI, SchemeKind::SemiImplicitEuler,
                 SchemeKind::ExponentialEuler}) {
    if (scheme_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

StepResult step_lri(const SpectralField& u_prev, double tau, double mu, const SolverConfig& solver) {
  require_divfree(u_prev, "step_lri");
  check_step_args(tau, mu);
  const SpectralField w = heat_semigroup(u_prev, tau, mu);
  const AdvectionOperator adv(w);
  const LinearOperator apply = [&](const SpectralField& x) {
    SpectralField y = adv.projected(x);
    y *= tau;
    y += x;
    return y;
  };
  SolveResult sol = iterative_solve(apply, w, {}, solver);
  SpectralField u = with_mean_of(leray_project(std::move(sol.x)), w);
  return finish(std::move(u), sol.iterations, sol.residual);
}

StepResult step_explicit_lri(const SpectralField& u_prev, double tau, double mu) {
  require_divfree(u_prev, "step_explicit_lri");
  check_step_args(tau, mu);
  SpectralField w = heat_semigroup(u_prev, tau, mu);
  const SpectralField nl = AdvectionOperator(w).projected(w);
  axpy(-tau, nl, w);
  return finish(std::move(w), 0, 0.0);
}

StepResult step_semi_implicit_euler(const SpectralField& u_prev, double tau, double mu,
                                    const SolverConfig& solver) {
  require_divfree(u_prev, "step_semi_implicit_euler");
  check_step_args(tau, mu);
  const AdvectionOperator adv(u_prev);
  const auto helmholtz = MultiplierTable::make(u_prev.grid, MultiplierKind::InverseHelmholtz, tau, mu);
  const LinearOperator apply = [&](const SpectralField& x) {
    SpectralField y = adv.projected(x);
    y *= tau;
    for (int comp = 0; comp < 2; ++comp) {
      for (std::size_t i = 0; i < y.c[comp].size(); ++i) {
        y.c[comp][i] += x.c[comp][i] / helmholtz.factors[i];
      }
    }
    return y;
  };
  const LinearOperator precond = [&](const SpectralField& x) { return helmholtz.apply(x); };
  SolveResult sol = iterative_solve(apply, u_prev, precond, solver);
  SpectralField u = with_mean_of(leray_project(std::move(sol.x)), u_prev);
  return finish(std::move(u), sol.iterations, sol.residual);
}

StepResult step_exponential_euler(const SpectralField& u_prev, double tau, double mu) {
  require_divfree(u_prev, "step_exponential_euler");
  check_step_args(tau, mu);
  const SpectralField nl = phi1_apply(AdvectionOperator(u_prev).projected(u_prev), tau, mu);
  SpectralField u = heat_semigroup(u_prev, tau, mu);
  axpy(-tau, nl, u);
  return finish(std::move(u), 0, 0.0);
}

StepResult step(SchemeKind scheme, const SpectralField& u_prev, double tau, double mu,
                const SolverConfig& solver) {
  switch (scheme) {
    case SchemeKind::LRI: return step_lri(u_prev, tau, mu, solver);
    case SchemeKind::ExplicitLRI: return step_explicit_lri(u_prev, tau, mu);
    case SchemeKind::SemiImplicitEuler: return step_semi_implicit_euler(u_prev, tau, mu, solver);
    case SchemeKind::ExponentialEuler: return step_exponential_euler(u_prev, tau, mu);
  }
  throw std::logic_error("unhandled scheme");
}

RunConfig RunConfig::uniform(SchemeKind scheme, double mu, const GridSpec& grid, double T, int N,
                             SolverConfig solver) {
  if (N < 0) throw std::invalid_argument("number of steps must be >= 0");
  RunConfig cfg;
  cfg.mu = mu;
  cfg.schedule.assign(static_cast<std::size_t>(N), T / N);
  cfg.grid = grid;
  cfg.scheme = scheme;
  cfg.solver = solver;
  return cfg;
}

void RunConfig::validate() const {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::invalid_argument("viscosity must be >= 0");
  for (double tau : schedule) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
      throw std::invalid_argument("stepsizes must be positive and finite");
    }
  }
  solver.validate();
}

RunResult run(const RunConfig& cfg, const SpectralField& u0) {
  cfg.validate();
  if (!(u0.grid == cfg.grid)) throw std::invalid_argument("run: initial field grid does not match config");
  require_divfree(u0, "run");
  const double threshold = kBlowUpFactor * l2_norm(u0);

  RunResult result{u0, {}, true};
  result.diagnostics.reserve(cfg.schedule.size());
  int n = 0;
  for (double tau : cfg.schedule) {
    StepResult s = step(cfg.scheme, result.final_field, tau, cfg.mu, cfg.solver);
    s.diag.n = ++n;
    if (!s.diag.finite || !(s.diag.energy <= threshold)) {
      s.diag.finite = false;
      result.finite = false;
    }
    result.final_field = std::move(s.u);
    result.diagnostics.push_back(s.diag);
    if (!result.finite) break;
  }
  return result;
}

double local_truncation_probe(SchemeKind scheme, const SpectralField& u_ref, double tau, double mu,
                              int refinement, const SolverConfig& solver, SchemeKind reference) {
  require_divfree(u_ref, "local_truncation_probe");
  if (refinement < 64) throw std::invalid_argument("refinement must be >= 64");
  if (tau == 0.0) return 0.0;
  const SpectralField coarse = step(scheme, u_ref, tau, mu, solver).u;
  SpectralField fine = u_ref;
  const double sub = tau / refinement;
  for (int r = 0; r < refinement; ++r) fine = step(reference, fine, sub, mu, solver).u;
  return l2_norm(coarse - fine);
}

}  // namespace nslab
