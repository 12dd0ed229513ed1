#pragma once

#include <string_view>
#include <vector>

#include "nslab/field.hpp"
#include "nslab/krylov.hpp"

namespace nslab {

enum class SchemeKind { LRI, ExplicitLRI, SemiImplicitEuler, ExponentialEuler };

/// Command-line spelling: lri, explicit-lri, semi-euler, exp-euler.
std::string_view scheme_name(SchemeKind s);
/// Row label used in rendered tables.
std::string_view scheme_label(SchemeKind s);
/// Throws std::invalid_argument for an unknown name.
SchemeKind parse_scheme(std::string_view name);

struct StepDiagnostics {
  int n = 0;
  /// ||u_n|| in L2 over the unit torus.
  double energy = 0.0;
  /// max over grid points of |div u_n|.
  double divergence_inf = 0.0;
  int solver_iterations = 0;
  double solver_residual = 0.0;
  bool finite = true;
};

struct StepResult {
  SpectralField u;
  StepDiagnostics diag;
};

/// u_n + tau P[e^{tau mu A} u_{n-1} . grad u_n] = e^{tau mu A} u_{n-1}, solved
/// matrix-free on the divergence-free subspace.
StepResult step_lri(const SpectralField& u_prev, double tau, double mu, const SolverConfig& solver);

/// w = e^{tau mu A} u_{n-1};  u_n = w - tau P[w . grad w].
StepResult step_explicit_lri(const SpectralField& u_prev, double tau, double mu);

/// (I - tau mu Laplacian + tau P[u_{n-1} . grad]) u_n = u_{n-1}, right
/// preconditioned by the inverse Helmholtz multiplier.
StepResult step_semi_implicit_euler(const SpectralField& u_prev, double tau, double mu,
                                    const SolverConfig& solver);

/// u_n = e^{tau mu A} u_{n-1} - tau phi1(tau mu A) P[u_{n-1} . grad u_{n-1}].
StepResult step_exponential_euler(const SpectralField& u_prev, double tau, double mu);

StepResult step(SchemeKind scheme, const SpectralField& u_prev, double tau, double mu,
                const SolverConfig& solver);

struct RunConfig {
  double mu = 0.0;
  std::vector<double> schedule;
  GridSpec grid{8};
  SchemeKind scheme = SchemeKind::LRI;
  SolverConfig solver;

  /// N equal steps covering [0, T].
  static RunConfig uniform(SchemeKind scheme, double mu, const GridSpec& grid, double T, int N,
                           SolverConfig solver = {});

  void validate() const;
};

struct RunResult {
  SpectralField final_field;
  std::vector<StepDiagnostics> diagnostics;
  bool finite = true;
};

/// Energy above this multiple of ||u0|| marks a run as blown up.
inline constexpr double kBlowUpFactor = 1e3;

/// Marches u0 over cfg.schedule. Stops early, with finite = false on the last
/// diagnostics entry, once a coefficient is non-finite or the energy exceeds
/// kBlowUpFactor * ||u0||. Propagates NonConvergence from implicit solves.
RunResult run(const RunConfig& cfg, const SpectralField& u0);

/// || one step of `scheme` with size tau - `refinement` steps of `reference`
/// with size tau / refinement ||, both started from u_ref.
double local_truncation_probe(SchemeKind scheme, const SpectralField& u_ref, double tau, double mu,
                              int refinement, const SolverConfig& solver = {},
                              SchemeKind reference = SchemeKind::LRI);

}  // namespace nslab
