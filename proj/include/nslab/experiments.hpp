#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nslab/field.hpp"
#include "nslab/integrators.hpp"

namespace nslab {

/// Default setup of the temporal studies: final time and step counts.
inline constexpr double kDefaultFinalTime = 0.125;
inline const std::vector<int> kDefaultStepCounts = {32, 64, 128, 256};
inline constexpr double kDefaultExponent = 2.6;

enum class InitialForm {
  /// u = (d psi/dy, -d psi/dx) with psi = sin^m(pi x) sin^m(pi y).
  StreamFunction,
  /// Second component as sin^m(pi x) cos(pi x) sin^{m-1}(pi y), which is not
  /// divergence-free before projection. Kept for comparison only.
  NonSolenoidal,
};

/// Low-regularity initial velocity built from sin^m profiles, sampled on the
/// grid, transformed and Leray-projected. Requires m > 1. The mean is zero.
SpectralField sin_power_initial_condition(double m, const GridSpec& g,
                                      InitialForm form = InitialForm::StreamFunction);

/// Taylor-Green vortex e^{-8 pi^2 mu t} (-cos 2pi x sin 2pi y, sin 2pi x cos 2pi y),
/// built directly from its four-coefficient spectrum per component.
SpectralField taylor_green(double t, double mu, const GridSpec& g);

/// Projected random field on the modes 0 < |k| <= kmax with L2 norm
/// `amplitude`, reproducible from `seed`.
SpectralField low_mode_perturbation(const GridSpec& g, double amplitude, std::uint64_t seed,
                                    int kmax = 3);

struct ConvergenceRow {
  int N = 0;
  /// NaN when either run of the pair blew up.
  double error = 0.0;
  /// log2(previous error / error); absent on the first row.
  std::optional<double> rate;
};

struct ConvergenceTable {
  std::string scheme;
  double mu = 0.0;
  int n = 0;
  double T = 0.0;
  std::vector<ConvergenceRow> rows;

  /// Rate from the two finest rows, if there are at least two.
  std::optional<double> headline_rate() const;
};

/// log2(coarse / fine); NaN if either error is non-finite or non-positive.
double convergence_rate(double coarse_error, double fine_error);

/// Fills the rate column from consecutive errors.
void assign_rates(std::vector<ConvergenceRow>& rows);

/// Receives every completed run of a study, keyed by its step count.
using RunObserver = std::function<void(int steps, const RunResult&)>;

/// Temporal self-convergence: for each N, error = ||u_N(tau) - u_{2N}(tau/2)||
/// at time T on the same grid. N_list must strictly double.
ConvergenceTable time_self_convergence(SchemeKind scheme, double mu, const GridSpec& g, double T,
                                       const std::vector<int>& N_list, const SpectralField& u0,
                                       const SolverConfig& solver = {},
                                       const RunObserver& observer = {});

/// Same, started from sin_power_initial_condition(m, g).
ConvergenceTable time_self_convergence(SchemeKind scheme, double mu, const GridSpec& g, double T,
                                       const std::vector<int>& N_list,
                                       const SolverConfig& solver = {},
                                       double m = kDefaultExponent,
                                       const RunObserver& observer = {});

/// Global error against a Taylor-Green reference. With perturbation == 0 the
/// reference is the analytic vortex at T. Otherwise a projected low-mode field
/// of that L2 norm is added to u0 and the reference is LRI with
/// 64 * max(N_list) steps.
ConvergenceTable taylor_green_convergence(SchemeKind scheme, double mu, const GridSpec& g, double T,
                                          const std::vector<int>& N_list, double perturbation = 0.0,
                                          std::uint64_t seed = 1, const SolverConfig& solver = {});

struct SpatialRow {
  int n = 0;
  /// ||u^(n) - u^(2n)|| over the modes both grids carry.
  double difference = 0.0;
};

struct SpatialTable {
  std::string scheme;
  double mu = 0.0;
  int N = 0;
  double T = 0.0;
  std::vector<SpatialRow> rows;
};

using InitialBuilder = std::function<SpectralField(const GridSpec&)>;

/// Runs N steps to time T on each n and 2n of n_list (strictly doubling) and
/// compares final coefficients on the common mode set.
SpatialTable spatial_resolution_study(SchemeKind scheme, double mu, double T, int N,
                                      const std::vector<int>& n_list, const InitialBuilder& initial,
                                      const SolverConfig& solver = {});

/// Throws std::invalid_argument unless the list is non-empty, positive and
/// strictly doubling.
void require_doubling(const std::vector<int>& values, const char* what);

}  // namespace nslab
