#include "nslab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "nslab/projection.hpp"
#include "nslab/spectral.hpp"

namespace nslab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int fft_index(const GridSpec& g, int k) { return k >= 0 ? k : g.n() + k; }

struct FinalState {
  SpectralField u;
  bool finite;
};

FinalState run_to(SchemeKind scheme, double mu, const GridSpec& g, double T, int N,
                  const SpectralField& u0, const SolverConfig& solver, const RunObserver& observer) {
  RunResult r = run(RunConfig::uniform(scheme, mu, g, T, N, solver), u0);
  if (observer) observer(N, r);
  return {std::move(r.final_field), r.finite};
}

}  // namespace

SpectralField sin_power_initial_condition(double m, const GridSpec& g, InitialForm form) {
  if (!(m > 1.0)) throw std::invalid_argument("initial condition exponent must exceed 1");
  const int n = g.n();
  PhysicalField f(g);
  for (int j = 0; j < n; ++j) {
    const double y = static_cast<double>(j) / n;
    const double sy = std::abs(std::sin(kPi * y));
    const double cy = std::cos(kPi * y);
    for (int i = 0; i < n; ++i) {
      const double x = static_cast<double>(i) / n;
      const double sx = std::abs(std::sin(kPi * x));
      const double cx = std::cos(kPi * x);
      const std::size_t idx = g.index(i, j);
      f.u1[idx] = m * kPi * std::pow(sx, m) * std::pow(sy, m - 1.0) * cy;
      if (form == InitialForm::StreamFunction) {
        f.u2[idx] = -m * kPi * std::pow(sx, m - 1.0) * cx * std::pow(sy, m);
      } else {
        f.u2[idx] = -m * kPi * std::pow(sx, m) * cx * std::pow(sy, m - 1.0);
      }
    }
  }
  SpectralField u = leray_project(forward(f, g));
  // Both components integrate to zero over the torus.
  u.c[0][0] = 0.0;
  u.c[1][0] = 0.0;
  return u;
}

SpectralField taylor_green(double t, double mu, const GridSpec& g) {
  const double a = std::exp(-8.0 * kPi * kPi * mu * t);
  SpectralField u(g);
  const Complex q(0.0, a / 4.0);
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      const std::size_t idx = g.index(fft_index(g, sx), fft_index(g, sy));
      // -cos(2 pi x) sin(2 pi y) and sin(2 pi x) cos(2 pi y)
      u.c[0][idx] = static_cast<double>(sy) * q;
      u.c[1][idx] = -static_cast<double>(sx) * q;
    }
  }
  u.divfree = true;
  return u;
}

SpectralField low_mode_perturbation(const GridSpec& g, double amplitude, std::uint64_t seed, int kmax) {
  if (kmax < 1 || kmax >= g.n() / 2) throw std::invalid_argument("perturbation band must fit the grid");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  SpectralField v(g);
  for (int ky = -kmax; ky <= kmax; ++ky) {
    for (int kx = -kmax; kx <= kmax; ++kx) {
      if (kx * kx + ky * ky > kmax * kmax || (kx == 0 && ky == 0)) continue;
      const std::size_t idx = g.index(fft_index(g, kx), fft_index(g, ky));
      for (int comp = 0; comp < 2; ++comp) {
        const double re = dist(rng);
        const double im = dist(rng);
        v.c[comp][idx] = Complex(re, im);
      }
    }
  }
  // Hermitian symmetrization so the field is real.
  SpectralField sym(g);
  for (int j = 0; j < g.n(); ++j) {
    for (int i = 0; i < g.n(); ++i) {
      const std::size_t idx = g.index(i, j);
      const std::size_t mir = g.index(g.mirror(i), g.mirror(j));
      for (int comp = 0; comp < 2; ++comp) {
        sym.c[comp][idx] = 0.5 * (v.c[comp][idx] + std::conj(v.c[comp][mir]));
      }
    }
  }
  sym = leray_project(std::move(sym));
  const double norm = l2_norm(sym);
  if (norm > 0.0) sym *= amplitude / norm;
  return sym;
}

std::optional<double> ConvergenceTable::headline_rate() const {
  if (rows.size() < 2) return std::nullopt;
  return convergence_rate(rows[rows.size() - 2].error, rows.back().error);
}

double convergence_rate(double coarse_error, double fine_error) {
  if (!std::isfinite(coarse_error) || !std::isfinite(fine_error) || coarse_error <= 0.0 ||
      fine_error <= 0.0) {
    return kNaN;
  }
  return std::log2(coarse_error / fine_error);
}

void assign_rates(std::vector<ConvergenceRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i == 0) {
      rows[i].rate.reset();
    } else {
      rows[i].rate = convergence_rate(rows[i - 1].error, rows[i].error);
    }
  }
}

void require_doubling(const std::vector<int>& values, const char* what) {
  if (values.empty()) throw std::invalid_argument(std::string(what) + " must not be empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= 0) throw std::invalid_argument(std::string(what) + " entries must be positive");
    if (i > 0 && values[i] != 2 * values[i - 1]) {
      throw std::invalid_argument(std::string(what) + " must double from entry to entry");
    }
  }
}

ConvergenceTable time_self_convergence(SchemeKind scheme, double mu, const GridSpec& g, double T,
                                       const std::vector<int>& N_list, const SpectralField& u0,
                                       const SolverConfig& solver, const RunObserver& observer) {
  require_doubling(N_list, "step counts");
  if (!(T > 0.0)) throw std::invalid_argument("final time must be positive");
  ConvergenceTable table{std::string(scheme_name(scheme)), mu, g.n(), T, {}};
  std::map<int, FinalState> runs;
  const auto final_state = [&](int N) -> const FinalState& {
    auto it = runs.find(N);
    if (it == runs.end()) {
      it = runs.emplace(N, run_to(scheme, mu, g, T, N, u0, solver, observer)).first;
    }
    return it->second;
  };
  for (int N : N_list) {
    const FinalState& coarse = final_state(N);
    const FinalState& fine = final_state(2 * N);
    const double err = coarse.finite && fine.finite ? l2_norm(coarse.u - fine.u) : kNaN;
    table.rows.push_back({N, err, std::nullopt});
  }
  assign_rates(table.rows);
  return table;
}

ConvergenceTable time_self_convergence(SchemeKind scheme, double mu, const GridSpec& g, double T,
                                       const std::vector<int>& N_list, const SolverConfig& solver,
                                       double m, const RunObserver& observer) {
  return time_self_convergence(scheme, mu, g, T, N_list, sin_power_initial_condition(m, g), solver,
                               observer);
}

ConvergenceTable taylor_green_convergence(SchemeKind scheme, double mu, const GridSpec& g, double T,
                                          const std::vector<int>& N_list, double perturbation,
                                          std::uint64_t seed, const SolverConfig& solver) {
  require_doubling(N_list, "step counts");
  if (!(T > 0.0)) throw std::invalid_argument("final time must be positive");
  SpectralField u0 = taylor_green(0.0, mu, g);
  SpectralField reference = taylor_green(T, mu, g);
  if (perturbation > 0.0) {
    u0 += low_mode_perturbation(g, perturbation, seed);
    const int n_ref = 64 * N_list.back();
    reference = run_to(SchemeKind::LRI, mu, g, T, n_ref, u0, solver, {}).u;
  }
  ConvergenceTable table{std::string(scheme_name(scheme)), mu, g.n(), T, {}};
  for (int N : N_list) {
    const FinalState s = run_to(scheme, mu, g, T, N, u0, solver, {});
    table.rows.push_back({N, s.finite ? l2_norm(s.u - reference) : kNaN, std::nullopt});
  }
  assign_rates(table.rows);
  return table;
}

SpatialTable spatial_resolution_study(SchemeKind scheme, double mu, double T, int N,
                                      const std::vector<int>& n_list, const InitialBuilder& initial,
                                      const SolverConfig& solver) {
  require_doubling(n_list, "grid sizes");
  if (N < 1) throw std::invalid_argument("number of steps must be >= 1");
  SpatialTable table{std::string(scheme_name(scheme)), mu, N, T, {}};
  std::map<int, FinalState> runs;
  const auto final_state = [&](int n) -> const FinalState& {
    auto it = runs.find(n);
    if (it == runs.end()) {
      const GridSpec g(n);
      it = runs.emplace(n, run_to(scheme, mu, g, T, N, initial(g), solver, {})).first;
    }
    return it->second;
  };
  for (int n : n_list) {
    const FinalState& coarse = final_state(n);
    const FinalState& fine = final_state(2 * n);
    if (!coarse.finite || !fine.finite) {
      table.rows.push_back({n, kNaN});
      continue;
    }
    const GridSpec& gc = coarse.u.grid;
    const GridSpec& gf = fine.u.grid;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (gc.is_nyquist(j)) continue;
      for (int i = 0; i < n; ++i) {
        if (gc.is_nyquist(i)) continue;
        const std::size_t ic = gc.index(i, j);
        const std::size_t jf =
            gf.index(fft_index(gf, gc.wavenumber(i)), fft_index(gf, gc.wavenumber(j)));
        for (int comp = 0; comp < 2; ++comp) sum += std::norm(coarse.u.c[comp][ic] - fine.u.c[comp][jf]);
      }
    }
    table.rows.push_back({n, std::sqrt(sum)});
  }
  return table;
}

}  // namespace nslab
