#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nslab/experiments.hpp"
#include "nslab/integrators.hpp"
#include "nslab/nonlinear.hpp"
#include "nslab/projection.hpp"
#include "oracles.hpp"

namespace nslab {
namespace {

using testing::max_abs_diff;

constexpr double kPi = std::numbers::pi;
constexpr SchemeKind kAll[] = {SchemeKind::LRI, SchemeKind::ExplicitLRI,
                               SchemeKind::SemiImplicitEuler, SchemeKind::ExponentialEuler};

SpectralField zero_field(const GridSpec& g) {
  SpectralField z(g);
  z.divfree = true;
  return z;
}

TEST(SchemeNames, RoundTrip) {
  for (auto s : kAll) EXPECT_EQ(parse_scheme(scheme_name(s)), s);
  EXPECT_THROW(parse_scheme("euler"), std::invalid_argument);
}

TEST(Step, ZeroStaysZero) {
  const GridSpec g(16);
  for (auto s : kAll) {
    const auto r = step(s, zero_field(g), 0.01, 0.1, {});
    EXPECT_EQ(l2_norm(r.u), 0.0) << scheme_name(s);
    EXPECT_TRUE(r.u.divfree);
    EXPECT_TRUE(r.diag.finite);
  }
}

TEST(Step, RequiresDivergenceFreeInput) {
  const GridSpec g(8);
  for (auto s : kAll) {
    EXPECT_THROW(step(s, testing::random_field(g, 1), 0.01, 0.1, {}), std::invalid_argument);
  }
}

TEST(Step, TaylorGreenIsAdvancedByItsLinearPart) {
  const GridSpec g(16);
  const double tau = 0.03;
  const double mu = 0.2;
  const auto u = taylor_green(0.1, mu, g);
  const auto heat = heat_semigroup(u, tau, mu);
  const auto lri = step_lri(u, tau, mu, {});
  EXPECT_LE(max_abs_diff(lri.u, heat), 1e-13);
  EXPECT_LE(lri.diag.solver_iterations, 1);
  EXPECT_LE(max_abs_diff(step_explicit_lri(u, tau, mu).u, heat), 1e-13);
  EXPECT_LE(max_abs_diff(step_exponential_euler(u, tau, mu).u, heat), 1e-13);
  const auto semi = step_semi_implicit_euler(u, tau, mu, {});
  EXPECT_LE(max_abs_diff(semi.u, inverse_helmholtz(u, tau, mu)), 1e-13);
  // the decayed vortex itself, |k|^2 = 2 on every active mode
  EXPECT_LE(max_abs_diff(heat, taylor_green(0.1 + tau, mu, g)), 1e-13);
}

TEST(Step, EnergyDecaysOnLowRegularityData) {
  const GridSpec g(16);
  const auto u0 = sin_power_initial_condition(2.6, g);
  const double e0 = l2_norm(u0);
  for (auto s : {SchemeKind::LRI, SchemeKind::SemiImplicitEuler}) {
    const auto r = step(s, u0, 1.0 / 128, 0.01, {});
    EXPECT_LE(r.diag.energy, e0) << scheme_name(s);
    EXPECT_NEAR(r.diag.energy, l2_norm(r.u), 1e-15);
    EXPECT_LE(r.diag.solver_residual, 1e-10);
    EXPECT_GE(r.diag.solver_iterations, 1);
  }
}

TEST(Step, ExplicitSchemesCoincideWithoutViscosity) {
  const GridSpec g(32);
  const auto u0 = sin_power_initial_condition(2.6, g);
  const auto a = step_explicit_lri(u0, 0.01, 0.0).u;
  const auto b = step_exponential_euler(u0, 0.01, 0.0).u;
  EXPECT_LE(max_abs_diff(a, b), 1e-13);
  // forward Euler with projection
  auto fe = projected_convect(u0, u0, g);
  fe *= -0.01;
  fe += u0;
  EXPECT_LE(max_abs_diff(a, fe), 1e-13);
}

TEST(Step, OutputsAreDivergenceFreeAndKeepTheMean) {
  const GridSpec g(16);
  auto u0 = sin_power_initial_condition(2.6, g);
  u0.c[0][0] = 0.25;
  u0.c[1][0] = -0.5;
  for (auto s : kAll) {
    const auto r = step(s, u0, 0.01, 0.05, {});
    EXPECT_EQ(r.u.c[0][0], u0.c[0][0]) << scheme_name(s);
    EXPECT_EQ(r.u.c[1][0], u0.c[1][0]) << scheme_name(s);
    EXPECT_LE(spectral_divergence_max(r.u), 1e-10);
    EXPECT_LE(r.diag.divergence_inf, 1e-10);
  }
}

TEST(Run, ZeroStepsReturnsInitialField) {
  const GridSpec g(16);
  const auto u0 = sin_power_initial_condition(2.6, g);
  RunConfig cfg;
  cfg.grid = g;
  cfg.mu = 0.1;
  const auto r = run(cfg, u0);
  EXPECT_EQ(max_abs_diff(r.final_field, u0), 0.0);
  EXPECT_TRUE(r.diagnostics.empty());
  EXPECT_TRUE(r.finite);
}

TEST(Run, ValidatesConfiguration) {
  const GridSpec g(8);
  const auto u0 = taylor_green(0.0, 0.1, g);
  RunConfig cfg = RunConfig::uniform(SchemeKind::LRI, 0.1, g, 0.1, 4);
  cfg.schedule[2] = -0.01;
  EXPECT_THROW(run(cfg, u0), std::invalid_argument);
  cfg.schedule[2] = std::nan("");
  EXPECT_THROW(run(cfg, u0), std::invalid_argument);
  cfg = RunConfig::uniform(SchemeKind::LRI, -0.1, g, 0.1, 4);
  EXPECT_THROW(run(cfg, u0), std::invalid_argument);
  cfg = RunConfig::uniform(SchemeKind::LRI, 0.1, GridSpec(16), 0.1, 4);
  EXPECT_THROW(run(cfg, u0), std::invalid_argument);
}

TEST(Run, TaylorGreenMatchesDecayedVortexForExponentialSchemes) {
  const GridSpec g(32);
  const auto u0 = taylor_green(0.0, 0.1, g);
  const auto exact = taylor_green(0.125, 0.1, g);
  for (auto s : {SchemeKind::LRI, SchemeKind::ExplicitLRI, SchemeKind::ExponentialEuler}) {
    const auto r = run(RunConfig::uniform(s, 0.1, g, 0.125, 128), u0);
    EXPECT_LE(l2_norm(r.final_field - exact), 1e-9) << scheme_name(s);
  }
}

TEST(Run, TaylorGreenSemiImplicitEulerComposesHelmholtzFactors) {
  const GridSpec g(32);
  const double mu = 0.1;
  const int N = 128;
  const double tau = 0.125 / N;
  const auto u0 = taylor_green(0.0, mu, g);
  const auto r = run(RunConfig::uniform(SchemeKind::SemiImplicitEuler, mu, g, 0.125, N), u0);
  const double factor = std::pow(1.0 + 8 * kPi * kPi * mu * tau, -N);
  auto expected = u0;
  expected *= factor;
  EXPECT_LE(l2_norm(r.final_field - expected), 1e-12);
}

TEST(Run, EnergyIsMonotoneForImplicitSchemes) {
  const GridSpec g(32);
  const auto u0 = sin_power_initial_condition(2.6, g);
  for (auto s : {SchemeKind::LRI, SchemeKind::SemiImplicitEuler}) {
    const auto r = run(RunConfig::uniform(s, 1e-3, g, 0.125, 32), u0);
    ASSERT_EQ(r.diagnostics.size(), 32u);
    double prev = l2_norm(u0);
    for (const auto& d : r.diagnostics) {
      EXPECT_LE(d.energy, prev * (1 + 1e-9)) << scheme_name(s) << " step " << d.n;
      prev = d.energy;
    }
  }
}

TEST(Run, FlagsBlowUp) {
  // A huge step of an explicit scheme on rough data amplifies the field past
  // the blow-up threshold within a few steps.
  const GridSpec g(32);
  const auto u0 = sin_power_initial_condition(2.6, g);
  const auto r = run(RunConfig::uniform(SchemeKind::ExponentialEuler, 0.0, g, 50.0, 50), u0);
  EXPECT_FALSE(r.finite);
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_FALSE(r.diagnostics.back().finite);
  EXPECT_LT(r.diagnostics.size(), 50u);
}

TEST(TruncationProbe, ZeroStepIsZero) {
  const GridSpec g(16);
  EXPECT_EQ(local_truncation_probe(SchemeKind::LRI, sin_power_initial_condition(2.6, g), 0.0, 0.1, 64), 0.0);
  EXPECT_THROW(local_truncation_probe(SchemeKind::LRI, taylor_green(0, 0.1, g), 0.01, 0.1, 8),
               std::invalid_argument);
}

TEST(TruncationProbe, VanishesOnTaylorGreenForExponentialSchemes) {
  const GridSpec g(16);
  const auto u = taylor_green(0.0, 0.1, g);
  for (auto s : {SchemeKind::LRI, SchemeKind::ExplicitLRI, SchemeKind::ExponentialEuler}) {
    EXPECT_LE(local_truncation_probe(s, u, 1.0 / 64, 0.1, 64), 1e-10) << scheme_name(s);
  }
}

TEST(TruncationProbe, SemiImplicitEulerOnTaylorGreenIsTheFactorGap) {
  const GridSpec g(16);
  const double mu = 0.1;
  const double tau = 1.0 / 64;
  const auto u = taylor_green(0.0, mu, g);
  const double lambda = 8 * kPi * kPi * mu * tau;
  const double gap = std::abs(1.0 / (1.0 + lambda) - std::exp(-lambda)) * l2_norm(u);
  EXPECT_NEAR(local_truncation_probe(SchemeKind::SemiImplicitEuler, u, tau, mu, 64), gap, 1e-12);
  // against its own refined trajectory the gap is the composition mismatch
  const double self = std::abs(1.0 / (1.0 + lambda) - std::pow(1.0 + lambda / 64, -64)) * l2_norm(u);
  EXPECT_NEAR(local_truncation_probe(SchemeKind::SemiImplicitEuler, u, tau, mu, 64, {},
                                     SchemeKind::SemiImplicitEuler),
              self, 1e-12);
}

}  // namespace
}  // namespace nslab
