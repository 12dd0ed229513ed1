#include <gtest/gtest.h>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>

#include "nslab/experiments.hpp"
#include "nslab/projection.hpp"
#include "nslab/spectral.hpp"
#include "oracles.hpp"

namespace nslab {
namespace {

using testing::fft_index;
using testing::max_abs_diff;
using testing::random_field;
using Real50 = boost::multiprecision::cpp_bin_float_50;

constexpr double kPi = std::numbers::pi;

double phi1_reference(double z) {
  if (z == 0.0) return 1.0;
  const Real50 zz(z);
  return static_cast<double>((boost::multiprecision::exp(zz) - 1) / zz);
}

SpectralField single_mode(const GridSpec& g, int kx, int ky, Complex a) {
  // Real field whose modes +-k carry a and conj(a) in the first component,
  // and a divergence-free partner in the second.
  SpectralField v(g);
  const auto p = g.index(fft_index(g, kx), fft_index(g, ky));
  const auto m = g.index(fft_index(g, -kx), fft_index(g, -ky));
  v.c[0][p] = a * static_cast<double>(ky);
  v.c[0][m] = std::conj(a) * static_cast<double>(ky);
  v.c[1][p] = -a * static_cast<double>(kx);
  v.c[1][m] = -std::conj(a) * static_cast<double>(kx);
  v.divfree = true;
  return v;
}

TEST(Leray, FixesTaylorGreen) {
  const GridSpec g(16);
  const auto tg = taylor_green(0.0, 0.1, g);
  EXPECT_LE(max_abs_diff(leray_project(tg), tg), 1e-12);
}

TEST(Leray, AnnihilatesGradients) {
  // f = grad sin(2 pi x) = (2 pi cos(2 pi x), 0)
  const GridSpec g(16);
  SpectralField f(g);
  f.c[0][g.index(1, 0)] = kPi;
  f.c[0][g.index(fft_index(g, -1), 0)] = kPi;
  const auto p = leray_project(f);
  EXPECT_LE(l2_norm(p), 1e-13);
  EXPECT_TRUE(p.divfree);
}

TEST(Leray, RandomFieldMatchesPerModeFormula) {
  const GridSpec g(16);
  const auto f = random_field(g, 42);
  const auto p = leray_project(f);
  EXPECT_LE(spectral_divergence_max(p), 1e-10);
  EXPECT_LE(max_abs_diff(p, testing::leray_by_mode(f)), 1e-13);
  EXPECT_LE(hermitian_defect(p), 1e-15);
}

TEST(Leray, RemovesNyquistContentAndKeepsMean) {
  const GridSpec g(8);
  auto f = forward(inverse(random_field(g, 1), g), g);
  f.c[0][g.index(4, 1)] = 0.3;
  f.c[0][0] = 0.7;
  const auto p = leray_project(f);
  for (int k = 0; k < g.n(); ++k) {
    EXPECT_EQ(p.c[0][g.index(4, k)], Complex(0.0));
    EXPECT_EQ(p.c[1][g.index(k, 4)], Complex(0.0));
  }
  EXPECT_EQ(p.c[0][0], Complex(0.7));
}

TEST(Leray, IdempotentAndOrthogonal) {
  const GridSpec g(32);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto f = random_field(g, seed);
    const auto p = leray_project(f);
    EXPECT_LE(max_abs_diff(leray_project(p), p), 1e-13);
    const double f2 = inner(f, f);
    EXPECT_LE(std::abs(inner(f - p, p)), 1e-12 * f2);
  }
}

TEST(MultiplierTable, FactorsInUnitIntervalAndOneAtMean) {
  const GridSpec g(32);
  for (auto kind : {MultiplierKind::Heat, MultiplierKind::Phi1, MultiplierKind::InverseHelmholtz}) {
    const auto t = MultiplierTable::make(g, kind, 0.01, 0.3);
    EXPECT_EQ(t.factors[0], 1.0);
    for (double f : t.factors) {
      EXPECT_GT(f, 0.0);
      EXPECT_LE(f, 1.0);
    }
  }
  EXPECT_THROW(MultiplierTable::make(g, MultiplierKind::Heat, -1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(MultiplierTable::make(g, MultiplierKind::Heat, 1.0, -0.1), std::invalid_argument);
}

TEST(Heat, IdentityAtZeroTimeOrViscosity) {
  const GridSpec g(16);
  const auto v = leray_project(random_field(g, 3));
  EXPECT_EQ(max_abs_diff(heat_semigroup(v, 0.0, 0.4), v), 0.0);
  EXPECT_EQ(max_abs_diff(heat_semigroup(v, 0.4, 0.0), v), 0.0);
}

TEST(Heat, SingleModeDecay) {
  const GridSpec g(16);
  const auto v = single_mode(g, 1, 0, Complex(0.3, -0.2));
  const auto s = heat_semigroup(v, 0.5, 0.1);
  // exp(-4 pi^2 * 0.1 * 0.5 * 1) evaluated in 50-digit arithmetic
  const Real50 pi50 = boost::math::constants::pi<Real50>();
  const double factor = static_cast<double>(boost::multiprecision::exp(-2 * pi50 * pi50 / 10));
  EXPECT_NEAR(factor, std::exp(-2 * kPi * kPi * 0.1), 1e-15);
  const auto p = g.index(1, 0);
  EXPECT_LE(std::abs(s.c[1][p] - factor * v.c[1][p]), 1e-15);
  EXPECT_TRUE(s.divfree);
}

TEST(Heat, RejectsBadArguments) {
  const GridSpec g(8);
  const auto v = taylor_green(0.0, 0.0, g);
  EXPECT_THROW(heat_semigroup(v, -0.1, 0.1), std::invalid_argument);
  EXPECT_THROW(heat_semigroup(v, 0.1, -0.1), std::invalid_argument);
  EXPECT_THROW(heat_semigroup(random_field(g, 1), 0.1, 0.1), std::invalid_argument);
  EXPECT_THROW(phi1_apply(random_field(g, 1), 0.1, 0.1), std::invalid_argument);
  EXPECT_THROW(phi1_apply(v, -1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(inverse_helmholtz(v, 0.1, -1.0), std::invalid_argument);
}

TEST(Heat, CommutesWithProjection) {
  const GridSpec g(32);
  const auto f = random_field(g, 17);
  const auto heat = MultiplierTable::make(g, MultiplierKind::Heat, 0.02, 0.5);
  const auto a = heat_semigroup(leray_project(f), 0.02, 0.5);
  const auto b = leray_project(heat.apply(f));
  EXPECT_LE(max_abs_diff(a, b), 1e-13);
}

TEST(Heat, SemigroupLawAndContraction) {
  const GridSpec g(32);
  const auto v = leray_project(random_field(g, 23));
  const auto two = heat_semigroup(heat_semigroup(v, 0.013, 0.2), 0.029, 0.2);
  const auto once = heat_semigroup(v, 0.042, 0.2);
  EXPECT_LE(max_abs_diff(two, once), 1e-12);
  for (double t : {0.0, 1e-4, 1e-2, 1.0, 100.0}) {
    EXPECT_LE(l2_norm(heat_semigroup(v, t, 0.2)), l2_norm(v));
  }
  EXPECT_EQ(heat_semigroup(v, 10.0, 1.0).c[0][0], v.c[0][0]);
}

TEST(Phi1, LimitAndKnownValues) {
  EXPECT_EQ(phi1(0.0), 1.0);
  EXPECT_NEAR(phi1(-1.0), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(phi1(-1.0), phi1_reference(-1.0), 1e-16);
}

TEST(Phi1, SeriesAndDirectBranchesAgree) {
  const double z = -1e-8;
  const double series = 1.0 + z / 2 + z * z / 6 + z * z * z / 24;
  const double direct = std::expm1(z) / z;
  EXPECT_NEAR(series, direct, 1e-12 * std::abs(direct));
  EXPECT_EQ(phi1(z), series);
  for (double zc : {-0.999e-5, -1.001e-5}) {
    EXPECT_NEAR(phi1(zc), phi1_reference(zc), 1e-15);
  }
}

TEST(Phi1, AccurateOnNegativeHalfLine) {
  double worst = 0.0;
  for (int i = 0; i <= 5000; ++i) {
    const double z = -50.0 * std::pow(static_cast<double>(i) / 5000.0, 3.0);
    const double ref = phi1_reference(z);
    worst = std::max(worst, std::abs(phi1(z) - ref) / ref);
  }
  for (double z = -1e-3; z < -1e-9; z *= 0.7) {
    const double ref = phi1_reference(z);
    worst = std::max(worst, std::abs(phi1(z) - ref) / ref);
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Phi1, ApplyUsesScalarFunction) {
  const GridSpec g(16);
  const auto v = single_mode(g, 2, 1, Complex(1.0, 0.5));
  const auto out = phi1_apply(v, 0.01, 0.3);
  const double z = -4 * kPi * kPi * 0.3 * 0.01 * 5;
  const auto p = g.index(2, 1);
  EXPECT_LE(std::abs(out.c[0][p] - phi1_reference(z) * v.c[0][p]), 1e-15);
  EXPECT_EQ(max_abs_diff(phi1_apply(v, 0.3, 0.0), v), 0.0);
}

TEST(InverseHelmholtz, IdentityCasesAndSingleMode) {
  const GridSpec g(16);
  const auto v = single_mode(g, 2, 0, Complex(0.0, 1.0));
  EXPECT_EQ(max_abs_diff(inverse_helmholtz(v, 0.1, 0.0), v), 0.0);
  EXPECT_EQ(max_abs_diff(inverse_helmholtz(v, 0.0, 0.1), v), 0.0);
  // |k|^2 = 4, mu t = 0.01
  const auto out = inverse_helmholtz(v, 0.1, 0.1);
  const double factor = 1.0 / (1.0 + 0.16 * kPi * kPi);
  const auto p = g.index(2, 0);
  EXPECT_LE(std::abs(out.c[1][p] - factor * v.c[1][p]), 1e-15);
}

}  // namespace
}  // namespace nslab
