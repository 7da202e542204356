#include "kerrgcs/glauber.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kerrgcs/errors.hpp"
#include "kerrgcs/loschmidt.hpp"
#include "test_support.hpp"

using namespace kerrgcs;

namespace {

// √(2πS) e^{-S} S^S / S! from the asymptotic Stirling series
// S! = √(2πS)(S/e)^S (1 + 1/12S + 1/288S² - 139/51840S³ - 571/2488320S⁴ + ...).
double stirling_ratio_oracle(double S) {
  const double series = 1.0 + 1.0 / (12.0 * S) + 1.0 / (288.0 * S * S) - 139.0 / (51840.0 * S * S * S) -
                        571.0 / (2488320.0 * S * S * S * S);
  return 1.0 / series;
}

}  // namespace

TEST(Glauber, TruncationDefaults) {
  const TruncationSpec t = TruncationSpec::for_mean(1.0);
  EXPECT_EQ(t.n_cut, 38u);
  EXPECT_EQ(t.tail_tol, 1e-14);
  EXPECT_NO_THROW(t.validate(1.0));
  for (double mean : {0.0, 0.5, 2.0, 34.0, 56.0}) EXPECT_NO_THROW(TruncationSpec::for_mean(mean).validate(mean));
  EXPECT_THROW((TruncationSpec{5, 1e-14}.validate(10.0)), GuardError);
}

TEST(Glauber, SurvivalAtFullPeriods) {
  const MmgsState st = homogeneous_mmgs(2.0, 5);
  const auto trunc = TruncationSpec::for_mean(2.0);
  EXPECT_LT(std::abs(survival_mmgs(st, 0.0, trunc) - 1.0), 1e-12);
  EXPECT_LT(std::abs(survival_mmgs(st, kTwoPi, trunc) - 1.0), 1e-12);
  EXPECT_LT(std::abs(survival_mmgs(st, 2.0 * kTwoPi, trunc) - 1.0), 1e-12);
  for (double theta : {0.5, 2.0, kPi, 5.0}) {
    const double a = std::abs(survival_mmgs(st, theta, trunc));
    EXPECT_LT(a, 1.0 - 1e-6);
  }
}

TEST(Glauber, SurvivalCurveMinimaAtMultiplesOfTwoPi) {
  // λ = 2: L = -(1/M) log|·|² vanishes only at θ ∈ 2πZ on [0, 4π].
  const MmgsState st = homogeneous_mmgs(2.0, 1);
  const auto trunc = TruncationSpec::for_mean(2.0);
  const TimeGrid grid = TimeGrid::uniform(0.0, 4.0 * kPi, 401);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double L = free_energy(survival_mmgs(st, grid[k], trunc), 1).value;
    if (k % 200 == 0) {
      EXPECT_NEAR(L, 0.0, 1e-12);
    } else {
      EXPECT_GT(L, 1e-6);
    }
  }
}

TEST(Glauber, CrossCorrelationNormalization) {
  const auto trunc = TruncationSpec::for_mean(9.0);
  EXPECT_LT(std::abs(cross_corr_single({1.2, -2.0}, {1.2, -2.0}, 0.0, trunc) - 1.0), 1e-13);
}

TEST(Glauber, CatStateClosedForm) {
  const double a = std::sqrt(100.0 / 3.0);
  const auto trunc = TruncationSpec::for_mean(a * a);
  const cplx plus = cross_corr_single({0.0, a}, a, kPi, trunc);
  const cplx minus = cross_corr_single({0.0, -a}, a, kPi, trunc);
  EXPECT_LT(std::abs(plus - cplx(0.5, -0.5)), 1e-3);
  EXPECT_LT(std::abs(minus - cplx(0.5, 0.5)), 1e-3);

  for (auto [alpha, mag] : {std::pair{1.3, 0.7}, std::pair{2.0, 2.0}, std::pair{0.4, 3.1}}) {
    const double norm = std::exp(-(alpha * alpha + mag * mag) / 2);
    const double ch = std::cosh(alpha * mag), sh = std::sinh(alpha * mag);
    const auto t = TruncationSpec::for_mean(alpha * mag);
    EXPECT_LT(std::abs(cross_corr_single({0.0, mag}, alpha, kPi, t) - norm * cplx(ch, -sh)), 1e-13);
    EXPECT_LT(std::abs(cross_corr_single({0.0, -mag}, alpha, kPi, t) - norm * cplx(ch, sh)), 1e-13);
  }
}

TEST(Glauber, GOfXClosedFormAtZeroTime) {
  const auto trunc = TruncationSpec::for_mean(1.5);
  for (double x : {0.0, 0.1, 0.37, 0.9}) {
    const cplx expected = std::exp(4.0 * 1.5 * (std::polar(1.0, kTwoPi * x) - 1.0));
    EXPECT_LT(std::abs(g_of_x(x, 0.0, 1.5, 4, trunc) - expected), 1e-13);
  }
  EXPECT_LT(std::abs(g_of_x(0.0, 0.0, 1.0, 50, TruncationSpec::for_mean(1.0)) - 1.0), 1e-13);
}

TEST(Glauber, GEqualsCrossCorrelationPower) {
  std::mt19937_64 rng(fixtures::fixture_seed("g_identity"));
  std::uniform_real_distribution<double> ux(0.0, 1.0), uth(-8.0, 8.0), ul(0.0, 5.0);
  std::uniform_int_distribution<int> um(1, 50);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = ux(rng), theta = uth(rng), lambda = ul(rng);
    const std::size_t M = um(rng);
    const auto trunc = TruncationSpec::for_mean(lambda);
    const double r = std::sqrt(lambda);
    const cplx via_cc = ipow(cross_corr_single(r * std::polar(1.0, -kTwoPi * x), r, theta, trunc), M);
    EXPECT_LT(std::abs(g_of_x(x, theta, lambda, M, trunc) - via_cc), 1e-12);
  }
}

TEST(Glauber, StirlingRatioAtZeroTime) {
  EXPECT_NEAR(stirling_ratio_oracle(100.0), 0.999168, 1e-6);
  EXPECT_NEAR(stirling_ratio_oracle(10.0), 0.99170, 1e-5);
  double previous_error = 1.0;
  for (auto [S, M] : {std::pair{10u, 5u}, std::pair{25u, 5u}, std::pair{50u, 10u}, std::pair{100u, 100u}}) {
    const double lambda = double(S) / M;
    const cplx value = fourier_autocorr_stirling(S, M, 0.0, default_xgrid(S, M, lambda),
                                                 TruncationSpec::for_mean(lambda));
    EXPECT_NEAR(value.real(), stirling_ratio_oracle(S), 1e-6) << S;
    EXPECT_NEAR(value.imag(), 0.0, 1e-12);
    const double error = std::abs(value - 1.0);
    EXPECT_LT(error, previous_error);
    previous_error = error;
  }
}

TEST(Glauber, StirlingTracksExactAmplitudeAtLargeS) {
  const std::uint64_t S = 100;
  const std::size_t M = 100;
  const XGrid grid = default_xgrid(S, M, 1.0);
  const auto trunc = TruncationSpec::for_mean(1.0);
  const GcsState gcs = homogeneous_gcs(S, M);
  for (double theta : {0.3, 1.2, 2.5}) {
    const cplx exact = number_phase(S, theta) * autocorr_genfun(gcs, theta);
    const cplx approx = fourier_autocorr_stirling(S, M, theta, grid, trunc);
    EXPECT_LT(std::abs(approx / exact - stirling_ratio_oracle(S)), 1e-9) << theta;
  }
}

TEST(Glauber, ExactProjectionMatchesGeneratingFunction) {
  const MmgsState st = homogeneous_mmgs(10.0, 2);
  const GcsState gcs = homogeneous_gcs(20, 2);
  const auto trunc = TruncationSpec::for_mean(10.0);
  const XGrid grid(4096);
  for (int k = 0; k < 16; ++k) {
    const double theta = 4.0 * kPi * k / 16.0 + 0.05;
    const cplx exact = fourier_autocorr_exact(20, st, deep_lattice_provider(st, theta, trunc), grid);
    EXPECT_LT(std::abs(exact - number_phase(20, theta) * autocorr_genfun(gcs, theta)), 1e-8) << theta;
  }
  EXPECT_LT(std::abs(fourier_autocorr_exact(20, st, deep_lattice_provider(st, 0.0, trunc), grid) - 1.0), 1e-10);
}

TEST(Glauber, ExactProjectionInhomogeneous) {
  const MmgsState st({cplx{1.0, 0.5}, cplx{-0.3, 1.7}, cplx{0.8, 0.0}});
  const auto trunc = TruncationSpec::for_mean(4.0);
  const XGrid grid(1024);
  for (std::uint64_t S : {1u, 3u, 6u}) {
    const GcsState gcs = gcs_from_mmgs(st, S).state;
    for (double theta : {0.4, 2.2}) {
      const cplx exact = fourier_autocorr_exact(S, st, deep_lattice_provider(st, theta, trunc), grid);
      EXPECT_LT(std::abs(exact - number_phase(S, theta) * autocorr_enumerated(gcs, theta)), 1e-10);
    }
  }
}

TEST(Glauber, DftDoublingStability) {
  std::mt19937_64 rng(fixtures::fixture_seed("dft_doubling"));
  std::uniform_real_distribution<double> uth(0.0, 4.0 * kPi);
  for (int trial = 0; trial < 6; ++trial) {
    const std::uint64_t S = 10 + 7 * trial;
    const std::size_t M = 2 + trial;
    const double lambda = double(S) / M;
    const double theta = uth(rng);
    const XGrid base = default_xgrid(S, M, lambda);
    const XGrid doubled(2 * base.size());
    const auto trunc = TruncationSpec::for_mean(lambda);
    EXPECT_LT(std::abs(fourier_autocorr_stirling(S, M, theta, base, trunc) -
                       fourier_autocorr_stirling(S, M, theta, doubled, trunc)),
              1e-10);
  }
}

TEST(Glauber, AliasingGuard) {
  EXPECT_EQ(min_xgrid_points(100, 100, 1.0), 100u + 100u * 30u);
  try {
    fourier_autocorr_stirling(20, 2, 1.0, XGrid(16), TruncationSpec::for_mean(10.0));
    FAIL();
  } catch (const GuardError& e) {
    EXPECT_EQ(e.kind(), GuardError::Kind::Aliasing);
  }
}

TEST(Glauber, IntegrandProfile) {
  const std::uint64_t S = 100;
  const std::size_t M = 3;
  const double lambda = 100.0 / 3.0;
  const auto trunc = TruncationSpec::for_mean(lambda);
  const XGrid grid = default_xgrid(S, M, lambda);

  const auto zero = f_integrand_profile(S, lambda, M, 0.0, grid, trunc);
  for (std::size_t k = 0; k < zero.size(); k += 37) {
    const double x = zero[k].x;
    const cplx expected = std::polar(1.0, -kTwoPi * x * double(S)) *
                          std::exp(double(M) * lambda * (std::polar(1.0, kTwoPi * x) - 1.0));
    EXPECT_LT(std::abs(zero[k].value - expected), 1e-10);
  }

  auto net_and_abs = [&](double theta) {
    const auto prof = f_integrand_profile(S, lambda, M, theta, grid, trunc);
    cplx net{0.0, 0.0};
    double total = 0.0;
    for (const auto& s : prof) {
      net += s.value;
      total += std::abs(s.value);
    }
    return std::pair{std::abs(net), total};
  };
  const auto [net_quarter, abs_quarter] = net_and_abs(kPi / 2);
  EXPECT_GT(net_quarter / abs_quarter, 1e-2);
  const auto [net_spike, abs_spike] = net_and_abs(2.074);
  EXPECT_LT(net_spike / abs_spike, 1e-6);
}
