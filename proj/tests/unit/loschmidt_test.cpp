#include "kerrgcs/loschmidt.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kerrgcs/errors.hpp"
#include "test_support.hpp"

using namespace kerrgcs;

namespace {

cplx two_by_two(double theta) { return 0.5 * std::polar(1.0, -2.0 * theta) + 0.5 * std::polar(1.0, -theta); }

}  // namespace

TEST(Loschmidt, EnumeratedExamples) {
  std::mt19937_64 rng(fixtures::fixture_seed("inhomogeneous_xi"));
  for (double theta : {0.0, 0.3, 1.7, kPi}) {
    for (std::size_t M : {1u, 2u, 5u}) {
      const GcsState one = fixtures::random_gcs(rng, 1, M);
      EXPECT_LT(std::abs(autocorr_enumerated(one, theta) - std::polar(1.0, -theta / 2)), 1e-14);
    }
    EXPECT_LT(std::abs(autocorr_enumerated(homogeneous_gcs(2, 1), theta) - std::polar(1.0, -2.0 * theta)), 1e-14);
    const cplx a = autocorr_enumerated(homogeneous_gcs(2, 2), theta);
    EXPECT_LT(std::abs(a - two_by_two(theta)), 1e-15);
    EXPECT_NEAR(std::norm(a), std::pow(std::cos(theta / 2), 2), 1e-15);
  }
}

TEST(Loschmidt, EnumerationGuard) {
  EXPECT_THROW(autocorr_enumerated(homogeneous_gcs(100, 10), 1.0), GuardError);
  try {
    autocorr_enumerated(homogeneous_gcs(10, 10), 1.0, 100);
    FAIL();
  } catch (const GuardError& e) {
    EXPECT_EQ(e.kind(), GuardError::Kind::Dimension);
    EXPECT_NE(std::string(e.what()).find("generating"), std::string::npos);
  }
}

TEST(Loschmidt, GenfunExamples) {
  EXPECT_LT(std::norm(autocorr_genfun(homogeneous_gcs(2, 2), kPi)), 1e-30);
  std::mt19937_64 rng(fixtures::fixture_seed("inhomogeneous_xi"));
  for (std::uint64_t S : {1u, 7u, 100u, 400u}) {
    EXPECT_LT(std::abs(autocorr_genfun(fixtures::random_gcs(rng, S, 6), 0.0) - 1.0), 1e-12) << S;
  }
  EXPECT_EQ(autocorr_genfun(homogeneous_gcs(0, 4), 2.0), cplx(1.0, 0.0));
}

TEST(Loschmidt, GenfunMatchesEnumerationHomogeneous) {
  for (std::uint64_t S = 0; S <= 12; ++S) {
    for (std::size_t M = 1; M <= 6; ++M) {
      const GcsState st = homogeneous_gcs(S, M);
      for (int k = 0; k < 32; ++k) {
        const double theta = 4.0 * kPi * k / 32.0;
        EXPECT_LT(std::abs(autocorr_genfun(st, theta) - autocorr_enumerated(st, theta)), 1e-10)
            << S << " " << M << " " << theta;
      }
    }
  }
}

TEST(Loschmidt, GenfunMatchesEnumerationInhomogeneous) {
  std::mt19937_64 rng(fixtures::fixture_seed("inhomogeneous_xi"));
  for (std::uint64_t S = 1; S <= 5; ++S) {
    for (std::size_t M = 1; M <= 4; ++M) {
      for (int trial = 0; trial < 4; ++trial) {
        const GcsState st = fixtures::random_gcs(rng, S, M);
        for (double theta : {0.2, 1.1, 2.9, 5.0, 9.3}) {
          EXPECT_LT(std::abs(autocorr_genfun(st, theta) - autocorr_enumerated(st, theta)), 1e-10);
        }
      }
    }
  }
  // One empty mode.
  const GcsState holes(3, {cplx{0.6, 0.0}, cplx{}, cplx{0.0, 0.8}});
  EXPECT_LT(std::abs(autocorr_genfun(holes, 1.3) - autocorr_enumerated(holes, 1.3)), 1e-12);
}

TEST(Loschmidt, UnitarityTimeReversalPeriodicity) {
  std::mt19937_64 rng(fixtures::fixture_seed("inhomogeneous_xi"));
  std::uniform_real_distribution<double> uth(0.0, 4.0 * kPi);
  for (int trial = 0; trial < 40; ++trial) {
    const GcsState st = trial % 2 ? fixtures::random_gcs(rng, 5 + trial, 2 + trial % 7)
                                  : homogeneous_gcs(5 + trial, 2 + trial % 7);
    const double theta = uth(rng);
    const cplx a = autocorr_genfun(st, theta);
    EXPECT_LE(std::abs(a), 1.0 + 1e-9);
    EXPECT_LT(std::abs(autocorr_genfun(st, -theta) - std::conj(a)), 1e-10);
    EXPECT_NEAR(std::abs(autocorr_genfun(st, theta + kTwoPi)), std::abs(a), 1e-9);
  }
}

TEST(Loschmidt, BackendsAgreeUpToS400) {
  for (auto [S, M] : {std::pair{50u, 5u}, std::pair{200u, 40u}, std::pair{400u, 100u}, std::pair{400u, 3u}}) {
    const GcsState st = homogeneous_gcs(S, M);
    for (double theta : {0.5, 2.074, kPi, 4.0}) {
      const cplx direct = autocorr_genfun(st, theta, ConvolutionBackend::Direct);
      const cplx fft = autocorr_genfun(st, theta, ConvolutionBackend::Fft);
      EXPECT_LT(std::abs(direct - fft), 1e-9) << S << " " << M << " " << theta;
    }
  }
}

TEST(Loschmidt, FreeEnergy) {
  EXPECT_EQ(free_energy(1.0, 7).value, 0.0);
  EXPECT_NEAR(free_energy(std::sqrt(std::exp(-5.0)), 5).value, 1.0, 1e-14);
  // A(π) vanishes for S=2, M=2; rounding leaves |A|² ~ 1e-32, still finite.
  const FreeEnergy near_zero = free_energy(autocorr_enumerated(homogeneous_gcs(2, 2), kPi), 2);
  EXPECT_FALSE(near_zero.saturated);
  EXPECT_GT(near_zero.value, 30.0);
  const FreeEnergy zero = free_energy(cplx{0.0}, 2);
  EXPECT_TRUE(zero.saturated);
  EXPECT_NEAR(zero.value, -std::log(kSurvivalFloor) / 2.0, 1e-12);
  EXPECT_FALSE(free_energy(1e-100, 1).saturated);
}

TEST(Loschmidt, LocalMaximaRefinement) {
  // Samples of -(θ - 1.03)² around a maximum between nodes.
  std::vector<double> th, y;
  for (int k = 0; k <= 20; ++k) {
    th.push_back(0.1 * k);
    y.push_back(-(th.back() - 1.03) * (th.back() - 1.03));
  }
  const auto peaks = find_local_maxima(th, y);
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_NEAR(peaks[0].theta, 1.03, 1e-12);
  EXPECT_NEAR(peaks[0].value, 0.0, 1e-12);
}

TEST(Loschmidt, CurveShapesAtS100) {
  const TimeGrid grid = TimeGrid::uniform(0.0, 4.0 * kPi, 2001);

  const FreeEnergyCurve half = free_energy_curve(homogeneous_gcs(100, 200), grid);
  EXPECT_NEAR(half.L[0], 0.0, 1e-13);
  const auto half_peaks = half.peaks_between(0.0, kTwoPi);
  ASSERT_FALSE(half_peaks.empty());
  EXPECT_NEAR(half_peaks[0].theta, kPi, 0.02);

  const FreeEnergyCurve three = free_energy_curve(homogeneous_gcs(100, 3), grid);
  const auto spikes = three.peaks_between(0.0, kTwoPi);
  ASSERT_GE(spikes.size(), 2u);
  const double a = std::min(spikes[0].theta, spikes[1].theta);
  const double b = std::max(spikes[0].theta, spikes[1].theta);
  EXPECT_NEAR(a, 2.074, 0.05);
  EXPECT_NEAR(b, 4.2, 0.1);

  // Grid point k and k + 1000 are θ and θ + 2π.
  for (std::size_t k = 0; k <= 1000; ++k) {
    EXPECT_NEAR(half.L[k], half.L[k + 1000], 1e-9);
  }
}

TEST(Loschmidt, CurveIsThreadCountInvariant) {
  const TimeGrid grid = TimeGrid::uniform(0.0, kTwoPi, 64);
  const GcsState st = homogeneous_gcs(30, 7);
  const auto serial = free_energy_curve(st, grid, {1});
  const auto threaded = free_energy_curve(st, grid, {4});
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_EQ(serial.amplitude[k], threaded.amplitude[k]);
  }
}
