#include "kerrgcs/special.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace kerrgcs;

TEST(Special, LogFactorialMatchesProduct) {
  double log_prod = 0.0;
  for (std::uint64_t n = 1; n <= 170; ++n) {
    log_prod += std::log(static_cast<double>(n));
    EXPECT_NEAR(log_factorial(n), log_prod, 1e-12 * std::max(1.0, log_prod)) << n;
  }
  EXPECT_EQ(log_factorial(0), 0.0);
}

TEST(Special, PoissonPmfAtZeroAndVacuum) {
  EXPECT_NEAR(std::exp(log_poisson_pmf(0, 1.0)), std::exp(-1.0), 1e-15);
  EXPECT_EQ(std::exp(log_poisson_pmf(0, 0.0)), 1.0);
  EXPECT_EQ(std::exp(log_poisson_pmf(3, 0.0)), 0.0);
}

TEST(Special, PoissonTailAgainstDirectSum) {
  // 1 - Σ_{k≤n} pmf(k) with the pmf built by the ratio recurrence.
  for (double mean : {0.5, 3.0, 20.0}) {
    for (std::uint64_t n : {0u, 2u, 10u, 30u}) {
      double pmf = std::exp(-mean), cdf = 0.0;
      for (std::uint64_t k = 0; k <= n; ++k) {
        if (k > 0) pmf *= mean / static_cast<double>(k);
        cdf += pmf;
      }
      const double expected = 1.0 - cdf;
      if (expected > 1e-10) {
        EXPECT_NEAR(poisson_upper_tail(n, mean), expected, 1e-12) << mean << " " << n;
      } else {
        EXPECT_LT(poisson_upper_tail(n, mean), 1e-9);
      }
    }
  }
  EXPECT_LT(poisson_upper_tail(80, 10.0), 1e-40);
}

TEST(Special, PairwiseSumIsExactOnIntegers) {
  std::vector<double> v(1000);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<double>(k);
  EXPECT_EQ(pairwise_sum(v), 999.0 * 1000.0 / 2.0);
}

TEST(Special, IpowMatchesRepeatedProduct) {
  const cplx z{0.3, -0.9};
  cplx p{1.0, 0.0};
  for (std::uint64_t n = 0; n < 40; ++n) {
    EXPECT_LT(std::abs(ipow(z, n) - p), 1e-14) << n;
    p *= z;
  }
}

TEST(Special, NumberPhaseConvertsConventions) {
  // Σ n(n-1)/2 = Σ n²/2 - S/2, so the two conventions differ by e^{iSθ/2}.
  const double theta = 0.77;
  const std::uint64_t S = 5;
  EXPECT_LT(std::abs(number_phase(S, theta) - std::polar(1.0, 0.5 * 5 * theta)), 1e-15);
  EXPECT_LT(std::abs(unit_phase(1e4 * kTwoPi + 0.25) - std::polar(1.0, 0.25)), 1e-10);
}
