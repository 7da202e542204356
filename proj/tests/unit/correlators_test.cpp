#include "kerrgcs/correlators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "kerrgcs/errors.hpp"
#include "test_support.hpp"

using namespace kerrgcs;

namespace {

using Occupation = std::vector<int>;

void compositions(int remaining, std::size_t sites, Occupation& cur, std::vector<Occupation>& out) {
  if (cur.size() + 1 == sites) {
    cur.push_back(remaining);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int n = 0; n <= remaining; ++n) {
    cur.push_back(n);
    compositions(remaining - n, sites, cur, out);
    cur.pop_back();
  }
}

// ⟨ψ(θ)| a_i† a_j |ψ(θ)⟩ by explicit Fock-space evolution of |S, ξ⟩.
cplx brute_force_tpcf(const GcsState& st, double theta, std::size_t i, std::size_t j) {
  const int S = static_cast<int>(st.particles());
  std::vector<Occupation> basis;
  Occupation cur;
  compositions(S, st.sites(), cur, basis);
  std::map<Occupation, cplx> psi;
  for (const auto& n : basis) {
    double fact = std::tgamma(S + 1.0);
    cplx c{1.0, 0.0};
    double energy = 0.0;
    for (std::size_t k = 0; k < n.size(); ++k) {
      fact /= std::tgamma(n[k] + 1.0);
      c *= std::pow(st.xi(k), n[k]);
      energy += 0.5 * n[k] * (n[k] - 1);
    }
    psi[n] = std::sqrt(fact) * c * std::polar(1.0, -energy * theta);
  }
  cplx sum{0.0, 0.0};
  for (const auto& [n, c] : psi) {
    if (n[j] == 0) continue;
    Occupation m = n;
    double amp = std::sqrt(static_cast<double>(m[j]));
    --m[j];
    amp *= std::sqrt(static_cast<double>(m[i] + 1));
    ++m[i];
    sum += std::conj(psi.at(m)) * amp * c;
  }
  return sum;
}

}  // namespace

TEST(Correlators, MmgsExamples) {
  const MmgsState unit = homogeneous_mmgs(1.0, 4);
  EXPECT_NEAR(std::abs(tpcf_mmgs(unit, 0.0, 0, 1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(tpcf_mmgs(unit, kPi, 0, 1).real(), std::exp(-4.0), 1e-15);
  EXPECT_NEAR(std::exp(-4.0), 0.0183156, 1e-7);
  const MmgsState l3 = homogeneous_mmgs(3.0, 2);
  EXPECT_LT(std::abs(tpcf_mmgs(l3, kTwoPi, 0, 1) - 3.0), 1e-12);
  EXPECT_LT(std::abs(tpcf_mmgs(l3, 1.3, 1, 1) - 3.0), 1e-15);
  EXPECT_THROW(tpcf_mmgs(l3, 0.0, 0, 2), InvalidArgument);
}

TEST(Correlators, GcsTwoSiteClosedForm) {
  const GcsState st = homogeneous_gcs(2, 2);
  for (double theta : {0.0, 0.4, kPi / 2, 2.5, kPi}) {
    EXPECT_LT(std::abs(tpcf_gcs(st, theta, 0, 1) - std::cos(theta)), 1e-15) << theta;
    EXPECT_LT(std::abs(brute_force_tpcf(st, theta, 0, 1) - std::cos(theta)), 1e-14) << theta;
  }
  EXPECT_LT(std::abs(tpcf_gcs(st, kPi / 2, 0, 1)), 1e-15);
}

TEST(Correlators, GcsDiagonalAndInitialValue) {
  std::mt19937_64 rng(fixtures::fixture_seed("tpcf_symmetry"));
  const GcsState st = fixtures::random_gcs(rng, 4, 3);
  for (double theta : {0.0, 1.0, 3.0}) {
    EXPECT_LT(std::abs(tpcf_gcs(st, theta, 1, 1) - 4.0 * st.population(1)), 1e-14);
  }
  EXPECT_LT(std::abs(tpcf_gcs(st, 0.0, 0, 2) - 4.0 * std::conj(st.xi(0)) * st.xi(2)), 1e-14);
  EXPECT_EQ(tpcf_gcs(homogeneous_gcs(0, 3), 1.0, 0, 1), cplx(0.0, 0.0));
}

TEST(Correlators, GcsMatchesFockOracle) {
  std::mt19937_64 rng(fixtures::fixture_seed("tpcf_symmetry"));
  for (std::uint64_t S = 1; S <= 6; ++S) {
    for (std::size_t M = 2; M <= 4; ++M) {
      const GcsState st = fixtures::random_gcs(rng, S, M);
      for (int k = 0; k < 16; ++k) {
        const double theta = 4.0 * kPi * k / 16.0 + 0.1;
        for (std::size_t i = 0; i < M; ++i) {
          for (std::size_t j = 0; j < M; ++j) {
            EXPECT_LT(std::abs(tpcf_gcs(st, theta, i, j) - brute_force_tpcf(st, theta, i, j)), 1e-12)
                << "S=" << S << " M=" << M << " i=" << i << " j=" << j << " theta=" << theta;
          }
        }
      }
    }
  }
}

TEST(Correlators, ConjugateSymmetryAndPeriodicity) {
  std::mt19937_64 rng(fixtures::fixture_seed("tpcf_symmetry"));
  std::uniform_real_distribution<double> uth(-10.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const GcsState g = fixtures::random_gcs(rng, 1 + trial % 20, 2 + trial % 5);
    const MmgsState m(fixtures::random_amplitudes(rng, 2 + trial % 5));
    const double theta = uth(rng);
    EXPECT_LT(std::abs(tpcf_gcs(g, theta, 0, 1) - std::conj(tpcf_gcs(g, theta, 1, 0))), 1e-12);
    EXPECT_LT(std::abs(tpcf_mmgs(m, theta, 0, 1) - std::conj(tpcf_mmgs(m, theta, 1, 0))), 1e-12);
    EXPECT_LT(std::abs(tpcf_gcs(g, theta + kTwoPi, 0, 1) - tpcf_gcs(g, theta, 0, 1)), 1e-12);
    EXPECT_LT(std::abs(tpcf_mmgs(m, theta + kTwoPi, 0, 1) - tpcf_mmgs(m, theta, 0, 1)), 1e-12);
  }
}

TEST(Correlators, Thermo) {
  EXPECT_DOUBLE_EQ(tpcf_thermo(1.0, 0.0), 1.0);
  EXPECT_NEAR(tpcf_thermo(1.0, kPi), std::exp(-4.0), 1e-16);
  EXPECT_NEAR(tpcf_thermo(1.0, kPi), tpcf_mmgs(homogeneous_mmgs(1.0, 2), kPi, 0, 1).real(), 1e-16);
  EXPECT_EQ(tpcf_thermo(0.0, 2.0), 0.0);
}

TEST(Correlators, ThermoGap) {
  for (std::uint64_t S : {3u, 10u, 64u}) EXPECT_LT(thermo_gap(S, 1.0, 0.0), 1e-14);
  EXPECT_LT(thermo_gap(100, 1.0, kPi), thermo_gap(50, 1.0, kPi));
  // Closed forms, λ = 1: |(1 - 4/S)^{S-1} - e^{-4}|.
  for (std::uint64_t S : {50u, 100u, 200u, 400u}) {
    const double expected = std::abs(std::pow(1.0 - 4.0 / S, S - 1.0) - std::exp(-4.0));
    EXPECT_NEAR(thermo_gap(S, 1.0, kPi), expected, 1e-9 * expected);
  }
  double previous = thermo_gap(50, 1.0, kPi);
  for (std::uint64_t S : {100u, 200u, 400u}) {
    const double gap = thermo_gap(S, 1.0, kPi);
    EXPECT_GE(gap / previous, 0.4);
    EXPECT_LE(gap / previous, 0.6);
    previous = gap;
  }
  EXPECT_LT(thermo_gap(100000, 1.0, kPi), 1e-6);
  EXPECT_THROW(thermo_gap(10, 3.0, 1.0), InvalidArgument);  // M = 10/3
}
