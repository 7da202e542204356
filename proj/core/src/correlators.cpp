#include "kerrgcs/correlators.hpp"

#include <cmath>
#include <string>

#include "kerrgcs/errors.hpp"

namespace kerrgcs {

namespace {

void check_sites(std::size_t M, std::size_t i, std::size_t j, const char* who) {
  if (i >= M || j >= M) {
    throw InvalidArgument(std::string(who) + ": site index out of range (M = " + std::to_string(M) + ")");
  }
}

}  // namespace

cplx tpcf_mmgs(const MmgsState& state, double theta, std::size_t i, std::size_t j) {
  check_sites(state.sites(), i, j, "tpcf_mmgs");
  const cplx ai = state.alpha(i);
  if (i == j) return std::norm(ai);
  const cplx aj = state.alpha(j);
  // |α|²(e^{±iθ} - 1) has real part |α|²(cos θ - 1) and imaginary part ±|α|² sin θ.
  const double c = std::cos(theta) - 1.0;
  const double s = std::sin(theta);
  const double ni = std::norm(ai);
  const double nj = std::norm(aj);
  const cplx exponent{(ni + nj) * c, (ni - nj) * s};
  return std::conj(ai) * aj * std::exp(exponent);
}

cplx tpcf_gcs(const GcsState& state, double theta, std::size_t i, std::size_t j) {
  check_sites(state.sites(), i, j, "tpcf_gcs");
  const std::uint64_t S = state.particles();
  if (S == 0) return 0.0;
  const double dS = static_cast<double>(S);
  if (i == j) return dS * state.population(i);

  const double pi = state.population(i);
  const double pj = state.population(j);
  double rest = 0.0;
  for (std::size_t k = 0; k < state.sites(); ++k) {
    if (k != i && k != j) rest += state.population(k);
  }
  const cplx base = pi * unit_phase(theta) + pj * unit_phase(-theta) + rest;
  return dS * std::conj(state.xi(i)) * state.xi(j) * ipow(base, S - 1);
}

TpcfResult tpcf(const GcsState& state, double theta, std::size_t i, std::size_t j) {
  return {tpcf_gcs(state, theta, i, j), i, j, theta};
}

TpcfResult tpcf(const MmgsState& state, double theta, std::size_t i, std::size_t j) {
  return {tpcf_mmgs(state, theta, i, j), i, j, theta};
}

double tpcf_thermo(double lambda, double theta) {
  if (!(lambda >= 0.0)) throw InvalidArgument("tpcf_thermo: lambda must be >= 0");
  return lambda * std::exp(lambda * (2.0 * std::cos(theta) - 2.0));
}

std::size_t sites_for_filling(std::uint64_t S, double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("filling factor must be > 0");
  const double m = static_cast<double>(S) / lambda;
  const double r = std::round(m);
  if (!(r >= 1.0) || std::abs(m - r) > 1e-9 * std::max(1.0, m)) {
    throw InvalidArgument("S / lambda = " + std::to_string(m) + " is not a positive integer site count");
  }
  return static_cast<std::size_t>(r);
}

double thermo_gap(std::uint64_t S, double lambda, double theta) {
  if (S == 0) throw InvalidArgument("thermo_gap: S must be >= 1");
  const std::size_t M = sites_for_filling(S, lambda);
  if (M < 2) throw InvalidArgument("thermo_gap: need M >= 2 for an off-diagonal correlator");
  const cplx finite = tpcf_gcs(homogeneous_gcs(S, M), theta, 0, 1);
  return std::abs(finite - tpcf_thermo(static_cast<double>(S) / static_cast<double>(M), theta));
}

}  // namespace kerrgcs
