#include "kerrgcs/glauber.hpp"

#include <cmath>
#include <string>

#include "kerrgcs/errors.hpp"

namespace kerrgcs {

TruncationSpec TruncationSpec::for_mean(double mean) {
  if (!(mean >= 0.0)) throw InvalidArgument("TruncationSpec::for_mean: mean must be >= 0");
  return {static_cast<std::uint64_t>(std::ceil(mean + 12.0 * std::sqrt(mean) + 25.0)), 1e-14};
}

void TruncationSpec::validate(double mean) const {
  const double tail = poisson_upper_tail(n_cut, mean);
  if (!(tail < tail_tol)) {
    throw GuardError(GuardError::Kind::Tail, "Poisson(" + std::to_string(mean) + ") mass beyond n_cut = " +
                                                 std::to_string(n_cut) + " is " + std::to_string(tail) +
                                                 " >= tail_tol " + std::to_string(tail_tol));
  }
}

XGrid::XGrid(std::size_t points) : n_(points) {
  if (points < 2) throw InvalidArgument("XGrid: need at least 2 nodes");
  if (points > (std::size_t{1} << 31)) throw InvalidArgument("XGrid: at most 2^31 nodes");
}

std::size_t min_xgrid_points(std::uint64_t S, std::size_t M, double lambda) {
  const auto margin = static_cast<std::size_t>(std::ceil(10.0 * std::sqrt(std::max(lambda, 0.0)) + 20.0));
  return static_cast<std::size_t>(S) + M * margin;
}

XGrid default_xgrid(std::uint64_t S, std::size_t M, double lambda) {
  std::size_t n = 2;
  while (n < min_xgrid_points(S, M, lambda)) n <<= 1;
  return XGrid(n);
}

namespace {

void check_aliasing(const XGrid& grid, std::uint64_t S, std::size_t M, double lambda) {
  const std::size_t need = min_xgrid_points(S, M, lambda);
  if (grid.size() < need) {
    throw GuardError(GuardError::Kind::Aliasing, "x grid has " + std::to_string(grid.size()) +
                                                     " nodes, need at least " + std::to_string(need));
  }
}

// e^{-i2π k S / N} with the angle reduced exactly in integers.
cplx fourier_kernel(std::size_t k, std::uint64_t S, std::size_t N) {
  // k < N and N stays far below 2^32, so the product cannot overflow.
  const std::uint64_t r = (static_cast<std::uint64_t>(k) * (S % N)) % N;
  return unit_phase(-kTwoPi * static_cast<double>(r) / static_cast<double>(N));
}

// Σ_{n≤n_cut} e^{log_mag(n)} e^{i(n·arg - n(n-1)θ/2)} with log_mag(n) = n log r - log n! + log_norm.
cplx kerr_series(double r, double arg, double theta, double log_norm, std::uint64_t n_cut) {
  if (r == 0.0) return std::exp(log_norm);
  const double log_r = std::log(r);
  cplx sum{0.0, 0.0};
  for (std::uint64_t n = 0; n <= n_cut; ++n) {
    const double dn = static_cast<double>(n);
    const double log_mag = dn * log_r - log_factorial(n) + log_norm;
    const double pair_phase = 0.5 * static_cast<double>(n * (n == 0 ? 0 : n - 1)) * theta;
    sum += std::exp(log_mag) * unit_phase(dn * arg - pair_phase);
  }
  return sum;
}

}  // namespace

cplx cross_corr_single(cplx beta, cplx alpha, double theta, const TruncationSpec& trunc) {
  const cplx z = alpha * std::conj(beta);
  trunc.validate(std::abs(z));
  const double log_norm = -0.5 * (std::norm(alpha) + std::norm(beta));
  return kerr_series(std::abs(z), std::arg(z), theta, log_norm, trunc.n_cut);
}

cplx survival_mmgs(const MmgsState& state, double theta, const TruncationSpec& trunc) {
  cplx result{1.0, 0.0};
  for (const cplx& a : state.alpha()) result *= cross_corr_single(a, a, theta, trunc);
  return result;
}

cplx g_of_x(double x, double theta, double lambda, std::size_t M, const TruncationSpec& trunc) {
  if (!(lambda >= 0.0)) throw InvalidArgument("g_of_x: lambda must be >= 0");
  if (M == 0) throw InvalidArgument("g_of_x: M must be >= 1");
  trunc.validate(lambda);
  const cplx base = kerr_series(lambda, kTwoPi * x, theta, -lambda, trunc.n_cut);
  return ipow(base, M);
}

cplx fourier_autocorr_stirling(std::uint64_t S, std::size_t M, double theta, const XGrid& grid,
                               const TruncationSpec& trunc) {
  if (S == 0) throw InvalidArgument("fourier_autocorr_stirling: S must be >= 1");
  if (M == 0) throw InvalidArgument("fourier_autocorr_stirling: M must be >= 1");
  const double lambda = static_cast<double>(S) / static_cast<double>(M);
  check_aliasing(grid, S, M, lambda);
  std::vector<cplx> nodes(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    nodes[k] = fourier_kernel(k, S, grid.size()) * g_of_x(grid.node(k), theta, lambda, M, trunc);
  }
  const double scale = std::sqrt(kTwoPi * static_cast<double>(S)) / static_cast<double>(grid.size());
  return scale * pairwise_sum(nodes);
}

CrossCorrProvider deep_lattice_provider(const MmgsState& state, double theta, const TruncationSpec& trunc) {
  double max_pop = 0.0;
  for (const cplx& a : state.alpha()) max_pop = std::max(max_pop, std::norm(a));
  trunc.validate(max_pop);
  return [state, theta, trunc](double x) {
    const cplx shift = unit_phase(-kTwoPi * x);
    cplx result{1.0, 0.0};
    for (const cplx& a : state.alpha()) result *= cross_corr_single(a * shift, a, theta, trunc);
    return result;
  };
}

cplx fourier_autocorr_exact(std::uint64_t S, const MmgsState& state, const CrossCorrProvider& provider,
                            const XGrid& grid) {
  const double ntilde = state.mean_particles();
  if (ntilde == 0.0) {
    if (S > 0) throw InvalidArgument("fourier_autocorr_exact: vacuum MMGS has no S > 0 component");
    return {1.0, 0.0};
  }
  const std::size_t M = state.sites();
  check_aliasing(grid, S, M, ntilde / static_cast<double>(M));
  std::vector<cplx> nodes(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    nodes[k] = fourier_kernel(k, S, grid.size()) * provider(grid.node(k));
  }
  const double dS = static_cast<double>(S);
  const double log_prefactor = ntilde + log_factorial(S) - dS * std::log(ntilde);
  return std::exp(log_prefactor) / static_cast<double>(grid.size()) * pairwise_sum(nodes);
}

std::vector<IntegrandSample> f_integrand_profile(std::uint64_t S, double lambda, std::size_t M, double theta,
                                                 const XGrid& grid, const TruncationSpec& trunc) {
  std::vector<IntegrandSample> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid.node(k);
    out[k] = {x, fourier_kernel(k, S, grid.size()) * g_of_x(x, theta, lambda, M, trunc)};
  }
  return out;
}

}  // namespace kerrgcs
