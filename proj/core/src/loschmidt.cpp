#include "kerrgcs/loschmidt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "kerrgcs/errors.hpp"
#include "kerrgcs/parallel.hpp"

namespace kerrgcs {

namespace {

void check_dimension(std::uint64_t S, std::size_t M, std::uint64_t limit) {
  std::uint64_t dim = 0;
  try {
    dim = hilbert_dim(S, M);
  } catch (const OverflowError&) {
    dim = std::numeric_limits<std::uint64_t>::max();
  }
  if (dim > limit) {
    throw GuardError(GuardError::Kind::Dimension,
                     "hilbert_dim(" + std::to_string(S) + ", " + std::to_string(M) + ") exceeds " +
                         std::to_string(limit) + "; use the generating-function method");
  }
}

// Depth-first walk over compositions, site by site. Each site contributes
// log(|ξ_i|^{2n}/n!) and e^{-in²θ/2}, both tabulated up front.
struct CompositionSum {
  const std::vector<std::vector<double>>& log_weight;
  const std::vector<cplx>& phase;
  std::size_t M;
  cplx total{0.0, 0.0};

  void walk(std::size_t site, std::uint64_t remaining, double log_w, cplx ph) {
    if (site + 1 == M) {
      const double lw = log_w + log_weight[site][remaining];
      if (lw > -std::numeric_limits<double>::infinity()) total += std::exp(lw) * ph * phase[remaining];
      return;
    }
    for (std::uint64_t n = remaining + 1; n-- > 0;) {
      const double lw = log_w + log_weight[site][n];
      if (lw == -std::numeric_limits<double>::infinity()) continue;
      walk(site + 1, remaining - n, lw, ph * phase[n]);
    }
  }
};

}  // namespace

cplx autocorr_enumerated(const GcsState& state, double theta, std::uint64_t limit) {
  const std::uint64_t S = state.particles();
  const std::size_t M = state.sites();
  check_dimension(S, M, limit);

  std::vector<cplx> phase(S + 1);
  for (std::uint64_t n = 0; n <= S; ++n) {
    phase[n] = unit_phase(-0.5 * static_cast<double>(n * n) * theta);
  }
  std::vector<std::vector<double>> log_weight(M, std::vector<double>(S + 1));
  for (std::size_t i = 0; i < M; ++i) {
    const double p = state.population(i);
    for (std::uint64_t n = 0; n <= S; ++n) {
      if (p == 0.0) {
        log_weight[i][n] = n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
      } else {
        log_weight[i][n] = static_cast<double>(n) * std::log(p) - log_factorial(n);
      }
    }
  }
  CompositionSum sum{log_weight, phase, M};
  sum.walk(0, S, log_factorial(S), cplx{1.0, 0.0});
  return sum.total;
}

cplx autocorr_genfun(const GcsState& state, double theta, ConvolutionBackend backend) {
  const std::uint64_t S = state.particles();
  if (S == 0) return {1.0, 0.0};
  const double dS = static_cast<double>(S);

  std::vector<cplx> phase(S + 1);
  for (std::uint64_t k = 0; k <= S; ++k) phase[k] = unit_phase(-0.5 * static_cast<double>(k * k) * theta);

  // Identical populations share one factor.
  std::map<double, std::size_t> multiplicity;
  for (std::size_t i = 0; i < state.sites(); ++i) ++multiplicity[state.population(i)];

  std::vector<ScaledPolynomial> factors;
  factors.reserve(multiplicity.size());
  for (const auto& [p, count] : multiplicity) {
    if (p == 0.0) continue;  // f_i(x) = 1
    const double mean = dS * p;
    std::vector<cplx> c(S + 1);
    for (std::uint64_t k = 0; k <= S; ++k) c[k] = std::exp(log_poisson_pmf(k, mean)) * phase[k];
    factors.push_back(power_product(ScaledPolynomial(std::move(c)), count, S, backend));
  }
  const ScaledPolynomial total = product(factors, S, backend);
  if (total.coeffs.size() <= S) return {0.0, 0.0};
  const double log_prefactor = log_factorial(S) + dS - dS * std::log(dS);
  return std::exp(log_prefactor + total.log_scale) * total.coeffs[S];
}

FreeEnergy free_energy(cplx amplitude, std::size_t M) {
  if (M == 0) throw InvalidArgument("free_energy: M must be >= 1");
  const double dM = static_cast<double>(M);
  const double survival = std::norm(amplitude);
  if (!(survival >= kSurvivalFloor)) return {-std::log(kSurvivalFloor) / dM, true};
  return {0.0 - std::log(survival) / dM, false};  // 0.0 - x keeps L(0) = +0
}

std::vector<Peak> find_local_maxima(std::span<const double> theta, std::span<const double> values) {
  if (theta.size() != values.size()) throw InvalidArgument("find_local_maxima: size mismatch");
  std::vector<Peak> peaks;
  for (std::size_t k = 1; k + 1 < values.size(); ++k) {
    const double y0 = values[k - 1], y1 = values[k], y2 = values[k + 1];
    if (!(y1 > y0 && y1 >= y2)) continue;
    const double x0 = theta[k - 1], x1 = theta[k], x2 = theta[k + 1];
    // Vertex of the interpolating parabola (general spacing).
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double curvature = (d12 - d01) / (x2 - x0);
    Peak peak{x1, y1};
    if (curvature < 0.0) {
      const double b = d01 - curvature * (x0 + x1);
      const double xv = -b / (2.0 * curvature);
      if (xv >= x0 && xv <= x2) {
        peak.theta = xv;
        peak.value = y1 + (xv - x1) * (d01 + curvature * (xv - x0));
      }
    }
    peaks.push_back(peak);
  }
  return peaks;
}

std::vector<Peak> FreeEnergyCurve::peaks_between(double lo, double hi) const {
  std::vector<Peak> out;
  for (const Peak& p : peaks) {
    if (p.theta > lo && p.theta < hi) out.push_back(p);
  }
  std::stable_sort(out.begin(), out.end(), [](const Peak& a, const Peak& b) { return a.value > b.value; });
  return out;
}

FreeEnergyCurve free_energy_curve(const GcsState& state, const TimeGrid& grid, const CurveOptions& options) {
  FreeEnergyCurve curve;
  const std::size_t n = grid.size();
  curve.theta.assign(grid.values().begin(), grid.values().end());
  curve.amplitude.resize(n);
  curve.L.resize(n);
  curve.saturated.resize(n);

  std::vector<FreeEnergy> fe(n);
  parallel_for(n, options.threads, [&](std::size_t k) {
    curve.amplitude[k] = autocorr_genfun(state, grid[k], options.backend);
    fe[k] = free_energy(curve.amplitude[k], state.sites());
  });
  for (std::size_t k = 0; k < n; ++k) {
    curve.L[k] = fe[k].value;
    curve.saturated[k] = fe[k].saturated;
  }
  curve.peaks = find_local_maxima(curve.theta, curve.L);
  return curve;
}

}  // namespace kerrgcs
