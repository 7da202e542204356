#include "kerrgcs/special.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace kerrgcs {

double log_factorial(std::uint64_t n) {
  if (n < 2) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_poisson_pmf(std::uint64_t k, double mean) {
  if (mean == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return -mean + static_cast<double>(k) * std::log(mean) - log_factorial(k);
}

double poisson_upper_tail(std::uint64_t n_cut, double mean) {
  if (mean == 0.0) return 0.0;
  // Terms past the mode decay at least geometrically; stop once they are
  // below 1e-20 of the accumulated mass.
  const double stop = mean + 40.0 * std::sqrt(mean) + 200.0;
  double tail = 0.0;
  for (std::uint64_t k = n_cut + 1;; ++k) {
    const double term = std::exp(log_poisson_pmf(k, mean));
    tail += term;
    if (static_cast<double>(k) > mean && (term <= 1e-20 * tail || term == 0.0)) break;
    if (static_cast<double>(k) > stop) break;
  }
  return tail;
}

namespace {

template <typename T>
T pairwise(std::span<const T> v) {
  if (v.size() <= 8) {
    T acc{};
    for (const T& x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise(v.first(half)) + pairwise(v.subspan(half));
}

}  // namespace

cplx pairwise_sum(std::span<const cplx> values) { return pairwise(values); }
double pairwise_sum(std::span<const double> values) { return pairwise(values); }

cplx ipow(cplx z, std::uint64_t n) {
  cplx result{1.0, 0.0};
  while (n) {
    if (n & 1u) result *= z;
    n >>= 1u;
    if (n) z *= z;
  }
  return result;
}

cplx unit_phase(double phase) {
  const double reduced = std::remainder(phase, kTwoPi);
  return {std::cos(reduced), std::sin(reduced)};
}

cplx number_phase(std::uint64_t S, double theta) {
  return unit_phase(0.5 * static_cast<double>(S) * theta);
}

}  // namespace kerrgcs
