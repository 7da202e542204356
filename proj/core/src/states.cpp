#include "kerrgcs/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "kerrgcs/errors.hpp"

namespace kerrgcs {

namespace {

constexpr double kNormTolerance = 1e-12;

double squared_norm(std::span<const cplx> v) {
  std::vector<double> sq(v.size());
  std::transform(v.begin(), v.end(), sq.begin(), [](const cplx& z) { return std::norm(z); });
  return pairwise_sum(sq);
}

}  // namespace

GcsState::GcsState(std::uint64_t S, std::vector<cplx> xi) : S_(S), xi_(std::move(xi)) {
  if (xi_.empty()) throw InvalidArgument("GcsState: need at least one site (M >= 1)");
  const double n2 = squared_norm(xi_);
  if (!(std::abs(n2 - 1.0) < kNormTolerance)) {
    throw InvalidArgument("GcsState: sum |xi_j|^2 = " + std::to_string(n2) + ", expected 1");
  }
}

GcsState GcsState::normalized(std::uint64_t S, std::vector<cplx> xi) {
  const double n2 = squared_norm(xi);
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw InvalidArgument("GcsState::normalized: amplitudes must be finite and not all zero");
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (cplx& z : xi) z *= inv;
  return GcsState(S, std::move(xi));
}

MmgsState::MmgsState(std::vector<cplx> alpha) : alpha_(std::move(alpha)) {
  if (alpha_.empty()) throw InvalidArgument("MmgsState: need at least one site (M >= 1)");
  ntilde_ = squared_norm(alpha_);
  if (!std::isfinite(ntilde_)) throw InvalidArgument("MmgsState: non-finite amplitude");
}

KerrLattice::KerrLattice(double U_, std::size_t M_) : U(U_), M(M_) {
  if (!(U > 0.0)) throw InvalidArgument("KerrLattice: U must be > 0");
  if (M == 0) throw InvalidArgument("KerrLattice: M must be >= 1");
}

BoseHubbardModel::BoseHubbardModel(double U_, double J_, std::size_t M_, Boundary b)
    : U(U_), J(J_), M(M_), boundary(b) {
  if (M == 0) throw InvalidArgument("BoseHubbardModel: M must be >= 1");
  if (!(J >= 0.0)) throw InvalidArgument("BoseHubbardModel: J must be >= 0");
  if (!std::isfinite(U)) throw InvalidArgument("BoseHubbardModel: U must be finite");
}

TimeGrid::TimeGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidArgument("TimeGrid: empty grid");
  for (std::size_t k = 1; k < values_.size(); ++k) {
    if (!(values_[k] > values_[k - 1])) throw InvalidArgument("TimeGrid: values must be strictly increasing");
  }
  if (values_.size() > 1) spacing_ = (values_.back() - values_.front()) / static_cast<double>(values_.size() - 1);
}

TimeGrid TimeGrid::uniform(double first, double last, std::size_t count) {
  if (count == 0) throw InvalidArgument("TimeGrid::uniform: count must be >= 1");
  if (count == 1) return TimeGrid({first});
  if (!(last > first)) throw InvalidArgument("TimeGrid::uniform: need last > first");
  std::vector<double> v(count);
  const double h = (last - first) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) v[k] = first + h * static_cast<double>(k);
  v.back() = last;
  return TimeGrid(std::move(v));
}

GcsState homogeneous_gcs(std::uint64_t S, std::size_t M) {
  if (M == 0) throw InvalidArgument("homogeneous_gcs: M must be >= 1");
  const double a = 1.0 / std::sqrt(static_cast<double>(M));
  return GcsState(S, std::vector<cplx>(M, cplx{a, 0.0}));
}

MmgsState homogeneous_mmgs(double lambda, std::size_t M) {
  if (!(lambda >= 0.0)) throw InvalidArgument("homogeneous_mmgs: lambda must be >= 0");
  if (M == 0) throw InvalidArgument("homogeneous_mmgs: M must be >= 1");
  return MmgsState(std::vector<cplx>(M, cplx{std::sqrt(lambda), 0.0}));
}

GcsComponent gcs_from_mmgs(const MmgsState& state, std::uint64_t S) {
  const double n = state.mean_particles();
  if (n == 0.0) {
    if (S > 0) throw InvalidArgument("gcs_from_mmgs: vacuum MMGS has no S > 0 component");
    return {homogeneous_gcs(0, state.sites()), 1.0};
  }
  std::vector<cplx> xi(state.alpha().begin(), state.alpha().end());
  return {GcsState::normalized(S, std::move(xi)), std::exp(log_poisson_pmf(S, n))};
}

std::uint64_t hilbert_dim(std::uint64_t S, std::size_t M) {
  if (M == 0) throw InvalidArgument("hilbert_dim: M must be >= 1");
  const std::uint64_t n = S + (M - 1);
  if (n < S) throw OverflowError("hilbert_dim: S + M - 1 overflows");
  const std::uint64_t k = std::min<std::uint64_t>(M - 1, S);
  std::uint64_t c = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    // c · (n - i) / (i + 1) is integral; cancel the gcd first so c/d is exact.
    std::uint64_t num = n - i;
    std::uint64_t den = i + 1;
    const std::uint64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    if (__builtin_mul_overflow(c / den, num, &c)) {
      throw OverflowError("hilbert_dim(" + std::to_string(S) + ", " + std::to_string(M) + ") exceeds 2^64");
    }
  }
  return c;
}

}  // namespace kerrgcs
