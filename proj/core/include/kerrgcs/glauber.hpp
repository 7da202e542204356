#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kerrgcs/states.hpp"

namespace kerrgcs {

/// Occupation cutoff for the infinite Fock sums of Glauber states.
struct TruncationSpec {
  std::uint64_t n_cut;
  double tail_tol = 1e-14;

  /// n_cut = ceil(mean + 12√mean + 25), tail_tol = 1e-14.
  static TruncationSpec for_mean(double mean);

  /// GuardError(Tail) unless P(Poisson(mean) > n_cut) < tail_tol.
  void validate(double mean) const;
};

/// Uniform nodes x_k = k/N on [0, 1). The rectangle rule on these nodes
/// extracts Fourier coefficients of trigonometric polynomials exactly up to
/// aliasing at frequency offsets that are multiples of N.
class XGrid {
 public:
  explicit XGrid(std::size_t points);
  std::size_t size() const noexcept { return n_; }
  double node(std::size_t k) const { return static_cast<double>(k) / static_cast<double>(n_); }

 private:
  std::size_t n_;
};

/// Smallest admissible XGrid size: S + M · ceil(10√λ + 20).
std::size_t min_xgrid_points(std::uint64_t S, std::size_t M, double lambda);
/// Next power of two ≥ min_xgrid_points.
XGrid default_xgrid(std::uint64_t S, std::size_t M, double lambda);

// All amplitudes below are for H = (U/2) Σ n(n-1) at θ = Ut.

/// ⟨β| e^{-iHt} |α⟩ = e^{-(|α|²+|β|²)/2} Σ_{n≤n_cut} (αβ*)^n/n! e^{-in(n-1)θ/2}.
/// The truncation is validated against mean |αβ*|.
cplx cross_corr_single(cplx beta, cplx alpha, double theta, const TruncationSpec& trunc);

/// ⟨α| e^{-iHt} |α⟩ = Π_i cross_corr_single(α_i, α_i, θ).
cplx survival_mmgs(const MmgsState& state, double theta, const TruncationSpec& trunc);

/// G(x, θ) = [Σ_n λ^n e^{-λ}/n! e^{-in(n-1)θ/2 + i2πxn}]^M.
cplx g_of_x(double x, double theta, double lambda, std::size_t M, const TruncationSpec& trunc);

/// √(2πS) ∫₀¹ dx e^{-i2πxS} G(x, θ) with λ = S/M, evaluated on grid.
/// GuardError(Aliasing) if grid.size() < min_xgrid_points(S, M, λ).
cplx fourier_autocorr_stirling(std::uint64_t S, std::size_t M, double theta, const XGrid& grid,
                               const TruncationSpec& trunc);

/// x ↦ ⟨α e^{-i2πx}| e^{-iHt} |α⟩ at a fixed time, for some number-conserving H.
using CrossCorrProvider = std::function<cplx(double x)>;

/// Closed-form deep-lattice provider Π_i cross_corr_single(α_i e^{-i2πx}, α_i, θ).
CrossCorrProvider deep_lattice_provider(const MmgsState& state, double theta, const TruncationSpec& trunc);

/// Projection onto S particles:
///   e^{Ñ} S!/Ñ^S ∫₀¹ dx e^{-i2πxS} provider(x),
/// prefactor in log space, node values reduced by pairwise summation.
/// For the deep-lattice provider this is the GCS amplitude with ξ = α/√Ñ
/// in the (U/2)n(n-1) convention, without any large-S approximation.
cplx fourier_autocorr_exact(std::uint64_t S, const MmgsState& state, const CrossCorrProvider& provider,
                            const XGrid& grid);

struct IntegrandSample {
  double x;
  cplx value;
};

/// F(x, θ) = e^{-i2πxS} G(x, θ) tabulated on grid.
std::vector<IntegrandSample> f_integrand_profile(std::uint64_t S, double lambda, std::size_t M, double theta,
                                                 const XGrid& grid, const TruncationSpec& trunc);

}  // namespace kerrgcs
