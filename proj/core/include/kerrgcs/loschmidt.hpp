#pragma once

#include <cstdint>
#include <vector>

#include "kerrgcs/polynomial.hpp"
#include "kerrgcs/states.hpp"

namespace kerrgcs {

inline constexpr std::uint64_t kDefaultEnumerationLimit = 2'000'000;
/// |A|² below this is reported as saturated rather than as a finite L.
inline constexpr double kSurvivalFloor = 1e-300;

// GCS Loschmidt amplitudes in the n² convention:
//   A(θ) = S! Σ_{Σn_i = S} Π_i |ξ_i|^{2n_i}/n_i! e^{-i n_i² θ/2}.
// Multiply by number_phase(S, θ) for the (U/2)n(n-1) Hamiltonian.

/// Direct sum over all compositions of S into M parts, multinomial weights in
/// log space. GuardError(Dimension) when hilbert_dim(S, M) exceeds limit.
cplx autocorr_enumerated(const GcsState& state, double theta,
                         std::uint64_t limit = kDefaultEnumerationLimit);

/// Same amplitude as the degree-S coefficient of Π_i f_i(x), with
/// Poisson-rescaled per-mode coefficients (S|ξ_i|²)^k e^{-S|ξ_i|²}/k! e^{-ik²θ/2}
/// and the prefactor exp(log S! + S - S log S) ≈ √(2πS) applied at the end.
/// Modes with equal |ξ_i|² share one factor raised by power_product.
cplx autocorr_genfun(const GcsState& state, double theta,
                     ConvolutionBackend backend = ConvolutionBackend::Auto);

struct FreeEnergy {
  double value;
  /// |A|² < kSurvivalFloor: value is the clamp -(1/M) log(kSurvivalFloor).
  bool saturated;
};

/// L = -(1/M) log |A|².
FreeEnergy free_energy(cplx amplitude, std::size_t M);

struct Peak {
  double theta;
  double value;
};

/// Interior three-point maxima (L[k-1] < L[k] ≥ L[k+1]) refined by the
/// parabola through the three samples. Returned in grid order.
std::vector<Peak> find_local_maxima(std::span<const double> theta, std::span<const double> values);

struct FreeEnergyCurve {
  std::vector<double> theta;
  std::vector<cplx> amplitude;
  std::vector<double> L;
  std::vector<bool> saturated;
  std::vector<Peak> peaks;

  /// Peaks with lo < θ < hi, largest L first.
  std::vector<Peak> peaks_between(double lo, double hi) const;
};

struct CurveOptions {
  unsigned threads = 0;
  ConvolutionBackend backend = ConvolutionBackend::Auto;
};

/// Evaluates autocorr_genfun on every grid point (in parallel, output in grid
/// order) and locates the local maxima of L.
FreeEnergyCurve free_energy_curve(const GcsState& state, const TimeGrid& grid, const CurveOptions& options = {});

}  // namespace kerrgcs
