#pragma once

#include <complex>
#include <cstdint>
#include <span>

namespace kerrgcs {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// log(n!) through lgamma; exact to double rounding for every n that matters here.
double log_factorial(std::uint64_t n);

/// log of the Poisson pmf e^{-mean} mean^k / k!. mean = 0 gives log(δ_{k,0}).
double log_poisson_pmf(std::uint64_t k, double mean);

/// P(X > n_cut) for X ~ Poisson(mean), summed in log space.
double poisson_upper_tail(std::uint64_t n_cut, double mean);

/// Fixed-order pairwise sum; the result depends only on the input order.
cplx pairwise_sum(std::span<const cplx> values);
double pairwise_sum(std::span<const double> values);

/// z^n by repeated squaring (no log/exp, so no branch cut in the phase).
cplx ipow(cplx z, std::uint64_t n);

/// e^{i phase}; phase is reduced mod 2π first so large arguments keep precision.
cplx unit_phase(double phase);

/// Ratio between the deep-lattice amplitude for H = (U/2)Σn(n-1) and the
/// n^2-convention amplitude returned by the GCS autocorrelation routines:
/// A_H(θ) = number_phase(S, θ) · A_{n^2}(θ) with number_phase = e^{iSθ/2}.
cplx number_phase(std::uint64_t S, double theta);

}  // namespace kerrgcs
