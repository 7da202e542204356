#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kerrgcs/special.hpp"

namespace kerrgcs {

/// Truncated power series with a factored-out magnitude:
/// true coefficient k is coeffs[k] · e^{log_scale}.
///
/// After renormalize() the largest stored |coeff| is 1 (zero polynomials are
/// left alone), which keeps every intermediate product O(1) no matter how
/// many factors are multiplied in.
struct ScaledPolynomial {
  std::vector<cplx> coeffs;
  double log_scale = 0.0;

  ScaledPolynomial() = default;
  explicit ScaledPolynomial(std::vector<cplx> c, double log_scale = 0.0);

  std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  /// coeffs[k] · e^{log_scale}, zero past the stored degree.
  cplx coefficient(std::size_t k) const;
  double max_abs() const;
  void renormalize();
  void truncate(std::size_t max_degree);
};

enum class ConvolutionBackend {
  Direct,  ///< schoolbook O(D²)
  Fft,     ///< radix-2 FFT, length = next power of two ≥ deg a + deg b + 1
  Auto,    ///< Fft once both operands exceed kFftThreshold coefficients
};

inline constexpr std::size_t kFftThreshold = 48;

/// In-place radix-2 DFT. data.size() must be a power of two. The inverse
/// includes the 1/N factor.
void fft_inplace(std::span<cplx> data, bool inverse);

std::size_t next_power_of_two(std::size_t n);

/// Product a·b truncated to degree max_degree, renormalized.
ScaledPolynomial convolve(const ScaledPolynomial& a, const ScaledPolynomial& b, std::size_t max_degree,
                          ConvolutionBackend backend = ConvolutionBackend::Auto);

/// f^M truncated at max_degree, by binary exponentiation (truncating and
/// renormalizing after every multiply). M ≥ 1.
ScaledPolynomial power_product(const ScaledPolynomial& f, std::size_t M, std::size_t max_degree,
                               ConvolutionBackend backend = ConvolutionBackend::Auto);

/// Π factors truncated at max_degree, multiplied as a balanced tree.
ScaledPolynomial product(std::span<const ScaledPolynomial> factors, std::size_t max_degree,
                         ConvolutionBackend backend = ConvolutionBackend::Auto);

}  // namespace kerrgcs
