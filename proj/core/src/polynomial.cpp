#include "kerrgcs/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "kerrgcs/errors.hpp"

namespace kerrgcs {

ScaledPolynomial::ScaledPolynomial(std::vector<cplx> c, double ls) : coeffs(std::move(c)), log_scale(ls) {
  renormalize();
}

cplx ScaledPolynomial::coefficient(std::size_t k) const {
  if (k >= coeffs.size()) return 0.0;
  return coeffs[k] * std::exp(log_scale);
}

double ScaledPolynomial::max_abs() const {
  double m = 0.0;
  for (const cplx& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

void ScaledPolynomial::renormalize() {
  const double m = max_abs();
  if (!(m > 0.0) || !std::isfinite(m)) return;
  const double inv = 1.0 / m;
  for (cplx& c : coeffs) c *= inv;
  log_scale += std::log(m);
}

void ScaledPolynomial::truncate(std::size_t max_degree) {
  if (coeffs.size() > max_degree + 1) coeffs.resize(max_degree + 1);
}

std::size_t next_power_of_two(std::size_t n) { return n <= 1 ? 1 : std::bit_ceil(n); }

void fft_inplace(std::span<cplx> data, bool inverse) {
  const std::size_t n = data.size();
  if (n <= 1) return;
  if (!std::has_single_bit(n)) throw InvalidArgument("fft_inplace: length must be a power of two");

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  // Twiddles for the largest stage, each from its own cos/sin call so the
  // rounding error does not accumulate across the table.
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<cplx> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = sign * kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    twiddle[k] = {std::cos(angle), std::sin(angle)};
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx u = data[start + k];
        const cplx v = data[start + k + half] * twiddle[k * stride];
        data[start + k] = u + v;
        data[start + k + half] = u - v;
      }
    }
  }

  if (inverse) {
    const double inv = 1.0 / static_cast<double>(n);
    for (cplx& z : data) z *= inv;
  }
}

namespace {

std::vector<cplx> convolve_direct(std::span<const cplx> a, std::span<const cplx> b, std::size_t out_len) {
  std::vector<cplx> out(out_len, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < a.size() && i < out_len; ++i) {
    const cplx ai = a[i];
    if (ai == cplx{0.0, 0.0}) continue;
    const std::size_t jmax = std::min(b.size(), out_len - i);
    for (std::size_t j = 0; j < jmax; ++j) out[i + j] += ai * b[j];
  }
  return out;
}

std::vector<cplx> convolve_fft(std::span<const cplx> a, std::span<const cplx> b, std::size_t out_len) {
  const std::size_t n = next_power_of_two(a.size() + b.size() - 1);
  std::vector<cplx> fa(n, cplx{0.0, 0.0});
  std::vector<cplx> fb(n, cplx{0.0, 0.0});
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  fft_inplace(fa, false);
  fft_inplace(fb, false);
  for (std::size_t k = 0; k < n; ++k) fa[k] *= fb[k];
  fft_inplace(fa, true);
  fa.resize(out_len);
  return fa;
}

}  // namespace

ScaledPolynomial convolve(const ScaledPolynomial& a, const ScaledPolynomial& b, std::size_t max_degree,
                          ConvolutionBackend backend) {
  ScaledPolynomial out;
  if (a.coeffs.empty() || b.coeffs.empty()) return out;
  const std::span<const cplx> sa(a.coeffs.data(), std::min(a.coeffs.size(), max_degree + 1));
  const std::span<const cplx> sb(b.coeffs.data(), std::min(b.coeffs.size(), max_degree + 1));
  const std::size_t out_len = std::min(sa.size() + sb.size() - 1, max_degree + 1);

  bool use_fft = backend == ConvolutionBackend::Fft;
  if (backend == ConvolutionBackend::Auto) use_fft = std::min(sa.size(), sb.size()) > kFftThreshold;

  out.coeffs = use_fft ? convolve_fft(sa, sb, out_len) : convolve_direct(sa, sb, out_len);
  out.log_scale = a.log_scale + b.log_scale;
  out.renormalize();
  return out;
}

ScaledPolynomial power_product(const ScaledPolynomial& f, std::size_t M, std::size_t max_degree,
                               ConvolutionBackend backend) {
  if (M == 0) throw InvalidArgument("power_product: M must be >= 1");
  ScaledPolynomial base = f;
  base.truncate(max_degree);
  base.renormalize();
  ScaledPolynomial result;
  bool have_result = false;
  while (M) {
    if (M & 1u) {
      result = have_result ? convolve(result, base, max_degree, backend) : base;
      have_result = true;
    }
    M >>= 1u;
    if (M) base = convolve(base, base, max_degree, backend);
  }
  return result;
}

ScaledPolynomial product(std::span<const ScaledPolynomial> factors, std::size_t max_degree,
                         ConvolutionBackend backend) {
  if (factors.empty()) return ScaledPolynomial({cplx{1.0, 0.0}});
  if (factors.size() == 1) {
    ScaledPolynomial p = factors[0];
    p.truncate(max_degree);
    p.renormalize();
    return p;
  }
  const std::size_t half = factors.size() / 2;
  return convolve(product(factors.first(half), max_degree, backend),
                  product(factors.subspan(half), max_degree, backend), max_degree, backend);
}

}  // namespace kerrgcs
