#include <benchmark/benchmark.h>

#include <random>

#include "kerrgcs/polynomial.hpp"

using namespace kerrgcs;

namespace {

ScaledPolynomial random_poly(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> c(n);
  for (auto& z : c) z = {g(rng), g(rng)};
  return ScaledPolynomial(std::move(c));
}

void convolve_backend(benchmark::State& state, ConvolutionBackend backend) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_poly(n, 1), b = random_poly(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(convolve(a, b, 2 * n - 2, backend));
  state.SetComplexityN(state.range(0));
}

void BM_ConvolveDirect(benchmark::State& state) { convolve_backend(state, ConvolutionBackend::Direct); }
void BM_ConvolveFft(benchmark::State& state) { convolve_backend(state, ConvolutionBackend::Fft); }

void BM_PowerProduct(benchmark::State& state) {
  const auto M = static_cast<std::size_t>(state.range(0));
  const auto f = random_poly(101, 3);
  for (auto _ : state) benchmark::DoNotOptimize(power_product(f, M, 100));
}

}  // namespace

BENCHMARK(BM_ConvolveDirect)->RangeMultiplier(4)->Range(16, 1024)->Complexity();
BENCHMARK(BM_ConvolveFft)->RangeMultiplier(4)->Range(16, 1024)->Complexity();
BENCHMARK(BM_PowerProduct)->Arg(3)->Arg(20)->Arg(200);
