#pragma once

#include <vector>

#include "kerrgcs/glauber.hpp"

namespace kerrgcs {

/// Rectangular β-plane sampling: re_points × im_points nodes including the
/// range endpoints.
struct PhaseGridSpec {
  double re_min, re_max;
  double im_min, im_max;
  std::size_t re_points = 201;
  std::size_t im_points = 201;

  /// 201 × 201 over [-(|α|+4), |α|+4]².
  static PhaseGridSpec around(cplx alpha, double margin = 4.0, std::size_t points = 201);
  double re(std::size_t c) const;
  double im(std::size_t r) const;
  void validate() const;
};

/// Row-major values: row r ↔ Im β = spec.im(r), column c ↔ Re β = spec.re(c).
struct PhaseGrid {
  PhaseGridSpec spec;
  std::vector<double> values;

  double at(std::size_t row, std::size_t col) const { return values[row * spec.re_points + col]; }
};

/// |⟨β| e^{-iHt} |α⟩|^M on the grid (no 1/π factor). The truncation must be
/// valid for |α|·max|β|; see truncation_for_grid.
PhaseGrid distribution_grid(cplx alpha, double theta, std::size_t M, const PhaseGridSpec& spec,
                            const TruncationSpec& trunc, unsigned threads = 0);

/// TruncationSpec::for_mean(|α| · max |β| over the grid).
TruncationSpec truncation_for_grid(cplx alpha, const PhaseGridSpec& spec);

/// |G(x, θ)| = |⟨√λ e^{-i2πx}| e^{-iHt} |√λ⟩|^M at the grid nodes.
std::vector<double> circle_section(double sqrt_lambda, double theta, std::size_t M, const XGrid& grid,
                                   const TruncationSpec& trunc);

/// (1/π) ∬ |⟨β|ψ(θ)⟩|² d²β by the midpoint rule on re_points × im_points
/// cells over the grid rectangle; ≈ 1 when the rectangle covers the state.
double husimi_norm_check(cplx alpha, double theta, const PhaseGridSpec& spec, const TruncationSpec& trunc);

}  // namespace kerrgcs
