#include "kerrgcs/phasespace.hpp"

#include <algorithm>
#include <cmath>

#include "kerrgcs/errors.hpp"
#include "kerrgcs/parallel.hpp"

namespace kerrgcs {

PhaseGridSpec PhaseGridSpec::around(cplx alpha, double margin, std::size_t points) {
  const double r = std::abs(alpha) + margin;
  return {-r, r, -r, r, points, points};
}

double PhaseGridSpec::re(std::size_t c) const {
  if (re_points == 1) return re_min;
  return re_min + (re_max - re_min) * static_cast<double>(c) / static_cast<double>(re_points - 1);
}

double PhaseGridSpec::im(std::size_t r) const {
  if (im_points == 1) return im_min;
  return im_min + (im_max - im_min) * static_cast<double>(r) / static_cast<double>(im_points - 1);
}

void PhaseGridSpec::validate() const {
  if (re_points == 0 || im_points == 0) throw InvalidArgument("PhaseGridSpec: resolution must be >= 1");
  if (!(re_max >= re_min) || !(im_max >= im_min)) throw InvalidArgument("PhaseGridSpec: empty range");
}

TruncationSpec truncation_for_grid(cplx alpha, const PhaseGridSpec& spec) {
  const double re = std::max(std::abs(spec.re_min), std::abs(spec.re_max));
  const double im = std::max(std::abs(spec.im_min), std::abs(spec.im_max));
  return TruncationSpec::for_mean(std::abs(alpha) * std::hypot(re, im));
}

PhaseGrid distribution_grid(cplx alpha, double theta, std::size_t M, const PhaseGridSpec& spec,
                            const TruncationSpec& trunc, unsigned threads) {
  spec.validate();
  if (M == 0) throw InvalidArgument("distribution_grid: M must be >= 1");
  PhaseGrid grid{spec, std::vector<double>(spec.re_points * spec.im_points)};
  parallel_for(spec.im_points, threads, [&](std::size_t r) {
    for (std::size_t c = 0; c < spec.re_points; ++c) {
      const cplx beta{spec.re(c), spec.im(r)};
      const double overlap = std::abs(cross_corr_single(beta, alpha, theta, trunc));
      grid.values[r * spec.re_points + c] = std::min(1.0, std::pow(overlap, static_cast<double>(M)));
    }
  });
  return grid;
}

std::vector<double> circle_section(double sqrt_lambda, double theta, std::size_t M, const XGrid& grid,
                                   const TruncationSpec& trunc) {
  if (!(sqrt_lambda >= 0.0)) throw InvalidArgument("circle_section: radius must be >= 0");
  std::vector<double> out(grid.size());
  const cplx alpha{sqrt_lambda, 0.0};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const cplx beta = alpha * unit_phase(-kTwoPi * grid.node(k));
    out[k] = std::pow(std::abs(cross_corr_single(beta, alpha, theta, trunc)), static_cast<double>(M));
  }
  return out;
}

double husimi_norm_check(cplx alpha, double theta, const PhaseGridSpec& spec, const TruncationSpec& trunc) {
  spec.validate();
  const double dre = (spec.re_max - spec.re_min) / static_cast<double>(spec.re_points);
  const double dim = (spec.im_max - spec.im_min) / static_cast<double>(spec.im_points);
  std::vector<double> rows(spec.im_points);
  for (std::size_t r = 0; r < spec.im_points; ++r) {
    const double im = spec.im_min + (static_cast<double>(r) + 0.5) * dim;
    std::vector<double> row(spec.re_points);
    for (std::size_t c = 0; c < spec.re_points; ++c) {
      const double re = spec.re_min + (static_cast<double>(c) + 0.5) * dre;
      row[c] = std::norm(cross_corr_single({re, im}, alpha, theta, trunc));
    }
    rows[r] = pairwise_sum(row);
  }
  return pairwise_sum(rows) * dre * dim / kPi;
}

}  // namespace kerrgcs
