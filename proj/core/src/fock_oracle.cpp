#include "kerrgcs/fock_oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "kerrgcs/errors.hpp"
#include "kerrgcs/parallel.hpp"

namespace kerrgcs {

FockSector::FockSector(std::uint64_t S, std::size_t M, std::uint64_t limit) : S_(S), M_(M) {
  if (M == 0) throw InvalidArgument("FockSector: M must be >= 1");
  std::uint64_t dim = 0;
  try {
    dim = hilbert_dim(S, M);
  } catch (const OverflowError&) {
    dim = std::numeric_limits<std::uint64_t>::max();
  }
  if (dim > limit) {
    throw GuardError(GuardError::Kind::Dimension, "sector (S=" + std::to_string(S) + ", M=" + std::to_string(M) +
                                                      ") has dimension above " + std::to_string(limit));
  }
  size_ = static_cast<std::size_t>(dim);

  ways_.assign(M + 1, std::vector<std::uint64_t>(S + 1, 0));
  ways_[0][0] = 1;
  for (std::size_t m = 1; m <= M; ++m) {
    std::uint64_t running = 0;
    for (std::uint64_t s = 0; s <= S; ++s) {
      running += ways_[m - 1][s];
      ways_[m][s] = running;
    }
  }

  occupations_.reserve(size_ * M);
  std::vector<std::uint32_t> current(M, 0);
  // Reverse-lexicographic: put as many particles as possible on the earliest site first.
  auto fill = [&](auto&& self, std::size_t site, std::uint64_t remaining) -> void {
    if (site + 1 == M) {
      current[site] = static_cast<std::uint32_t>(remaining);
      occupations_.insert(occupations_.end(), current.begin(), current.end());
      return;
    }
    for (std::uint64_t n = remaining + 1; n-- > 0;) {
      current[site] = static_cast<std::uint32_t>(n);
      self(self, site + 1, remaining - n);
    }
  };
  fill(fill, 0, S);
}

std::span<const std::uint32_t> FockSector::occupation(std::size_t index) const {
  if (index >= size_) throw InvalidArgument("FockSector::occupation: index out of range");
  return {occupations_.data() + index * M_, M_};
}

std::size_t FockSector::index_of(std::span<const std::uint32_t> occ) const {
  if (occ.size() != M_) throw InvalidArgument("FockSector::index_of: wrong number of sites");
  std::uint64_t total = 0;
  for (auto n : occ) total += n;
  if (total != S_) throw InvalidArgument("FockSector::index_of: occupation not in this sector");
  std::size_t index = 0;
  std::uint64_t remaining = S_;
  for (std::size_t i = 0; i + 1 < M_; ++i) {
    // Skip every configuration whose site i holds more than occ[i].
    for (std::uint64_t v = remaining; v > occ[i]; --v) index += ways_[M_ - i - 1][remaining - v];
    remaining -= occ[i];
  }
  return index;
}

std::vector<cplx> gcs_sector_vector(const GcsState& state, const FockSector& sector) {
  if (state.particles() != sector.particles() || state.sites() != sector.sites()) {
    throw InvalidArgument("gcs_sector_vector: state and sector disagree on (S, M)");
  }
  const double log_s_fact = log_factorial(state.particles());
  std::vector<cplx> v(sector.size());
  for (std::size_t a = 0; a < sector.size(); ++a) {
    const auto occ = sector.occupation(a);
    double log_denominator = 0.0;
    cplx monomial{1.0, 0.0};
    for (std::size_t i = 0; i < occ.size(); ++i) {
      log_denominator += log_factorial(occ[i]);
      monomial *= ipow(state.xi(i), occ[i]);
    }
    v[a] = std::sqrt(std::exp(log_s_fact - log_denominator)) * monomial;
  }
  return v;
}

cplx deep_lattice_autocorr_oracle(const GcsState& state, double theta, std::uint64_t limit) {
  const FockSector sector(state.particles(), state.sites(), limit);
  const std::vector<cplx> v = gcs_sector_vector(state, sector);
  cplx sum{0.0, 0.0};
  for (std::size_t a = 0; a < sector.size(); ++a) {
    std::uint64_t n2 = 0;
    for (auto n : sector.occupation(a)) n2 += static_cast<std::uint64_t>(n) * n;
    sum += std::norm(v[a]) * std::polar(1.0, -0.5 * static_cast<double>(n2) * theta);
  }
  return sum;
}

SectorOperator::SectorOperator(std::size_t dim, std::vector<double> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_) throw InvalidArgument("SectorOperator: entries must be dim x dim");
}

double SectorOperator::hermiticity_error() const {
  double err = 0.0;
  for (std::size_t a = 0; a < dim_; ++a) {
    for (std::size_t b = a + 1; b < dim_; ++b) err = std::max(err, std::abs((*this)(a, b) - (*this)(b, a)));
  }
  return err;
}

SectorOperator build_bose_hubbard(const FockSector& sector, const BoseHubbardModel& model) {
  if (sector.sites() != model.M) throw InvalidArgument("build_bose_hubbard: sector and model disagree on M");
  const std::size_t dim = sector.size();
  const std::size_t M = model.M;
  std::vector<double> h(dim * dim, 0.0);

  std::vector<std::pair<std::size_t, std::size_t>> bonds;
  for (std::size_t i = 0; i + 1 < M; ++i) bonds.emplace_back(i, i + 1);
  if (model.boundary == Boundary::Periodic && M > 2) bonds.emplace_back(M - 1, 0);

  std::vector<std::uint32_t> target(M);
  for (std::size_t b = 0; b < dim; ++b) {
    const auto occ = sector.occupation(b);
    double onsite = 0.0;
    for (auto n : occ) onsite += 0.5 * model.U * static_cast<double>(n) * (static_cast<double>(n) - 1.0);
    h[b * dim + b] = onsite;
    if (model.J == 0.0) continue;
    for (const auto& [p, q] : bonds) {
      for (const auto& [to, from] : {std::pair{p, q}, std::pair{q, p}}) {
        if (occ[from] == 0) continue;
        std::copy(occ.begin(), occ.end(), target.begin());
        const double amp = -model.J * std::sqrt(static_cast<double>(occ[to] + 1) * static_cast<double>(occ[from]));
        ++target[to];
        --target[from];
        h[sector.index_of(target) * dim + b] += amp;
      }
    }
  }
  return SectorOperator(dim, std::move(h));
}

SectorPropagator::SectorPropagator(const SectorOperator& h, std::span<const cplx> start, double energy_unit) {
  if (start.size() != h.dim()) throw InvalidArgument("SectorPropagator: start vector has wrong size");
  if (!(energy_unit > 0.0)) throw InvalidArgument("SectorPropagator: energy unit must be > 0");
  const auto dim = static_cast<Eigen::Index>(h.dim());
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> mat(
      h.entries().data(), dim, dim);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat);
  if (solver.info() != Eigen::Success) throw std::runtime_error("SectorPropagator: eigendecomposition failed");

  const Eigen::Map<const Eigen::VectorXcd> v(start.data(), dim);
  const Eigen::VectorXcd overlaps = solver.eigenvectors().transpose().cast<cplx>() * v;
  energies_.resize(h.dim());
  weights_.resize(h.dim());
  for (Eigen::Index k = 0; k < dim; ++k) {
    energies_[k] = solver.eigenvalues()(k) / energy_unit;
    weights_[k] = std::norm(overlaps(k));
  }
}

cplx SectorPropagator::amplitude(double theta) const {
  cplx sum{0.0, 0.0};
  for (std::size_t k = 0; k < energies_.size(); ++k) sum += weights_[k] * unit_phase(-energies_[k] * theta);
  return sum;
}

double resolve_energy_unit(const BoseHubbardModel& model, double energy_unit) {
  if (energy_unit > 0.0) return energy_unit;
  if (energy_unit < 0.0) throw InvalidArgument("energy unit must be > 0");
  if (!(model.U > 0.0)) {
    throw InvalidArgument("U = 0: time must be measured in another energy unit (e.g. J t)");
  }
  return model.U;
}

ComplexSeries sector_autocorr(const GcsState& state, const BoseHubbardModel& model, const TimeGrid& grid,
                              double energy_unit, std::uint64_t limit) {
  if (state.sites() != model.M) throw InvalidArgument("sector_autocorr: state and model disagree on M");
  const double unit = resolve_energy_unit(model, energy_unit);
  const FockSector sector(state.particles(), state.sites(), limit);
  const SectorPropagator prop(build_bose_hubbard(sector, model), gcs_sector_vector(state, sector), unit);
  ComplexSeries out{"theta", {grid.values().begin(), grid.values().end()}, {}};
  out.values.reserve(grid.size());
  for (double theta : grid.values()) out.values.push_back(prop.amplitude(theta));
  return out;
}

std::uint64_t sector_cutoff(double ntilde, double tol) {
  std::uint64_t n = static_cast<std::uint64_t>(std::floor(ntilde));
  while (poisson_upper_tail(n, ntilde) >= tol) ++n;
  return n;
}

AssembledCrossCorrelation::AssembledCrossCorrelation(const MmgsState& state, const BoseHubbardModel& model,
                                                     double theta, std::uint64_t S_cut, double energy_unit,
                                                     unsigned threads, std::uint64_t limit) {
  if (state.sites() != model.M) throw InvalidArgument("AssembledCrossCorrelation: state and model disagree on M");
  const double ntilde = state.mean_particles();
  const double tail = poisson_upper_tail(S_cut, ntilde);
  if (!(tail < 1e-12)) {
    throw GuardError(GuardError::Kind::Tail, "Poisson(" + std::to_string(ntilde) + ") mass beyond S_cut = " +
                                                 std::to_string(S_cut) + " is " + std::to_string(tail));
  }
  const double unit = resolve_energy_unit(model, energy_unit);
  weight_.resize(S_cut + 1);
  sector_amplitude_.resize(S_cut + 1);
  for (std::uint64_t s = 0; s <= S_cut; ++s) weight_[s] = std::exp(log_poisson_pmf(s, ntilde));

  parallel_for(S_cut + 1, threads, [&](std::size_t s) {
    if (s == 0 || weight_[s] == 0.0) {
      sector_amplitude_[s] = 1.0;
      return;
    }
    const GcsState gcs = gcs_from_mmgs(state, s).state;
    const FockSector sector(s, state.sites(), limit);
    const SectorPropagator prop(build_bose_hubbard(sector, model), gcs_sector_vector(gcs, sector), unit);
    sector_amplitude_[s] = prop.amplitude(theta);
  });
}

cplx AssembledCrossCorrelation::operator()(double x) const {
  cplx sum{0.0, 0.0};
  for (std::size_t s = 0; s < weight_.size(); ++s) {
    sum += weight_[s] * unit_phase(kTwoPi * x * static_cast<double>(s)) * sector_amplitude_[s];
  }
  return sum;
}

cplx mmgs_cross_corr_assembled(const MmgsState& state, const BoseHubbardModel& model, double x, double theta,
                               std::uint64_t S_cut, double energy_unit) {
  return AssembledCrossCorrelation(state, model, theta, S_cut, energy_unit)(x);
}

}  // namespace kerrgcs
