#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "kerrgcs/series.hpp"
#include "kerrgcs/states.hpp"

namespace kerrgcs {

inline constexpr std::uint64_t kDefaultSectorLimit = 6000;

/// Fixed-number Fock basis: all [n_1..n_M] with Σ n_i = S, in
/// reverse-lexicographic order (first site most occupied first), e.g.
/// S=2, M=2 → (2,0), (1,1), (0,2).
class FockSector {
 public:
  /// GuardError(Dimension) if hilbert_dim(S, M) > limit.
  FockSector(std::uint64_t S, std::size_t M, std::uint64_t limit = kDefaultSectorLimit);

  std::uint64_t particles() const noexcept { return S_; }
  std::size_t sites() const noexcept { return M_; }
  std::size_t size() const noexcept { return size_; }

  std::span<const std::uint32_t> occupation(std::size_t index) const;
  /// Inverse of occupation(); InvalidArgument for a vector outside the sector.
  std::size_t index_of(std::span<const std::uint32_t> occupation) const;

 private:
  std::uint64_t S_;
  std::size_t M_;
  std::size_t size_;
  std::vector<std::uint32_t> occupations_;  // size_ × M_, row-major
  // ways_[m][s] = number of compositions of s into m parts.
  std::vector<std::vector<std::uint64_t>> ways_;
};

/// Coefficients √(S!/Π n_i!) Π ξ_i^{n_i} of |S, ξ⟩ in the sector basis.
std::vector<cplx> gcs_sector_vector(const GcsState& state, const FockSector& sector);

/// Σ_basis |c_n|² e^{-iΣ n_i² θ/2}, built from gcs_sector_vector.
cplx deep_lattice_autocorr_oracle(const GcsState& state, double theta,
                                  std::uint64_t limit = kDefaultSectorLimit);

/// Dense Bose-Hubbard matrix on one sector (real symmetric, energy units).
class SectorOperator {
 public:
  SectorOperator(std::size_t dim, std::vector<double> entries);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  std::span<const double> entries() const noexcept { return entries_; }
  /// max |H_ab - conj(H_ba)|
  double hermiticity_error() const;

 private:
  std::size_t dim_;
  std::vector<double> entries_;
};

/// H_ab = (U/2) Σ n_i(n_i-1) δ_ab - J √((n_i+1) n_j) for a = b + e_i - e_j on a bond (i,j).
/// Periodic rings with M ≤ 2 use one bond per neighbour pair.
SectorOperator build_bose_hubbard(const FockSector& sector, const BoseHubbardModel& model);

/// Spectral decomposition of one sector operator applied to a fixed start
/// vector: A(θ) = Σ_k |⟨φ_k|v⟩|² e^{-i E_k θ / unit}.
class SectorPropagator {
 public:
  SectorPropagator(const SectorOperator& h, std::span<const cplx> start, double energy_unit);
  cplx amplitude(double theta) const;
  std::span<const double> energies() const noexcept { return energies_; }

 private:
  std::vector<double> energies_;  // already divided by energy_unit
  std::vector<double> weights_;
};

/// Energy unit for θ: model.U unless an explicit positive unit is given.
double resolve_energy_unit(const BoseHubbardModel& model, double energy_unit);

/// ⟨S,ξ| e^{-iHt} |S,ξ⟩ on θ = t · energy_unit (energy_unit = 0 → U).
/// Uses the (U/2)n(n-1) on-site convention of build_bose_hubbard.
ComplexSeries sector_autocorr(const GcsState& state, const BoseHubbardModel& model, const TimeGrid& grid,
                              double energy_unit = 0.0, std::uint64_t limit = kDefaultSectorLimit);

/// MMGS cross-correlation assembled from sector amplitudes:
///   e^{-Ñ} Σ_{S'≤S_cut} Ñ^{S'}/S'! e^{i2πxS'} A_{S'}(θ).
/// Sector amplitudes are computed once at construction; operator() is cheap.
class AssembledCrossCorrelation {
 public:
  /// GuardError(Tail) if the Poisson(Ñ) tail past S_cut is ≥ 1e-12.
  AssembledCrossCorrelation(const MmgsState& state, const BoseHubbardModel& model, double theta,
                            std::uint64_t S_cut, double energy_unit = 0.0, unsigned threads = 0,
                            std::uint64_t limit = kDefaultSectorLimit);

  cplx operator()(double x) const;
  /// A_{S'}(θ) for S' = 0..S_cut.
  std::span<const cplx> sector_amplitudes() const noexcept { return sector_amplitude_; }

 private:
  std::vector<double> weight_;
  std::vector<cplx> sector_amplitude_;
};

/// Smallest S_cut with Poisson(Ñ) tail below tol.
std::uint64_t sector_cutoff(double ntilde, double tol = 1e-12);

cplx mmgs_cross_corr_assembled(const MmgsState& state, const BoseHubbardModel& model, double x, double theta,
                               std::uint64_t S_cut, double energy_unit = 0.0);

}  // namespace kerrgcs
