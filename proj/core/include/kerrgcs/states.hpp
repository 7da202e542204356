#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kerrgcs/special.hpp"

namespace kerrgcs {

/// SU(M) coherent state |S, ξ⟩ = (Σ_j ξ_j a_j†)^S |vac⟩ / √S!.
///
/// The amplitudes are normalized at construction (|Σ|ξ_j|² - 1| < 1e-12) and
/// never rechecked afterwards.
class GcsState {
 public:
  /// Throws InvalidArgument if xi is empty or not normalized to 1e-12.
  GcsState(std::uint64_t S, std::vector<cplx> xi);

  /// Rescales xi to unit norm; rejects an all-zero vector.
  static GcsState normalized(std::uint64_t S, std::vector<cplx> xi);

  std::uint64_t particles() const noexcept { return S_; }
  std::size_t sites() const noexcept { return xi_.size(); }
  std::span<const cplx> xi() const noexcept { return xi_; }
  const cplx& xi(std::size_t j) const { return xi_.at(j); }
  /// |ξ_j|²
  double population(std::size_t j) const { return std::norm(xi_.at(j)); }

 private:
  std::uint64_t S_;
  std::vector<cplx> xi_;
};

/// Product of single-mode Glauber states |α_1⟩⊗…⊗|α_M⟩.
class MmgsState {
 public:
  explicit MmgsState(std::vector<cplx> alpha);

  std::size_t sites() const noexcept { return alpha_.size(); }
  std::span<const cplx> alpha() const noexcept { return alpha_; }
  const cplx& alpha(std::size_t j) const { return alpha_.at(j); }
  /// Ñ = Σ|α_i|², the mean total particle number.
  double mean_particles() const noexcept { return ntilde_; }

 private:
  std::vector<cplx> alpha_;
  double ntilde_;
};

/// H = (U/2) Σ n_i(n_i - 1). Time enters every formula through θ = U t.
struct KerrLattice {
  double U = 1.0;
  std::size_t M = 1;

  KerrLattice(double U, std::size_t M);
};

enum class Boundary { Periodic, Open };

/// H = -J Σ_⟨ij⟩ (a_i† a_j + h.c.) + (U/2) Σ n_i(n_i - 1) on a ring or chain.
struct BoseHubbardModel {
  double U = 1.0;
  double J = 0.0;
  std::size_t M = 1;
  Boundary boundary = Boundary::Periodic;

  BoseHubbardModel(double U, double J, std::size_t M, Boundary boundary = Boundary::Periodic);
};

/// Strictly increasing grid of θ = Ut values.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> values);
  /// count points from first to last inclusive; count == 1 gives {first}.
  static TimeGrid uniform(double first, double last, std::size_t count);

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  std::size_t size() const noexcept { return values_.size(); }
  /// Spacing of a uniform grid; 0 for a single point.
  double spacing() const noexcept { return spacing_; }

 private:
  std::vector<double> values_;
  double spacing_ = 0.0;
};

/// ξ_j = 1/√M for all j.
GcsState homogeneous_gcs(std::uint64_t S, std::size_t M);

/// α_j = √λ for all j, so Ñ = Mλ.
MmgsState homogeneous_mmgs(double lambda, std::size_t M);

struct GcsComponent {
  GcsState state;
  /// Poisson weight P(S) = e^{-Ñ} Ñ^S / S!.
  double weight;
};

/// The S-particle GCS contained in an MMGS: ξ = α/√Ñ with weight P(S).
GcsComponent gcs_from_mmgs(const MmgsState& state, std::uint64_t S);

/// Number of Fock configurations of S bosons on M sites, C(M+S-1, M-1).
/// Throws OverflowError if the value exceeds 2^64 - 1.
std::uint64_t hilbert_dim(std::uint64_t S, std::size_t M);

}  // namespace kerrgcs
