#pragma once

#include <cstdint>

#include "kerrgcs/states.hpp"

namespace kerrgcs {

/// ⟨a_i† a_j⟩ at θ = Ut for one state and time.
struct TpcfResult {
  cplx value;
  std::size_t i;
  std::size_t j;
  double theta;
};

/// Two-point function of a multimode Glauber state under the Kerr lattice.
/// i == j returns |α_i|² for all θ.
cplx tpcf_mmgs(const MmgsState& state, double theta, std::size_t i, std::size_t j);

/// Two-point function of a GCS:
///   S ξ_i* ξ_j (|ξ_i|² e^{iθ} + |ξ_j|² e^{-iθ} + Σ_{k≠i,j} |ξ_k|²)^{S-1}   (i ≠ j)
///   S |ξ_i|²                                                            (i = j)
/// The vacuum (S = 0) returns 0.
cplx tpcf_gcs(const GcsState& state, double theta, std::size_t i, std::size_t j);

TpcfResult tpcf(const GcsState& state, double theta, std::size_t i, std::size_t j);
TpcfResult tpcf(const MmgsState& state, double theta, std::size_t i, std::size_t j);

/// Thermodynamic limit λ e^{λ(2cos θ - 2)} at fixed filling λ.
double tpcf_thermo(double lambda, double theta);

/// |tpcf_gcs(homogeneous, i ≠ j) - tpcf_thermo| with M = S/λ, which must be
/// an integer ≥ 2.
double thermo_gap(std::uint64_t S, double lambda, double theta);

/// M = S/λ if it is an integer (to 1e-9), otherwise InvalidArgument.
std::size_t sites_for_filling(std::uint64_t S, double lambda);

}  // namespace kerrgcs
