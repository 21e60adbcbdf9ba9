#pragma once

// Quantum phase estimation over an operator handle.
//
// Layout: the M phase qubits are the most significant qubits of the combined
// system, phase qubit 0 first, so the combined index is j * dim + i for phase
// register value j and data index i. Phase qubit q controls u^(2^(M-1-q)).
// After the inverse QFT, register value j corresponds to the grid point
// omega_hat_j = 2*pi*j / 2^M.

#include <cstdint>
#include <optional>
#include <vector>

#include "nbamp/operator.hpp"
#include "nbamp/statevec.hpp"

namespace nbamp {

inline constexpr int kMaxPhaseQubits = 14;

struct PhaseEstimate {
  int M = 0;
  std::vector<double> distribution;                 // exact, 2^M entries
  std::optional<std::vector<std::uint64_t>> counts;  // when shots > 0

  std::size_t grid_size() const noexcept { return distribution.size(); }
  double omega(std::size_t j) const;

  // Most probable j: sampled counts when present, else the exact distribution.
  // Ties go to the lower index.
  std::size_t mode() const;

  // Weights over j = 0..2^(M-1) with j and 2^M - j merged. Estimators that are
  // symmetric under omega -> 2*pi - omega (cos, |cos(omega/2)|) read this.
  std::vector<double> folded_weights() const;
  std::size_t folded_mode() const;
};

// Runs the QPE circuit on `input`. Throws DomainError on dimension mismatch or
// M < 1, ResourceError for M > 14.
PhaseEstimate run_qpe(const Operator& u, const StateVector& input, int M, std::uint64_t shots,
                      std::uint64_t seed);

// Inverse QFT on the leading M qubits of `amps`, whose trailing factor has
// `block` amplitudes. Built from H, controlled phases and swaps.
void inverse_qft_inplace(std::span<Complex> amps, int M, std::size_t block);

}  // namespace nbamp
