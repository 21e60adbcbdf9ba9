#pragma once

// Mean estimation by phase estimation.
//
//   Re E[e^{i phi}] = cos(theta):  QPE on bold Q_iter with input |Psi0>,
//                                  estimate cos(omega_hat).
//   Im E[e^{i phi}]:               the same with U replaced by e^{-i pi/2} U
//                                  (phi -> phi - pi/2 for phase oracles).
//   |E[e^{i phi}]| = cos(theta'):  QPE on Q_evenodd with input |psi0>,
//                                  estimate |cos(omega_hat / 2)|.
//
// The point estimate is the mode of the folded histogram (j and 2^M - j
// merged, which is exact for both estimators), drawn from sampled counts when
// shots > 0 and from the exact distribution otherwise. The reflection is exact
// here, so no global-phase correction omega_hat - phi_err is needed; a
// circuit-level reflection that is off by a global phase phi_err would
// estimate cos(omega_hat - phi_err) instead.

#include <cstdint>
#include <optional>
#include <vector>

#include "nbamp/amplitude_spec.hpp"
#include "nbamp/operator.hpp"
#include "nbamp/oracles.hpp"
#include "nbamp/qpe.hpp"
#include "nbamp/statevec.hpp"

namespace nbamp {

struct MeanEstimate {
  Complex value;
  int M = 0;
  double mode_omega = 0.0;  // grid point behind value.real() (or the magnitude)
  PhaseEstimate phase;
  // Present for complex estimates: the run that produced value.imag().
  std::optional<PhaseEstimate> imag_phase;
  double imag_mode_omega = 0.0;
};

MeanEstimate estimate_cos_mean(const AmplitudeSpec& spec, const PhaseFunction& phi, int M,
                               std::uint64_t shots, std::uint64_t seed);
MeanEstimate estimate_cos_mean(const StateVector& psi0, const Operator& u, int M, std::uint64_t shots,
                               std::uint64_t seed);

// The imaginary part runs with seed + 1.
MeanEstimate estimate_complex_mean(const AmplitudeSpec& spec, const PhaseFunction& phi, int M,
                                   std::uint64_t shots, std::uint64_t seed);
MeanEstimate estimate_complex_mean(const StateVector& psi0, const Operator& u, int M, std::uint64_t shots,
                                   std::uint64_t seed);

MeanEstimate estimate_magnitude_ancilla_free(const AmplitudeSpec& spec, const PhaseFunction& phi, int M,
                                             std::uint64_t shots, std::uint64_t seed);
MeanEstimate estimate_magnitude_ancilla_free(const StateVector& psi0, const Operator& u, int M,
                                             std::uint64_t shots, std::uint64_t seed);

struct OverlapEstimate {
  MeanEstimate complex_estimate;    // <0|A^dag B|0>
  MeanEstimate magnitude_estimate;  // |<0|A^dag B|0>| through Q_evenodd
};

// <psi|phi> = <0|A^dag B|0> for prepare_a |0> = |psi>, prepare_b |0> = |phi>.
OverlapEstimate estimate_overlap(const Operator& prepare_a, const Operator& prepare_b, int M,
                                 std::uint64_t shots, std::uint64_t seed);

// Q_iter parameterized by control registers. Combined layout, most significant
// first: A controls, U controls, ancilla, data, so the index of
// |x_A, x_U, b, x> is ((x_A * N_U + x_U) * 2 + b) * N + x.
struct MetaOracleSpec {
  int control_A_qubits = 0;
  int control_U_qubits = 0;
  std::vector<AmplitudeSpec> A_table;  // 2^control_A_qubits entries
  std::vector<Operator> U_table;       // 2^control_U_qubits entries, data dimension

  std::size_t data_dim() const;
  std::size_t block_dim() const { return 2 * data_dim(); }
  std::size_t total_dim() const { return A_table.size() * U_table.size() * block_dim(); }
};

inline constexpr int kMaxMetaControlQubits = 4;
inline constexpr int kMaxMetaDataQubits = 6;

// Validates table sizes and dimensions; ResourceError beyond the size caps.
void validate(const MetaOracleSpec& meta);

// Phase-oracle convenience for U_table.
std::vector<Operator> oracle_table(const std::vector<PhaseFunction>& phis);

// Per block (x_A, x_U): X on the ancilla, then bold U(x_U), then the
// reflection about |+> (x) A(x_A)|0>.
StateVector meta_qiter_apply(const MetaOracleSpec& meta, const StateVector& state);
Operator build_meta_qiter(const MetaOracleSpec& meta);

}  // namespace nbamp
