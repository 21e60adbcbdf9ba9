#pragma once

// The three formulations of non-boolean amplitude amplification.
//
//   Alternating  |Psi_k> = S_Psi0 bold U       |Psi_{k-1}>  for odd k
//                |Psi_k> = S_Psi0 bold U^dag   |Psi_{k-1}>  for even k
//   QIter        |Psi_k> = S_Psi0 bold U [X (x) I] |Psi_{k-1}>
//   AncillaFree  |psi_k> = S_psi0 U / S_psi0 U^dag, odd / even k, on N amplitudes
//
// S is applied as a rank-1 reflection about the cached initial state; the
// preparation unitary A0 is never built.

#include <cstdint>
#include <optional>
#include <vector>

#include "nbamp/amplitude_spec.hpp"
#include "nbamp/operator.hpp"
#include "nbamp/oracles.hpp"
#include "nbamp/statevec.hpp"

namespace nbamp {

// |Psi0> = |+> (x) |psi0>, amplitudes a0(x)/sqrt2 at b*N + x for b = 0, 1.
StateVector prepare_two_register(const AmplitudeSpec& spec);
StateVector prepare_two_register(const StateVector& psi0);

// State after exactly k iterations, before any ancilla measurement.
StateVector run_amplification(const AmplitudeSpec& spec, const PhaseFunction& phi, int k,
                              Formulation formulation);

struct AncillaOutcome {
  int bit;
  StateVector data;  // the measured branch, N amplitudes, renormalized
};

// Measures qubit 0 of a two-register state and drops it.
AncillaOutcome finalize_with_ancilla_measurement(const StateVector& state, std::uint64_t seed);

// bold Q_iter = S_Psi0 bold U [X (x) I] on 2N amplitudes. The generic form takes
// any unitary u on the data register and uses bold U = |0><0| u + |1><1| u^dag.
Operator build_qiter(const AmplitudeSpec& spec, const PhaseFunction& phi);
Operator build_qiter(const StateVector& psi0, const Operator& u);

// Q_evenodd = S_psi0 U S_psi0 U^dag on N amplitudes (U^dag acts first).
Operator build_qevenodd(const AmplitudeSpec& spec, const PhaseFunction& phi);
Operator build_qevenodd(const StateVector& psi0, const Operator& u);

struct AmplificationReport {
  int K = 0;
  Formulation formulation = Formulation::Alternating;
  // Data-register distribution: the marginal over the ancilla, or the
  // measured branch when an ancilla measurement was requested.
  std::vector<double> final_probabilities;
  std::vector<double> predicted_probabilities;
  double cos_theta = 1.0;
  double theta = 0.0;
  // Only meaningful for AncillaFree, where they replace theta in lambda_K.
  double cos_theta_prime = 1.0;
  double theta_prime = 0.0;
  double delta = 0.0;
  double lambda_K = 0.0;
  // floor(pi / (2 theta)) for the formulation's angle; empty when the angle is 0.
  std::optional<int> k_tilde;
  // Set when K was "auto" and 1 - |cos| < 1e-12, so K was forced to 0.
  bool no_amplification_scope = false;
  std::optional<int> ancilla_bit;
};

// k = std::nullopt selects K automatically from k_tilde. When measure_seed is
// given, the ancilla of a two-register result is measured with that seed.
AmplificationReport amplify(const AmplitudeSpec& spec, const PhaseFunction& phi, std::optional<int> k,
                            Formulation formulation,
                            std::optional<std::uint64_t> measure_seed = std::nullopt);

}  // namespace nbamp
