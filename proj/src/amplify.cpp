#include "nbamp/amplify.hpp"

#include <cmath>
#include <string>

#include "nbamp/error.hpp"
#include "nbamp/predict.hpp"

namespace nbamp {

namespace {

void check_dims(const AmplitudeSpec& spec, const PhaseFunction& phi) {
  if (spec.size() != phi.size()) {
    throw DomainError("amplitude spec has " + std::to_string(spec.size()) +
                      " entries but phase function has " + std::to_string(phi.size()));
  }
}

constexpr double kDegenerateCos = 1e-12;

}  // namespace

StateVector prepare_two_register(const StateVector& psi0) {
  const std::size_t n = psi0.dim();
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<Complex> amps(2 * n);
  for (std::size_t x = 0; x < n; ++x) {
    amps[x] = psi0[x] * s;
    amps[n + x] = psi0[x] * s;
  }
  return StateVector(psi0.num_qubits() + 1, std::move(amps));
}

StateVector prepare_two_register(const AmplitudeSpec& spec) { return prepare_two_register(spec.psi0()); }

StateVector run_amplification(const AmplitudeSpec& spec, const PhaseFunction& phi, int k,
                              Formulation formulation) {
  check_dims(spec, phi);
  if (k < 0) throw DomainError("iteration count K must be >= 0, got " + std::to_string(k));

  if (formulation == Formulation::AncillaFree) {
    const auto psi0 = spec.psi0();
    const auto u = phase_oracle(phi);
    const auto s = reflection(psi0);
    auto amps = psi0.to_vector();
    for (int i = 1; i <= k; ++i) {
      if (i % 2 == 1) {
        u.apply_inplace(amps);
      } else {
        u.apply_adjoint_inplace(amps);
      }
      s.apply_inplace(amps);
    }
    return StateVector::adopt(psi0.num_qubits(), std::move(amps));
  }

  const auto big_psi0 = prepare_two_register(spec);
  auto amps = big_psi0.to_vector();
  if (formulation == Formulation::QIter) {
    const auto q = build_qiter(spec, phi);
    for (int i = 0; i < k; ++i) q.apply_inplace(amps);
  } else {
    const auto u = two_register_oracle(phi);
    const auto s = reflection(big_psi0);
    for (int i = 1; i <= k; ++i) {
      if (i % 2 == 1) {
        u.apply_inplace(amps);
      } else {
        u.apply_adjoint_inplace(amps);
      }
      s.apply_inplace(amps);
    }
  }
  return StateVector::adopt(big_psi0.num_qubits(), std::move(amps));
}

AncillaOutcome finalize_with_ancilla_measurement(const StateVector& state, std::uint64_t seed) {
  if (state.num_qubits() < 2) {
    throw DomainError("ancilla measurement needs a two-register state");
  }
  auto m = measure_qubit(state, QubitIndex(0), seed);
  const std::size_t n = state.dim() / 2;
  const auto amps = m.collapsed.amplitudes();
  const auto branch = amps.subspan(m.bit == 0 ? 0 : n, n);
  return {m.bit, StateVector::adopt(state.num_qubits() - 1, {branch.begin(), branch.end()})};
}

Operator build_qiter(const StateVector& psi0, const Operator& u) {
  if (u.dim() != psi0.dim()) throw DomainError("build_qiter: operator/state dimension mismatch");
  const auto big_psi0 = prepare_two_register(psi0);
  return compose(reflection(big_psi0), compose(conditional_two_register(u), flip_ancilla(big_psi0.dim())));
}

Operator build_qiter(const AmplitudeSpec& spec, const PhaseFunction& phi) {
  check_dims(spec, phi);
  const auto big_psi0 = prepare_two_register(spec);
  return compose(reflection(big_psi0), compose(two_register_oracle(phi), flip_ancilla(big_psi0.dim())));
}

Operator build_qevenodd(const StateVector& psi0, const Operator& u) {
  if (u.dim() != psi0.dim()) throw DomainError("build_qevenodd: operator/state dimension mismatch");
  const auto s = reflection(psi0);
  return compose(compose(s, u), compose(s, u.adjoint()));
}

Operator build_qevenodd(const AmplitudeSpec& spec, const PhaseFunction& phi) {
  check_dims(spec, phi);
  return build_qevenodd(spec.psi0(), phase_oracle(phi));
}

AmplificationReport amplify(const AmplitudeSpec& spec, const PhaseFunction& phi, std::optional<int> k,
                            Formulation formulation, std::optional<std::uint64_t> measure_seed) {
  check_dims(spec, phi);
  AmplificationReport r;
  r.formulation = formulation;

  const auto t = theta(spec, phi);
  r.cos_theta = t.cos_theta;
  r.theta = t.theta;
  const auto tp = theta_prime(spec, phi);
  r.cos_theta_prime = tp.cos_theta_prime;
  r.theta_prime = tp.theta_prime;
  r.delta = tp.delta;

  const bool ancilla_free = formulation == Formulation::AncillaFree;
  const double cos_used = ancilla_free ? tp.cos_theta_prime : t.cos_theta;
  const double angle = ancilla_free ? tp.theta_prime : t.theta;
  if (angle > 0.0) r.k_tilde = k_tilde(angle);

  if (k) {
    r.K = *k;
  } else if (1.0 - std::abs(cos_used) < kDegenerateCos || !r.k_tilde) {
    r.K = 0;
    r.no_amplification_scope = true;
  } else {
    r.K = *r.k_tilde;
  }
  if (r.K < 0) throw DomainError("iteration count K must be >= 0, got " + std::to_string(r.K));

  r.lambda_K = lambda_k(angle, r.K);
  r.predicted_probabilities = predicted_probabilities(spec, phi, r.K, formulation);

  const auto state = run_amplification(spec, phi, r.K, formulation);
  if (ancilla_free) {
    r.final_probabilities = probabilities(state);
  } else if (measure_seed) {
    auto outcome = finalize_with_ancilla_measurement(state, *measure_seed);
    r.ancilla_bit = outcome.bit;
    r.final_probabilities = probabilities(outcome.data);
  } else {
    const auto p = probabilities(state);
    const std::size_t n = spec.size();
    r.final_probabilities.resize(n);
    for (std::size_t x = 0; x < n; ++x) r.final_probabilities[x] = p[x] + p[n + x];
  }
  return r;
}

}  // namespace nbamp
