#include "nbamp/meanest.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "nbamp/amplify.hpp"
#include "nbamp/error.hpp"

namespace nbamp {

namespace {

MeanEstimate from_qpe(PhaseEstimate est, double value, std::size_t j) {
  MeanEstimate m;
  m.M = est.M;
  m.mode_omega = est.omega(j);
  m.value = Complex(value, 0.0);
  m.phase = std::move(est);
  return m;
}

}  // namespace

MeanEstimate estimate_cos_mean(const StateVector& psi0, const Operator& u, int M, std::uint64_t shots,
                               std::uint64_t seed) {
  auto est = run_qpe(build_qiter(psi0, u), prepare_two_register(psi0), M, shots, seed);
  const std::size_t j = est.folded_mode();
  const double value = std::cos(est.omega(j));
  return from_qpe(std::move(est), value, j);
}

MeanEstimate estimate_cos_mean(const AmplitudeSpec& spec, const PhaseFunction& phi, int M,
                               std::uint64_t shots, std::uint64_t seed) {
  if (spec.size() != phi.size()) throw DomainError("estimate_cos_mean: spec/phase size mismatch");
  auto est = run_qpe(build_qiter(spec, phi), prepare_two_register(spec), M, shots, seed);
  const std::size_t j = est.folded_mode();
  const double value = std::cos(est.omega(j));
  return from_qpe(std::move(est), value, j);
}

namespace {

MeanEstimate combine(MeanEstimate re, MeanEstimate im) {
  re.value = Complex(re.value.real(), im.value.real());
  re.imag_mode_omega = im.mode_omega;
  re.imag_phase = std::move(im.phase);
  return re;
}

}  // namespace

MeanEstimate estimate_complex_mean(const AmplitudeSpec& spec, const PhaseFunction& phi, int M,
                                   std::uint64_t shots, std::uint64_t seed) {
  return combine(estimate_cos_mean(spec, phi, M, shots, seed),
                 estimate_cos_mean(spec, shift(phi, kPi / 2.0), M, shots, seed + 1));
}

MeanEstimate estimate_complex_mean(const StateVector& psi0, const Operator& u, int M, std::uint64_t shots,
                                   std::uint64_t seed) {
  return combine(estimate_cos_mean(psi0, u, M, shots, seed),
                 estimate_cos_mean(psi0, u.scaled_by_phase(-kPi / 2.0), M, shots, seed + 1));
}

MeanEstimate estimate_magnitude_ancilla_free(const StateVector& psi0, const Operator& u, int M,
                                             std::uint64_t shots, std::uint64_t seed) {
  auto est = run_qpe(build_qevenodd(psi0, u), psi0, M, shots, seed);
  const std::size_t j = est.folded_mode();
  const double value = std::abs(std::cos(est.omega(j) / 2.0));
  return from_qpe(std::move(est), value, j);
}

MeanEstimate estimate_magnitude_ancilla_free(const AmplitudeSpec& spec, const PhaseFunction& phi, int M,
                                             std::uint64_t shots, std::uint64_t seed) {
  if (spec.size() != phi.size()) throw DomainError("estimate_magnitude: spec/phase size mismatch");
  return estimate_magnitude_ancilla_free(spec.psi0(), phase_oracle(phi), M, shots, seed);
}

OverlapEstimate estimate_overlap(const Operator& prepare_a, const Operator& prepare_b, int M,
                                 std::uint64_t shots, std::uint64_t seed) {
  if (prepare_a.dim() != prepare_b.dim()) {
    throw DomainError("overlap: circuits act on different dimensions (" + std::to_string(prepare_a.dim()) +
                      " vs " + std::to_string(prepare_b.dim()) + ")");
  }
  const auto u = compose(prepare_a.adjoint(), prepare_b);
  const auto zero = new_basis_state(qubits_for_dimension(u.dim()), 0);
  return {estimate_complex_mean(zero, u, M, shots, seed),
          estimate_magnitude_ancilla_free(zero, u, M, shots, seed + 2)};
}

std::size_t MetaOracleSpec::data_dim() const {
  if (A_table.empty()) throw DomainError("meta-oracle: empty A table");
  return A_table.front().size();
}

void validate(const MetaOracleSpec& meta) {
  if (meta.control_A_qubits < 0 || meta.control_U_qubits < 0) {
    throw DomainError("meta-oracle: control qubit counts must be >= 0");
  }
  if (meta.control_A_qubits + meta.control_U_qubits > kMaxMetaControlQubits) {
    throw ResourceError("meta-oracle: at most " + std::to_string(kMaxMetaControlQubits) +
                        " control qubits are supported");
  }
  if (meta.A_table.size() != (std::size_t{1} << meta.control_A_qubits)) {
    throw DomainError("meta-oracle: A table needs 2^" + std::to_string(meta.control_A_qubits) + " entries");
  }
  if (meta.U_table.size() != (std::size_t{1} << meta.control_U_qubits)) {
    throw DomainError("meta-oracle: U table needs 2^" + std::to_string(meta.control_U_qubits) + " entries");
  }
  const std::size_t n = meta.data_dim();
  if (qubits_for_dimension(n) > kMaxMetaDataQubits) {
    throw ResourceError("meta-oracle: at most " + std::to_string(kMaxMetaDataQubits) + " data qubits");
  }
  for (const auto& a : meta.A_table) {
    if (a.size() != n) throw DomainError("meta-oracle: A table entries differ in size");
  }
  for (const auto& u : meta.U_table) {
    if (u.dim() != n) throw DomainError("meta-oracle: U table entry does not match the data dimension");
  }
}

std::vector<Operator> oracle_table(const std::vector<PhaseFunction>& phis) {
  std::vector<Operator> ops;
  ops.reserve(phis.size());
  for (const auto& p : phis) ops.push_back(phase_oracle(p));
  return ops;
}

Operator build_meta_qiter(const MetaOracleSpec& meta) {
  validate(meta);
  const std::size_t block = meta.block_dim();
  const std::size_t nu = meta.U_table.size();

  auto reflections = std::make_shared<std::vector<Operator>>();
  for (const auto& a : meta.A_table) reflections->push_back(reflection(prepare_two_register(a)));
  auto oracles = std::make_shared<std::vector<Operator>>();
  for (const auto& u : meta.U_table) oracles->push_back(conditional_two_register(u));

  auto forward = [reflections, oracles, block, nu](std::span<Complex> v) {
    const std::size_t blocks = v.size() / block;
    for (std::size_t c = 0; c < blocks; ++c) {
      auto b = v.subspan(c * block, block);
      kernels::flip_top_qubit(b);
      (*oracles)[c % nu].apply_inplace(b);
      (*reflections)[c / nu].apply_inplace(b);
    }
  };
  auto adjoint = [reflections, oracles, block, nu](std::span<Complex> v) {
    const std::size_t blocks = v.size() / block;
    for (std::size_t c = 0; c < blocks; ++c) {
      auto b = v.subspan(c * block, block);
      (*reflections)[c / nu].apply_adjoint_inplace(b);
      (*oracles)[c % nu].apply_adjoint_inplace(b);
      kernels::flip_top_qubit(b);
    }
  };
  return Operator(meta.total_dim(), forward, adjoint);
}

StateVector meta_qiter_apply(const MetaOracleSpec& meta, const StateVector& state) {
  validate(meta);
  if (state.dim() != meta.total_dim()) {
    throw DomainError("meta_qiter_apply: state dimension " + std::to_string(state.dim()) +
                      " does not match " + std::to_string(meta.total_dim()));
  }
  return build_meta_qiter(meta).apply(state);
}

}  // namespace nbamp
