#include "nbamp/operator.hpp"

#include <memory>
#include <string>
#include <vector>

#include "nbamp/error.hpp"

namespace nbamp {

namespace {

void check_span(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw DomainError("operator dimension " + std::to_string(expected) +
                      " does not match state dimension " + std::to_string(got));
  }
}

}  // namespace

Operator::Operator(std::size_t dim, Kernel forward, Kernel adjoint)
    : dim_(dim), forward_(std::move(forward)), adjoint_(std::move(adjoint)) {
  qubits_for_dimension(dim);
  if (!forward_ || !adjoint_) throw DomainError("operator kernels must be callable");
}

Operator Operator::identity(std::size_t dim) {
  auto noop = [](std::span<Complex>) {};
  return Operator(dim, noop, noop);
}

void Operator::apply_inplace(std::span<Complex> amps) const {
  check_span(dim_, amps.size());
  forward_(amps);
}

void Operator::apply_adjoint_inplace(std::span<Complex> amps) const {
  check_span(dim_, amps.size());
  adjoint_(amps);
}

StateVector Operator::apply(const StateVector& state) const {
  auto amps = state.to_vector();
  apply_inplace(amps);
  return StateVector::adopt(state.num_qubits(), std::move(amps));
}

StateVector Operator::apply_adjoint(const StateVector& state) const {
  auto amps = state.to_vector();
  apply_adjoint_inplace(amps);
  return StateVector::adopt(state.num_qubits(), std::move(amps));
}

Operator Operator::scaled_by_phase(double angle) const {
  const Complex fwd = std::polar(1.0, angle);
  const Complex adj = std::conj(fwd);
  auto f = forward_;
  auto a = adjoint_;
  return Operator(
      dim_,
      [f, fwd](std::span<Complex> v) {
        f(v);
        for (auto& z : v) z *= fwd;
      },
      [a, adj](std::span<Complex> v) {
        a(v);
        for (auto& z : v) z *= adj;
      });
}

Operator compose(const Operator& left, const Operator& right) {
  if (left.dim() != right.dim()) throw DomainError("compose: dimension mismatch");
  return Operator(
      left.dim(),
      [left, right](std::span<Complex> v) {
        right.apply_inplace(v);
        left.apply_inplace(v);
      },
      [left, right](std::span<Complex> v) {
        left.apply_adjoint_inplace(v);
        right.apply_adjoint_inplace(v);
      });
}

Operator conditional_two_register(const Operator& u) {
  const std::size_t n = u.dim();
  return Operator(
      2 * n,
      [u, n](std::span<Complex> v) {
        u.apply_inplace(v.first(n));
        u.apply_adjoint_inplace(v.subspan(n, n));
      },
      [u, n](std::span<Complex> v) {
        u.apply_adjoint_inplace(v.first(n));
        u.apply_inplace(v.subspan(n, n));
      });
}

Operator reflection(const StateVector& axis) {
  auto shared = std::make_shared<const std::vector<Complex>>(axis.to_vector());
  auto kernel = [shared](std::span<Complex> v) { kernels::reflect(v, *shared); };
  return Operator(axis.dim(), kernel, kernel);
}

Operator flip_ancilla(std::size_t dim) {
  auto kernel = [](std::span<Complex> v) { kernels::flip_top_qubit(v); };
  return Operator(dim, kernel, kernel);
}

}  // namespace nbamp
