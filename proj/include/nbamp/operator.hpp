#pragma once

// Unitary operators as closures. The algorithms only ever need the action of an
// operator (and of its adjoint) on a vector, never its matrix, so an Operator
// is a dimension plus two in-place kernels. Handles are immutable after
// construction and cheap to copy; the captured state is shared.

#include <cstddef>
#include <functional>
#include <span>

#include "nbamp/statevec.hpp"

namespace nbamp {

class Operator {
 public:
  using Kernel = std::function<void(std::span<Complex>)>;

  Operator(std::size_t dim, Kernel forward, Kernel adjoint);

  static Operator identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }

  // In-place application to a buffer of exactly dim() amplitudes.
  void apply_inplace(std::span<Complex> amps) const;
  void apply_adjoint_inplace(std::span<Complex> amps) const;

  StateVector apply(const StateVector& state) const;
  StateVector apply_adjoint(const StateVector& state) const;

  Operator adjoint() const { return Operator(dim_, adjoint_, forward_); }

  // Global phase e^{i angle} times this operator.
  Operator scaled_by_phase(double angle) const;

 private:
  std::size_t dim_;
  Kernel forward_;
  Kernel adjoint_;
};

// right applied first: (left * right)|v> = left(right|v>).
Operator compose(const Operator& left, const Operator& right);

// |0><0| (x) U + |1><1| (x) U^dagger on a 2*dim space, ancilla most significant.
Operator conditional_two_register(const Operator& u);

// 2|axis><axis| - I. Self-adjoint.
Operator reflection(const StateVector& axis);

// X on the most significant qubit of a dim-dimensional space.
Operator flip_ancilla(std::size_t dim);

}  // namespace nbamp
