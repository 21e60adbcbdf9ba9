#include "nbamp/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nbamp/error.hpp"

namespace nbamp {

namespace {

void check_qubit(int num_qubits, int q) {
  if (q < 0 || q >= num_qubits) {
    throw DomainError("qubit index " + std::to_string(q) + " out of range for " +
                      std::to_string(num_qubits) + " qubits");
  }
}

void check_same_dim(const StateVector& a, const StateVector& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DomainError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                      " vs " + std::to_string(b.dim()) + ")");
  }
}

}  // namespace

StateVector::StateVector(int num_qubits, std::vector<Complex> amplitudes)
    : StateVector(Unchecked{}, num_qubits, std::move(amplitudes)) {
  const double n = norm();
  if (!(std::abs(n * n - 1.0) <= kNormTolerance)) {
    throw DomainError("state is not unit-normalized (|psi|^2 = " + std::to_string(n * n) + ")");
  }
}

StateVector::StateVector(Unchecked, int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  if (num_qubits < 1 || num_qubits > 40) {
    throw DomainError("num_qubits must be in [1, 40], got " + std::to_string(num_qubits));
  }
  if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
    throw DomainError("amplitude count " + std::to_string(amplitudes_.size()) +
                      " does not equal 2^" + std::to_string(num_qubits));
  }
}

StateVector StateVector::adopt(int num_qubits, std::vector<Complex> amplitudes) {
  return StateVector(Unchecked{}, num_qubits, std::move(amplitudes));
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return std::sqrt(s);
}

int qubits_for_dimension(std::size_t dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw DomainError("dimension " + std::to_string(dim) + " is not a power of two >= 2");
  }
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

StateVector new_basis_state(int num_qubits, std::uint64_t basis_index) {
  if (num_qubits < 1 || num_qubits > 40) {
    throw DomainError("num_qubits must be in [1, 40]");
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (basis_index >= dim) {
    throw DomainError("basis index " + std::to_string(basis_index) + " out of range [0, " +
                      std::to_string(dim) + ")");
  }
  std::vector<Complex> amps(dim);
  amps[basis_index] = 1.0;
  return StateVector::adopt(num_qubits, std::move(amps));
}

StateVector normalized(std::vector<Complex> amplitudes) {
  const int n = qubits_for_dimension(amplitudes.size());
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("cannot normalize a zero or non-finite vector");
  const double inv = 1.0 / std::sqrt(s);
  for (auto& a : amplitudes) a *= inv;
  return StateVector::adopt(n, std::move(amplitudes));
}

namespace gates {

Matrix2 hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  return {Complex(r), Complex(r), Complex(r), Complex(-r)};
}

Matrix2 pauli_x() { return {Complex(0), Complex(1), Complex(1), Complex(0)}; }

Matrix2 phase(double angle) { return {Complex(1), Complex(0), Complex(0), std::polar(1.0, angle)}; }

Matrix2 adjoint(const Matrix2& u) {
  return {std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
}

bool is_unitary(const Matrix2& u, double tol) {
  // U^dagger U == I
  const Complex a = std::conj(u[0]) * u[0] + std::conj(u[2]) * u[2];
  const Complex b = std::conj(u[0]) * u[1] + std::conj(u[2]) * u[3];
  const Complex d = std::conj(u[1]) * u[1] + std::conj(u[3]) * u[3];
  return std::abs(a - 1.0) <= tol && std::abs(b) <= tol && std::abs(d - 1.0) <= tol;
}

}  // namespace gates

namespace kernels {

void apply_single_qubit(std::span<Complex> amps, int num_qubits, int qubit, const Matrix2& u) {
  const std::size_t stride = std::size_t{1} << (num_qubits - 1 - qubit);
  const std::size_t dim = amps.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex a0 = amps[i];
      const Complex a1 = amps[i + stride];
      amps[i] = u[0] * a0 + u[1] * a1;
      amps[i + stride] = u[2] * a0 + u[3] * a1;
    }
  }
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

void reflect(std::span<Complex> v, std::span<const Complex> axis) {
  const Complex c = 2.0 * inner(axis, v);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * axis[i] - v[i];
}

void flip_top_qubit(std::span<Complex> amps) {
  const std::size_t half = amps.size() / 2;
  std::swap_ranges(amps.begin(), amps.begin() + static_cast<std::ptrdiff_t>(half),
                   amps.begin() + static_cast<std::ptrdiff_t>(half));
}

}  // namespace kernels

StateVector apply_single_qubit(const StateVector& state, QubitIndex q, const Matrix2& u) {
  check_qubit(state.num_qubits(), q.value);
  if (!gates::is_unitary(u)) throw DomainError("apply_single_qubit: matrix is not unitary");
  auto amps = state.to_vector();
  kernels::apply_single_qubit(amps, state.num_qubits(), q.value, u);
  return StateVector::adopt(state.num_qubits(), std::move(amps));
}

StateVector reflect_about(const StateVector& state, const StateVector& axis) {
  check_same_dim(state, axis, "reflect_about");
  auto amps = state.to_vector();
  kernels::reflect(amps, axis.amplitudes());
  return StateVector::adopt(state.num_qubits(), std::move(amps));
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  check_same_dim(a, b, "inner_product");
  return kernels::inner(a.amplitudes(), b.amplitudes());
}

std::vector<double> probabilities(const StateVector& state) {
  std::vector<double> p(state.dim());
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amps[i]);
  return p;
}

std::vector<std::uint64_t> sample_weights(std::span<const double> weights, std::uint64_t shots,
                                          std::uint64_t seed) {
  if (shots == 0) throw DomainError("sample: shots must be >= 1");
  if (weights.empty()) throw DomainError("sample: empty distribution");
  std::vector<double> cumulative(weights.size());
  double total = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("sample: weights must be finite and >= 0");
    total += w;
    cumulative[i] = total;
    if (w > 0.0) last_nonzero = i;
  }
  if (!(total > 0.0)) throw DomainError("sample: total weight is zero");

  std::vector<std::uint64_t> counts(weights.size(), 0);
  Rng rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double target = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    std::size_t idx = it == cumulative.end() ? last_nonzero
                                             : static_cast<std::size_t>(it - cumulative.begin());
    ++counts[idx];
  }
  return counts;
}

std::vector<std::uint64_t> sample(const StateVector& state, std::uint64_t shots, std::uint64_t seed) {
  const auto p = probabilities(state);
  return sample_weights(p, shots, seed);
}

QubitMeasurement measure_qubit(const StateVector& state, QubitIndex q, std::uint64_t seed) {
  const int n = state.num_qubits();
  check_qubit(n, q.value);
  const std::size_t stride = std::size_t{1} << (n - 1 - q.value);
  const auto amps = state.amplitudes();

  double p0 = 0.0;
  double p1 = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & stride) {
      p1 += std::norm(amps[i]);
    } else {
      p0 += std::norm(amps[i]);
    }
  }
  Rng rng(seed);
  const double u = rng.uniform() * (p0 + p1);
  const int bit = u < p0 ? 0 : 1;
  const double keep = bit == 0 ? p0 : p1;

  std::vector<Complex> out(amps.size());
  const double scale = 1.0 / std::sqrt(keep);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const bool is_one = (i & stride) != 0;
    if (is_one == (bit == 1)) out[i] = amps[i] * scale;
  }
  return {bit, StateVector::adopt(n, std::move(out))};
}

}  // namespace nbamp
