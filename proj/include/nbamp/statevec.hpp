#pragma once

// Dense statevector and the primitive linear operations the algorithms are
// built from.
//
// Basis convention: a q-qubit basis label is the big-endian integer of the
// qubit values, qubit 0 being the most significant bit. In the two-register
// layout used throughout the library the ancilla is qubit 0, so |b, x> lives at
// index b*N + x.

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace nbamp {

using Complex = std::complex<double>;

// Row-major 2x2 complex matrix {u00, u01, u10, u11}.
using Matrix2 = std::array<Complex, 4>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Tolerance on sum |a|^2 = 1 accepted by the StateVector constructor.
inline constexpr double kNormTolerance = 1e-10;

struct QubitIndex {
  int value;
  constexpr explicit QubitIndex(int v) : value(v) {}
};

class StateVector {
 public:
  // Validates that amplitudes has 2^num_qubits entries of unit total norm.
  StateVector(int num_qubits, std::vector<Complex> amplitudes);

  // Adopts amplitudes without the norm check. Used by kernels whose output is
  // unitary by construction.
  static StateVector adopt(int num_qubits, std::vector<Complex> amplitudes);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  // Copy of the amplitude buffer, for callers that mutate and re-adopt.
  std::vector<Complex> to_vector() const { return amplitudes_; }

  double norm() const;

 private:
  struct Unchecked {};
  StateVector(Unchecked, int num_qubits, std::vector<Complex> amplitudes);

  int num_qubits_;
  std::vector<Complex> amplitudes_;
};

// Number of qubits n with 2^n == dim; throws DomainError if dim is not a power
// of two (or is 1).
int qubits_for_dimension(std::size_t dim);

StateVector new_basis_state(int num_qubits, std::uint64_t basis_index);

// |Sum_x a_x |x>| built from an arbitrary nonzero vector, rescaled to unit norm.
StateVector normalized(std::vector<Complex> amplitudes);

namespace gates {
Matrix2 hadamard();
Matrix2 pauli_x();
// diag(1, e^{i angle})
Matrix2 phase(double angle);
Matrix2 adjoint(const Matrix2& u);
bool is_unitary(const Matrix2& u, double tol = 1e-12);
}  // namespace gates

StateVector apply_single_qubit(const StateVector& state, QubitIndex q, const Matrix2& u);
StateVector reflect_about(const StateVector& state, const StateVector& axis);
Complex inner_product(const StateVector& a, const StateVector& b);
std::vector<double> probabilities(const StateVector& state);

// Shot counts per basis index, drawn by inverse-CDF over probabilities(state).
std::vector<std::uint64_t> sample(const StateVector& state, std::uint64_t shots,
                                  std::uint64_t seed);

struct QubitMeasurement {
  int bit;
  StateVector collapsed;
};

QubitMeasurement measure_qubit(const StateVector& state, QubitIndex q, std::uint64_t seed);

// Seeded source of uniform doubles. The generator is MT19937-64
// (std::mt19937_64, whose output sequence the C++ standard fixes); a uniform in
// [0, 1) is the top 53 bits of one draw times 2^-53. Both steps are
// platform-independent, so every seeded experiment is bit-reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Inverse-CDF sampling over an arbitrary nonnegative weight vector (it need not
// be normalized). A uniform u selects the first index whose cumulative weight
// exceeds u * total, so ties go to the lower index and zero-weight entries are
// never drawn.
std::vector<std::uint64_t> sample_weights(std::span<const double> weights,
                                          std::uint64_t shots, std::uint64_t seed);

// In-place kernels over raw amplitude spans. These are what the operator
// closures use; the value-returning functions above wrap them.
namespace kernels {
void apply_single_qubit(std::span<Complex> amps, int num_qubits, int qubit, const Matrix2& u);
// v := 2 <axis|v> axis - v
void reflect(std::span<Complex> v, std::span<const Complex> axis);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
// Swaps the two halves of the buffer: X on the most significant qubit.
void flip_top_qubit(std::span<Complex> amps);
}  // namespace kernels

}  // namespace nbamp
