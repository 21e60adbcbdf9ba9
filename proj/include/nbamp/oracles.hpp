#pragma once

// Phase functions and the diagonal oracles they define:
//   U_phi |x> = e^{+i phi(x)} |x>,   U_phi^dagger |x> = e^{-i phi(x)} |x>,
// and the two-register conditional oracle
//   bold U_phi = |0><0| (x) U_phi + |1><1| (x) U_phi^dagger
// acting on the (ancilla, data) system with the ancilla as qubit 0.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nbamp/operator.hpp"
#include "nbamp/statevec.hpp"

namespace nbamp {

// A table of N = 2^n real phases (radians), n >= 1. Entries are stored as
// given; they are never reduced mod 2*pi.
class PhaseFunction {
 public:
  explicit PhaseFunction(std::vector<double> phases);

  std::size_t size() const noexcept { return phases_.size(); }
  int num_qubits() const noexcept { return num_qubits_; }
  double operator[](std::size_t x) const { return phases_[x]; }
  std::span<const double> phases() const noexcept { return phases_; }

 private:
  std::vector<double> phases_;
  int num_qubits_;
};

enum class OracleDirection { Forward, Dagger };

// e^{i phi}. Integer multiples of pi/2 map to exact +-1, +-i so that, e.g.,
// boolean oracles are exactly self-inverse.
Complex unit_phase(double phi);

// phases[x] = max_phase * x / (2^n - 1)
PhaseFunction linear_ramp(int n, double max_phase);
// phases[x] = pi for winners, 0 otherwise
PhaseFunction boolean_phase(int n, std::span<const std::uint64_t> winners);
PhaseFunction constant_phase(int n, double value);
// i.i.d. uniform phases in [0, 2*pi) from the library Rng.
PhaseFunction random_phase(int n, std::uint64_t seed);
// phases[x] - delta
PhaseFunction shift(const PhaseFunction& phi, double delta);

// Phase-table text format: a line holding N, then N lines each holding one
// decimal phase in radians. Blank lines and lines starting with '#' are
// skipped. Errors carry the 1-based line number.
PhaseFunction parse_phase_table(std::istream& in, const std::string& source = "<stream>");
PhaseFunction load_phase_table(const std::filesystem::path& path);
void write_phase_table(std::ostream& out, const PhaseFunction& phi);

StateVector apply_oracle(const StateVector& state, const PhaseFunction& phi, OracleDirection dir);
StateVector apply_two_register_oracle(const StateVector& state, const PhaseFunction& phi,
                                      OracleDirection dir);

// U_phi as an operator handle (adjoint = U_phi^dagger).
Operator phase_oracle(const PhaseFunction& phi);
// bold U_phi as an operator handle on 2N amplitudes.
Operator two_register_oracle(const PhaseFunction& phi);

}  // namespace nbamp
