#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nbamp/statevec.hpp"

namespace nbamp {

// Initial amplitudes a0(x) of the data register, |psi0> = A0|0> = sum_x a0(x)|x>.
class AmplitudeSpec {
 public:
  // Requires a power-of-two length >= 2 and sum |a0|^2 = 1 within 1e-10.
  explicit AmplitudeSpec(std::vector<Complex> a0);

  static AmplitudeSpec uniform(int n);
  static AmplitudeSpec one_hot(int n, std::uint64_t x);
  // Complex Gaussian amplitudes, normalized. Seeded through Rng.
  static AmplitudeSpec random(int n, std::uint64_t seed);

  std::size_t size() const noexcept { return a0_.size(); }
  int num_qubits() const noexcept { return num_qubits_; }
  std::span<const Complex> amplitudes() const noexcept { return a0_; }
  const Complex& operator[](std::size_t x) const { return a0_[x]; }

  // p0(x) = |a0(x)|^2
  std::vector<double> initial_probabilities() const;
  StateVector psi0() const;

 private:
  std::vector<Complex> a0_;
  int num_qubits_;
};

// Amplitude file format: a line holding N, then N lines "re" or "re im".
// Blank lines and '#' comments are skipped; errors report the line number.
AmplitudeSpec parse_amplitude_file(std::istream& in, const std::string& source = "<stream>");
AmplitudeSpec load_amplitude_file(const std::filesystem::path& path);

enum class Formulation {
  Alternating,  // S U_phi on odd iterations, S U_phi^dagger on even ones (two registers)
  QIter,        // the single operator S U_phi [X (x) I] every iteration (two registers)
  AncillaFree,  // single-register S_psi0 U_phi / S_psi0 U_phi^dagger alternation
};

std::string_view to_string(Formulation f);
// Accepts "alternating", "qiter", "ancilla_free" (also "ancilla-free").
Formulation parse_formulation(std::string_view name);

}  // namespace nbamp
