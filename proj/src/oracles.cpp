#include "nbamp/oracles.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <memory>
#include <ostream>

#include "nbamp/error.hpp"
#include "nbamp/text.hpp"

namespace nbamp {

namespace {

std::shared_ptr<const std::vector<Complex>> phase_table(const PhaseFunction& phi, double sign) {
  auto table = std::make_shared<std::vector<Complex>>(phi.size());
  for (std::size_t x = 0; x < phi.size(); ++x) (*table)[x] = unit_phase(sign * phi[x]);
  return table;
}

void check_dim(const StateVector& state, std::size_t expected, const char* what) {
  if (state.dim() != expected) {
    throw DomainError(std::string(what) + ": state dimension " + std::to_string(state.dim()) +
                      " but oracle expects " + std::to_string(expected));
  }
}

}  // namespace

PhaseFunction::PhaseFunction(std::vector<double> phases) : phases_(std::move(phases)), num_qubits_(0) {
  num_qubits_ = qubits_for_dimension(phases_.size());
  for (std::size_t x = 0; x < phases_.size(); ++x) {
    if (!std::isfinite(phases_[x])) {
      throw DomainError("phase at index " + std::to_string(x) + " is not finite");
    }
  }
}

Complex unit_phase(double phi) {
  const double quarter = phi / (kPi / 2.0);
  if (quarter == std::nearbyint(quarter) && std::abs(quarter) < 0x1.0p52) {
    switch (static_cast<int>(std::fmod(quarter, 4.0) + 4.0) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return {std::cos(phi), std::sin(phi)};
}

PhaseFunction linear_ramp(int n, double max_phase) {
  if (n < 1 || n > 30) throw DomainError("linear_ramp: n must be in [1, 30]");
  const std::size_t size = std::size_t{1} << n;
  const double denom = static_cast<double>(size - 1);
  std::vector<double> phases(size);
  for (std::size_t x = 0; x < size; ++x) phases[x] = max_phase * static_cast<double>(x) / denom;
  return PhaseFunction(std::move(phases));
}

PhaseFunction boolean_phase(int n, std::span<const std::uint64_t> winners) {
  if (n < 1 || n > 30) throw DomainError("boolean_phase: n must be in [1, 30]");
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> phases(size, 0.0);
  for (auto w : winners) {
    if (w >= size) {
      throw DomainError("boolean_phase: winner " + std::to_string(w) + " out of range [0, " +
                        std::to_string(size) + ")");
    }
    phases[w] = kPi;
  }
  return PhaseFunction(std::move(phases));
}

PhaseFunction constant_phase(int n, double value) {
  if (n < 1 || n > 30) throw DomainError("constant_phase: n must be in [1, 30]");
  return PhaseFunction(std::vector<double>(std::size_t{1} << n, value));
}

PhaseFunction random_phase(int n, std::uint64_t seed) {
  if (n < 1 || n > 30) throw DomainError("random_phase: n must be in [1, 30]");
  Rng rng(seed);
  std::vector<double> phases(std::size_t{1} << n);
  for (auto& p : phases) p = kTwoPi * rng.uniform();
  return PhaseFunction(std::move(phases));
}

PhaseFunction shift(const PhaseFunction& phi, double delta) {
  std::vector<double> phases(phi.phases().begin(), phi.phases().end());
  for (auto& p : phases) p -= delta;
  return PhaseFunction(std::move(phases));
}

PhaseFunction parse_phase_table(std::istream& in, const std::string& source) {
  std::string line;
  int lineno = 0;
  std::optional<std::int64_t> expected;
  std::vector<double> phases;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::is_skippable(line)) continue;
    if (!expected) {
      expected = text::parse_int(line);
      if (!expected || *expected < 2 || (*expected & (*expected - 1)) != 0) {
        throw ParseError(source, lineno, "expected table size N (a power of two >= 2), got '" +
                                             std::string(text::trim(line)) + "'");
      }
      phases.reserve(static_cast<std::size_t>(*expected));
      continue;
    }
    if (static_cast<std::int64_t>(phases.size()) == *expected) {
      throw ParseError(source, lineno, "more than N = " + std::to_string(*expected) + " phases");
    }
    const auto v = text::parse_double(line);
    if (!v || !std::isfinite(*v)) {
      throw ParseError(source, lineno, "invalid phase '" + std::string(text::trim(line)) + "'");
    }
    phases.push_back(*v);
  }
  if (!expected) throw ParseError(source, lineno, "missing table size line");
  if (static_cast<std::int64_t>(phases.size()) != *expected) {
    throw ParseError(source, lineno, "expected " + std::to_string(*expected) + " phases, found " +
                                         std::to_string(phases.size()));
  }
  return PhaseFunction(std::move(phases));
}

PhaseFunction load_phase_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open phase table '" + path.string() + "'");
  return parse_phase_table(in, path.string());
}

void write_phase_table(std::ostream& out, const PhaseFunction& phi) {
  out << phi.size() << '\n';
  out << std::setprecision(17);
  for (double p : phi.phases()) out << p << '\n';
}

StateVector apply_oracle(const StateVector& state, const PhaseFunction& phi, OracleDirection dir) {
  check_dim(state, phi.size(), "apply_oracle");
  const double sign = dir == OracleDirection::Forward ? 1.0 : -1.0;
  auto amps = state.to_vector();
  for (std::size_t x = 0; x < amps.size(); ++x) amps[x] *= unit_phase(sign * phi[x]);
  return StateVector::adopt(state.num_qubits(), std::move(amps));
}

StateVector apply_two_register_oracle(const StateVector& state, const PhaseFunction& phi,
                                      OracleDirection dir) {
  const std::size_t n = phi.size();
  check_dim(state, 2 * n, "apply_two_register_oracle");
  const double sign = dir == OracleDirection::Forward ? 1.0 : -1.0;
  auto amps = state.to_vector();
  for (std::size_t x = 0; x < n; ++x) {
    amps[x] *= unit_phase(sign * phi[x]);
    amps[n + x] *= unit_phase(-sign * phi[x]);
  }
  return StateVector::adopt(state.num_qubits(), std::move(amps));
}

Operator phase_oracle(const PhaseFunction& phi) {
  auto fwd = phase_table(phi, 1.0);
  auto adj = phase_table(phi, -1.0);
  return Operator(
      phi.size(),
      [fwd](std::span<Complex> v) {
        for (std::size_t x = 0; x < v.size(); ++x) v[x] *= (*fwd)[x];
      },
      [adj](std::span<Complex> v) {
        for (std::size_t x = 0; x < v.size(); ++x) v[x] *= (*adj)[x];
      });
}

Operator two_register_oracle(const PhaseFunction& phi) {
  return conditional_two_register(phase_oracle(phi));
}

}  // namespace nbamp
