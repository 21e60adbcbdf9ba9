#pragma once

#include <stdexcept>
#include <string>

namespace nbamp {

// Precondition violations: bad dimensions, out-of-range indices, non-unitary
// matrices, degenerate parameters.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Request exceeds the dense-simulation budget (e.g. too many phase qubits).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A closed-form prediction violated one of its own invariants. Indicates a bug,
// not bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed text input (phase tables, amplitude files, configs, circuits).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace nbamp
