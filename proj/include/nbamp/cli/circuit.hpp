#pragma once

// Gate-list circuit files used to describe state-preparation unitaries.
//
//   H q            Hadamard on qubit q
//   X q            Pauli X on qubit q
//   PHASE q rad    diag(1, e^{i rad}) on qubit q; rad accepts pi forms
//   CNOT c t       controlled X, control c, target t
//
// One gate per line, '#' starts a comment. Qubit 0 is the most significant.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nbamp/operator.hpp"

namespace nbamp::cli {

enum class GateKind { H, X, Phase, Cnot };

struct Gate {
  GateKind kind;
  int q0;
  int q1 = -1;         // CNOT target
  double angle = 0.0;  // PHASE
};

struct Circuit {
  std::vector<Gate> gates;
  // Smallest register the gates fit in (at least 1).
  int min_qubits() const;
};

Circuit parse_circuit(std::istream& in, const std::string& source = "<stream>");
Circuit load_circuit(const std::filesystem::path& path);

// The circuit's unitary on num_qubits qubits (gates applied in file order).
// The adjoint runs the inverse gates in reverse order.
Operator circuit_operator(const Circuit& circuit, int num_qubits);

}  // namespace nbamp::cli
