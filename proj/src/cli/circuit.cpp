#include "nbamp/cli/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <memory>

#include "nbamp/cli/config.hpp"
#include "nbamp/error.hpp"
#include "nbamp/text.hpp"

namespace nbamp::cli {

namespace {

int parse_qubit(std::string_view s, const std::string& source, int lineno) {
  const auto v = text::parse_int(s);
  if (!v || *v < 0 || *v >= 40) {
    throw ParseError(source, lineno, "bad qubit index '" + std::string(s) + "'");
  }
  return static_cast<int>(*v);
}

void apply_cnot(std::span<Complex> amps, int num_qubits, int control, int target) {
  const std::size_t cbit = std::size_t{1} << (num_qubits - 1 - control);
  const std::size_t tbit = std::size_t{1} << (num_qubits - 1 - target);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(amps[i], amps[i | tbit]);
  }
}

void apply_gate(std::span<Complex> amps, int num_qubits, const Gate& g, bool inverse) {
  switch (g.kind) {
    case GateKind::H: kernels::apply_single_qubit(amps, num_qubits, g.q0, gates::hadamard()); break;
    case GateKind::X: kernels::apply_single_qubit(amps, num_qubits, g.q0, gates::pauli_x()); break;
    case GateKind::Phase:
      kernels::apply_single_qubit(amps, num_qubits, g.q0, gates::phase(inverse ? -g.angle : g.angle));
      break;
    case GateKind::Cnot: apply_cnot(amps, num_qubits, g.q0, g.q1); break;
  }
}

}  // namespace

int Circuit::min_qubits() const {
  int m = 1;
  for (const auto& g : gates) m = std::max({m, g.q0 + 1, g.q1 + 1});
  return m;
}

Circuit parse_circuit(std::istream& in, const std::string& source) {
  Circuit c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = text::trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto f = text::split_ws(body);
    std::string name(f[0]);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::toupper(ch); });
    auto arity = [&](std::size_t n) {
      if (f.size() != n + 1) {
        throw ParseError(source, lineno, name + " takes " + std::to_string(n) + " argument(s)");
      }
    };
    if (name == "H" || name == "X") {
      arity(1);
      c.gates.push_back({name == "H" ? GateKind::H : GateKind::X, parse_qubit(f[1], source, lineno)});
    } else if (name == "PHASE") {
      arity(2);
      const auto a = parse_angle(f[2]);
      if (!a) throw ParseError(source, lineno, "bad angle '" + std::string(f[2]) + "'");
      c.gates.push_back({GateKind::Phase, parse_qubit(f[1], source, lineno), -1, *a});
    } else if (name == "CNOT") {
      arity(2);
      const int ctl = parse_qubit(f[1], source, lineno);
      const int tgt = parse_qubit(f[2], source, lineno);
      if (ctl == tgt) throw ParseError(source, lineno, "CNOT control and target coincide");
      c.gates.push_back({GateKind::Cnot, ctl, tgt});
    } else {
      throw ParseError(source, lineno, "unknown gate '" + std::string(f[0]) + "'");
    }
  }
  return c;
}

Circuit load_circuit(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open circuit file '" + path.string() + "'");
  return parse_circuit(in, path.string());
}

Operator circuit_operator(const Circuit& circuit, int num_qubits) {
  if (circuit.min_qubits() > num_qubits) {
    throw DomainError("circuit needs " + std::to_string(circuit.min_qubits()) + " qubits, register has " +
                      std::to_string(num_qubits));
  }
  auto gates_ptr = std::make_shared<const std::vector<Gate>>(circuit.gates);
  return Operator(
      std::size_t{1} << num_qubits,
      [gates_ptr, num_qubits](std::span<Complex> v) {
        for (const auto& g : *gates_ptr) apply_gate(v, num_qubits, g, false);
      },
      [gates_ptr, num_qubits](std::span<Complex> v) {
        for (auto it = gates_ptr->rbegin(); it != gates_ptr->rend(); ++it) apply_gate(v, num_qubits, *it, true);
      });
}

}  // namespace nbamp::cli
