#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "nbamp/amplify.hpp"
#include "nbamp/error.hpp"
#include "nbamp/oracles.hpp"
#include "nbamp/parallel.hpp"
#include "nbamp/statevec.hpp"

using namespace nbamp;
using testing_helpers::max_diff;
using testing_helpers::random_state;

TEST_CASE("new_basis_state places a single one") {
  const auto s1 = new_basis_state(1, 0);
  CHECK(s1.dim() == 2);
  CHECK(s1[0] == Complex(1.0));
  CHECK(s1[1] == Complex(0.0));

  const auto s2 = new_basis_state(2, 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(s2[i] == Complex(0.0));
  CHECK(s2[3] == Complex(1.0));

  const auto s9 = new_basis_state(9, 0);
  CHECK(s9.dim() == 512);
  CHECK(s9[0] == Complex(1.0));

  CHECK_THROWS_AS(new_basis_state(2, 4), DomainError);
  CHECK_THROWS_AS(new_basis_state(0, 0), DomainError);
}

TEST_CASE("StateVector constructor validates size and norm") {
  CHECK_THROWS_AS(StateVector(1, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(StateVector(2, {1.0, 0.0}), DomainError);
  CHECK_NOTHROW(StateVector(1, {Complex(0.6), Complex(0.0, 0.8)}));
  CHECK_THROWS_AS(qubits_for_dimension(3), DomainError);
  CHECK(qubits_for_dimension(1024) == 10);
}

TEST_CASE("apply_single_qubit") {
  SUBCASE("H on |0> gives |+>") {
    const auto plus = apply_single_qubit(new_basis_state(1, 0), QubitIndex(0), gates::hadamard());
    CHECK(std::abs(plus[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(plus[1] - 1.0 / std::sqrt(2.0)) < 1e-15);
  }
  SUBCASE("X on the ancilla maps |0,x> to |1,x>") {
    const auto s = apply_single_qubit(new_basis_state(3, 0b010), QubitIndex(0), gates::pauli_x());
    CHECK(s[0b110] == Complex(1.0));
  }
  SUBCASE("X on the least significant qubit") {
    const auto s = apply_single_qubit(new_basis_state(3, 0b010), QubitIndex(2), gates::pauli_x());
    CHECK(s[0b011] == Complex(1.0));
  }
  SUBCASE("H twice is the identity") {
    const auto v = random_state(3, 7);
    for (int q = 0; q < 3; ++q) {
      const auto w = apply_single_qubit(apply_single_qubit(v, QubitIndex(q), gates::hadamard()), QubitIndex(q),
                                        gates::hadamard());
      CHECK(max_diff(v, w) < 1e-12);
    }
  }
  SUBCASE("matches the dense kron product") {
    const auto v = random_state(3, 8);
    const Matrix2 u = gates::phase(0.3);
    for (int q = 0; q < 3; ++q) {
      const auto w = apply_single_qubit(v, QubitIndex(q), u);
      const auto ref = oracle::apply(oracle::on_qubit(3, q, oracle::R(0.3)), v.to_vector());
      CHECK(oracle::max_abs_diff(w.to_vector(), ref) < 1e-14);
      CHECK(std::abs(w.norm() - 1.0) < 1e-12);
    }
  }
  SUBCASE("errors") {
    const auto v = new_basis_state(2, 0);
    CHECK_THROWS_AS(apply_single_qubit(v, QubitIndex(0), Matrix2{1.0, 1.0, 0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(apply_single_qubit(v, QubitIndex(2), gates::hadamard()), DomainError);
    CHECK_THROWS_AS(apply_single_qubit(v, QubitIndex(-1), gates::hadamard()), DomainError);
  }
}

TEST_CASE("reflect_about") {
  const auto axis = random_state(3, 1);
  CHECK(max_diff(reflect_about(axis, axis), axis) < 1e-14);

  // Orthogonal component flips sign.
  const auto v = random_state(3, 2);
  auto perp = v.to_vector();
  const Complex c = inner_product(axis, v);
  for (std::size_t i = 0; i < perp.size(); ++i) perp[i] -= c * axis[i];
  const auto vperp = normalized(perp);
  const auto flipped = reflect_about(vperp, axis);
  for (std::size_t i = 0; i < vperp.dim(); ++i) CHECK(std::abs(flipped[i] + vperp[i]) < 1e-14);

  // Involution on 100 random states.
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto w = random_state(4, 100 + s);
    const auto a = random_state(4, 1000 + s);
    CHECK(max_diff(reflect_about(reflect_about(w, a), a), w) < 1e-12);
    CHECK(std::abs(reflect_about(w, a).norm() - 1.0) < 1e-10);
  }

  CHECK_THROWS_AS(reflect_about(random_state(2, 1), random_state(3, 1)), DomainError);
}

TEST_CASE("reflection circuit decomposition agrees with the rank-1 formula") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a0 = random_state(3, 40 + seed);
    const auto big = prepare_two_register(a0);
    const auto circuit = oracle::reflection_circuit(a0.to_vector());
    for (std::uint64_t t = 0; t < 3; ++t) {
      const auto v = random_state(4, 50 + t);
      CHECK(oracle::max_abs_diff(reflect_about(v, big).to_vector(), oracle::apply(circuit, v.to_vector())) <
            1e-12);
    }
  }
}

TEST_CASE("inner_product") {
  const auto v = random_state(4, 3);
  CHECK(std::abs(inner_product(v, v) - 1.0) < 1e-14);
  CHECK(inner_product(new_basis_state(1, 0), new_basis_state(1, 1)) == Complex(0.0));
  CHECK_THROWS_AS(inner_product(new_basis_state(1, 0), new_basis_state(2, 0)), DomainError);

  // <Psi0| bold U |Psi0> for the N=4 single-winner instance: (1/4)(1+1-1+1) = 0.5.
  const auto psi = prepare_two_register(AmplitudeSpec::uniform(2));
  const std::vector<std::uint64_t> winners{2};
  const auto alpha = apply_two_register_oracle(psi, boolean_phase(2, winners), OracleDirection::Forward);
  CHECK(std::abs(inner_product(psi, alpha) - 0.5) < 1e-15);
}

TEST_CASE("probabilities") {
  const auto plus = apply_single_qubit(new_basis_state(1, 0), QubitIndex(0), gates::hadamard());
  const auto p = probabilities(plus);
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-15));

  const auto b = probabilities(new_basis_state(3, 5));
  for (std::size_t i = 0; i < 8; ++i) CHECK(b[i] == (i == 5 ? 1.0 : 0.0));

  const auto u = probabilities(AmplitudeSpec::uniform(8).psi0());
  double total = 0.0;
  for (double x : u) {
    CHECK(std::abs(x - 1.0 / 256.0) < 1e-16);
    total += x;
  }
  CHECK(std::abs(total - 1.0) < 1e-10);
}

TEST_CASE("sample") {
  SUBCASE("basis state puts every shot on its index") {
    const auto c = sample(new_basis_state(3, 6), 1000, 5);
    CHECK(c[6] == 1000);
  }
  SUBCASE("same seed gives identical counts") {
    const auto v = random_state(3, 9);
    CHECK(sample(v, 5000, 42) == sample(v, 5000, 42));
    CHECK(sample(v, 5000, 42) != sample(v, 5000, 43));
  }
  SUBCASE("uniform 2-qubit within 5 sigma") {
    const auto c = sample(AmplitudeSpec::uniform(2).psi0(), 1000000, 2024);
    const double sigma = std::sqrt(1e6 * 0.25 * 0.75);
    std::uint64_t total = 0;
    for (auto k : c) {
      CHECK(std::abs(static_cast<double>(k) - 250000.0) < 5 * sigma);
      total += k;
    }
    CHECK(total == 1000000);
  }
  SUBCASE("random 3-qubit state within 5 sigma per outcome") {
    const auto v = random_state(3, 77);
    const auto p = probabilities(v);
    const auto c = sample(v, 1000000, 78);
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(std::abs(static_cast<double>(c[i]) - 1e6 * p[i]) <= 5 * testing_helpers::binomial_sigma(p[i], 1e6));
    }
  }
  SUBCASE("zero shots is a domain error") { CHECK_THROWS_AS(sample(new_basis_state(1, 0), 0, 1), DomainError); }
  SUBCASE("zero-weight entries are never drawn") {
    const std::vector<double> w{0.0, 1.0, 0.0, 3.0, 0.0};
    const auto c = sample_weights(w, 10000, 3);
    CHECK(c[0] == 0);
    CHECK(c[2] == 0);
    CHECK(c[4] == 0);
  }
}

TEST_CASE("Rng uniform is the top 53 bits of mt19937_64") {
  Rng a(123);
  std::mt19937_64 ref(123);
  for (int i = 0; i < 10; ++i) CHECK(a.uniform() == static_cast<double>(ref() >> 11) * 0x1.0p-53);
  // The standard pins the 10000th output of the default-seeded engine.
  std::mt19937_64 def;
  def.discard(9999);
  CHECK(def() == 9981545732273789042ULL);
}

TEST_CASE("measure_qubit") {
  SUBCASE("measuring |0> gives 0 and leaves the state") {
    const auto m = measure_qubit(new_basis_state(1, 0), QubitIndex(0), 1);
    CHECK(m.bit == 0);
    CHECK(m.collapsed[0] == Complex(1.0));
  }
  SUBCASE("|+> collapses to the matching basis state") {
    const auto plus = apply_single_qubit(new_basis_state(1, 0), QubitIndex(0), gates::hadamard());
    int ones = 0;
    for (std::uint64_t s = 0; s < 1000; ++s) {
      const auto m = measure_qubit(plus, QubitIndex(0), s);
      CHECK(std::abs(std::abs(m.collapsed[m.bit]) - 1.0) < 1e-12);
      CHECK(std::abs(m.collapsed[1 - m.bit]) == 0.0);
      ones += m.bit;
    }
    CHECK(std::abs(ones - 500) < 5 * std::sqrt(1000 * 0.25));
  }
  SUBCASE("collapsed state is renormalized") {
    const auto v = random_state(3, 5);
    for (int q = 0; q < 3; ++q) {
      const auto m = measure_qubit(v, QubitIndex(q), 11);
      CHECK(std::abs(m.collapsed.norm() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("parallel_for covers the range once for any thread cap") {
  for (unsigned t : {1u, 2u, 3u, 8u}) {
    set_max_threads(t);
    std::vector<int> hits(1001, 0);
    parallel_for(hits.size(), [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    for (int h : hits) CHECK(h == 1);
  }
  set_max_threads(1);
  CHECK(max_threads() == 1);
}
