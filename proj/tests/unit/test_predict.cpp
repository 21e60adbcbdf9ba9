#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "nbamp/amplify.hpp"
#include "nbamp/error.hpp"
#include "nbamp/predict.hpp"

using namespace nbamp;

namespace {

AmplitudeSpec toy_spec() { return AmplitudeSpec::uniform(8); }
PhaseFunction toy_phi() { return linear_ramp(8, kPi / 4); }

const std::vector<std::uint64_t> kWinner2{2};

struct Instance {
  AmplitudeSpec spec;
  PhaseFunction phi;
};

Instance random_instance(Rng& rng) {
  const int n = 1 + static_cast<int>(rng.next() % 6);
  return {AmplitudeSpec::random(n, rng.next()), random_phase(n, rng.next())};
}

}  // namespace

TEST_CASE("theta") {
  const auto t = theta(toy_spec(), toy_phi());
  CHECK(std::abs(t.cos_theta - 0.9001) < 5e-4);
  CHECK(std::abs(t.theta - 0.4507) < 5e-4);

  const auto g = theta(AmplitudeSpec::uniform(2), boolean_phase(2, kWinner2));
  CHECK(g.cos_theta == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.theta == doctest::Approx(kPi / 3).epsilon(1e-14));

  const auto z = theta(AmplitudeSpec::uniform(3), constant_phase(3, 0.0));
  CHECK(z.cos_theta == 1.0);
  CHECK(z.theta == 0.0);

  CHECK_THROWS_AS(theta(AmplitudeSpec::uniform(3), constant_phase(2, 0.0)), DomainError);
}

TEST_CASE("theta brute force on the toy instance") {
  double s = 0.0;
  for (int x = 0; x < 256; ++x) s += std::cos(x / 255.0 * oracle::pi / 4) / 256.0;
  CHECK(std::abs(theta(toy_spec(), toy_phi()).cos_theta - s) < 1e-14);
}

TEST_CASE("lambda_k") {
  for (double th : {0.1, 0.7, 1.3, 2.9}) CHECK(lambda_k(th, 0) == 0.0);
  CHECK(lambda_k(kPi / 3, 1) == doctest::Approx(2.0).epsilon(1e-14));
  // Limits.
  CHECK(lambda_k(0.0, 3) == 24.0);
  CHECK(lambda_k(kPi, 3) == -24.0);
  CHECK(lambda_k(1e-12, 5) == doctest::Approx(60.0).epsilon(1e-9));
  CHECK_THROWS_AS(lambda_k(0.3, -1), DomainError);

  // Oscillation: lambda_K = center - amplitude * cos((2K+1) theta) with
  // center cos/sin^2 and amplitude 1/sin^2; period pi/theta.
  const double th = theta(toy_spec(), toy_phi()).theta;
  const double s2 = std::sin(th) * std::sin(th);
  for (int k = 0; k <= 14; ++k) {
    const double direct = (std::cos(th) - std::cos((2 * k + 1) * th)) / s2;
    CHECK(std::abs(lambda_k(th, k) - direct) < 1e-12);
    CHECK(lambda_k(th, k) <= std::cos(th) / s2 + 1.0 / s2 + 1e-12);
    CHECK(lambda_k(th, k) >= std::cos(th) / s2 - 1.0 / s2 - 1e-12);
  }
}

TEST_CASE("lambda_optimal and k_tilde") {
  CHECK(lambda_optimal(kPi / 3) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(lambda_optimal(kPi / 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(lambda_optimal(0.0), DomainError);

  CHECK(k_tilde(theta(toy_spec(), toy_phi()).theta) == 3);
  CHECK(k_tilde(kPi / 3) == 1);
  CHECK(k_tilde(kPi / 2) == 1);
  CHECK(k_tilde(2.0) == 0);
  CHECK_THROWS_AS(k_tilde(0.0), DomainError);

  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const double th = 1e-3 + (kPi - 1e-3) * rng.uniform();
    const double opt = lambda_optimal(th);
    for (int k = 0; k <= 1000; ++k) REQUIRE(lambda_k(th, k) <= opt * (1 + 1e-12));
  }
}

TEST_CASE("lambda at K_tilde is bracketed by lambda_optimal and its tan correction") {
  Rng rng(4);
  for (int t = 0; t < 1000; ++t) {
    const double th = (kPi / 2) * (1e-3 + (1 - 2e-3) * rng.uniform());
    const double opt = lambda_optimal(th);
    const double lam = lambda_k(th, k_tilde(th));
    CHECK(lam <= opt * (1 + 1e-12));
    CHECK(lam >= opt * (1 - std::pow(std::tan(th / 2), 2)) * (1 - 1e-12));
  }
  for (double th : {kPi / 3, kPi / 5, kPi / 7}) {
    CHECK(std::abs(lambda_k(th, k_tilde(th)) - lambda_optimal(th)) < 1e-12);
  }
}

TEST_CASE("trigonometric identities") {
  Rng rng(5);
  for (int t = 0; t < 10000; ++t) {
    const double c = kTwoPi * rng.uniform();
    const double d = kTwoPi * rng.uniform();
    const double e1 = std::pow(std::sin(c), 2) + std::pow(std::sin(c + d), 2) - std::pow(std::sin(d), 2) -
                      2 * std::sin(c) * std::sin(c + d) * std::cos(d);
    const double e2 = 2 * std::sin(c) * std::sin(c + d) - std::cos(d) + std::cos(2 * c + d);
    REQUIRE(std::abs(e1) < 1e-12);
    REQUIRE(std::abs(e2) < 1e-12);
  }
}

TEST_CASE("iteration coefficients and matrix powers") {
  for (double th : {0.2, 1.0, 2.5}) {
    for (int k = 0; k <= 20; ++k) {
      const auto m = iteration_matrix_power(std::cos(th), k);
      const auto c = iteration_coefficients(th, k);
      CHECK(std::abs(m[0] - c.current) < 1e-10);
      CHECK(std::abs(m[1] - c.previous) < 1e-10);
      CHECK(std::abs(c.current - std::sin((k + 1) * th) / std::sin(th)) < 1e-12);
    }
  }
  // Limits at theta = 0 and pi against the matrix powers.
  for (int k = 0; k <= 10; ++k) {
    const auto m0 = iteration_matrix_power(1.0, k);
    const auto c0 = iteration_coefficients(0.0, k);
    CHECK(m0[0] == c0.current);
    CHECK(m0[1] == c0.previous);
    const auto mp = iteration_matrix_power(-1.0, k);
    const auto cp = iteration_coefficients(kPi, k);
    CHECK(mp[0] == cp.current);
    CHECK(mp[1] == cp.previous);
  }
  CHECK_THROWS_AS(iteration_coefficients(0.3, -1), DomainError);
}

TEST_CASE("predicted_probabilities") {
  const auto spec = toy_spec();
  const auto phi = toy_phi();
  const auto p0 = predicted_probabilities(spec, phi, 0, Formulation::Alternating);
  for (double p : p0) CHECK(p == 1.0 / 256.0);

  const auto g = predicted_probabilities(AmplitudeSpec::uniform(2), boolean_phase(2, kWinner2), 1,
                                         Formulation::Alternating);
  const double expect[] = {0, 0, 1, 0};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(g[i] - expect[i]) < 1e-15);

  // Fixed point where cos phi(x) = cos theta; probabilities sum to one.
  const auto t = theta(spec, phi);
  for (int k = 1; k <= 3; ++k) {
    const auto p = predicted_probabilities(spec, phi, k, Formulation::Alternating);
    double total = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) {
      total += p[x];
      CHECK(p[x] >= -1e-12);
      const double ratio = p[x] / (1.0 / 256.0) - 1.0;
      CHECK(std::abs(ratio + lambda_k(t.theta, k) * (std::cos(phi[x]) - t.cos_theta)) < 1e-12);
    }
    CHECK(std::abs(total - 1.0) < 1e-10);
  }

  // At lambda_optimal the cos = 1 entries vanish: pi/(2 theta) half-integer.
  const std::vector<double> phases{0.0, kPi / 2, 0.0, kPi / 2};
  const AmplitudeSpec half(std::vector<Complex>(4, Complex(0.5)));
  const auto h = theta(half, PhaseFunction(phases));
  CHECK(std::abs(lambda_k(h.theta, k_tilde(h.theta)) - lambda_optimal(h.theta)) < 1e-12);
  const auto popt = predicted_probabilities(half, PhaseFunction(phases), k_tilde(h.theta), Formulation::Alternating);
  CHECK(std::abs(popt[0]) < 1e-12);
  CHECK(std::abs(popt[2]) < 1e-12);
}

TEST_CASE("moments") {
  const auto gs = AmplitudeSpec::uniform(2);
  const auto gp = boolean_phase(2, kWinner2);
  CHECK(moments(gs, gp, 1, 1).value == doctest::Approx(-1.0).epsilon(1e-14));
  for (int k = 0; k < 6; ++k) CHECK(std::abs(moments(gs, gp, k, 0).value - 1.0) < 1e-14);

  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const auto in = random_instance(rng);
    for (int k = 0; k <= 6; ++k) {
      const auto pk = predicted_probabilities(in.spec, in.phi, k, Formulation::Alternating);
      for (int n = 0; n <= 5; ++n) {
        double direct = 0.0;
        for (std::size_t x = 0; x < pk.size(); ++x) direct += pk[x] * std::pow(std::cos(in.phi[x]), n);
        const auto m = moments(in.spec, in.phi, k, n);
        CHECK(m.order == n);
        CHECK(std::abs(m.value - direct) < 1e-12);
        CHECK(std::abs(m.value) <= 1.0 + 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(moments(gs, gp, 1, -1), DomainError);
}

TEST_CASE("cdf_bound") {
  const auto g = cdf_bound(AmplitudeSpec::uniform(2), boolean_phase(2, kWinner2), 1, 0.0);
  CHECK(g.kind == BoundKind::Lower);
  CHECK(g.bound == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(g.actual == doctest::Approx(1.0).epsilon(1e-14));

  Rng rng(7);
  for (int t = 0; t < 1000; ++t) {
    const auto in = random_instance(rng);
    const double y = -1.0 + 2.0 * rng.uniform();
    const auto b0 = cdf_bound(in.spec, in.phi, 0, y);
    double f0 = 0.0;
    for (std::size_t x = 0; x < in.spec.size(); ++x) {
      if (std::cos(in.phi[x]) <= y) f0 += std::norm(in.spec[x]);
    }
    CHECK(std::abs(b0.bound - f0) < 1e-14);

    const int k = 1 + static_cast<int>(rng.next() % 6);
    const auto b = cdf_bound(in.spec, in.phi, k, y);
    const auto lam = lambda_k(theta(in.spec, in.phi).theta, k);
    CHECK((b.kind == BoundKind::Lower) == (lam >= 0));
    if (b.kind == BoundKind::Lower) {
      CHECK(b.actual >= b.bound - 1e-12);
    } else {
      CHECK(b.actual <= b.bound + 1e-12);
    }
  }
}

TEST_CASE("theta_prime") {
  const auto c = theta_prime(AmplitudeSpec::uniform(3), constant_phase(3, kPi / 3));
  CHECK(c.cos_theta_prime == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.delta == doctest::Approx(kPi / 3).epsilon(1e-14));

  const auto wrapped = theta_prime(AmplitudeSpec::uniform(3), constant_phase(3, 7.0));
  CHECK(std::abs(wrapped.delta - (7.0 - kTwoPi)) < 1e-14);
  const auto neg = theta_prime(AmplitudeSpec::uniform(3), constant_phase(3, -1.0));
  CHECK(std::abs(neg.delta - (kTwoPi - 1.0)) < 1e-14);

  // Real nonnegative mean: delta = 0 and theta' = theta.
  const auto spec = AmplitudeSpec::uniform(2);
  const std::vector<double> sym{0.4, -0.4, 1.1, -1.1};
  const auto r = theta_prime(spec, PhaseFunction(sym));
  CHECK(r.delta == 0.0);
  CHECK(std::abs(r.cos_theta_prime - theta(spec, PhaseFunction(sym)).cos_theta) < 1e-15);

  // Toy instance against a direct complex sum.
  oracle::C s = 0.0;
  for (int x = 0; x < 256; ++x) s += std::polar(1.0, x / 255.0 * oracle::pi / 4) / 256.0;
  const auto toy = theta_prime(toy_spec(), toy_phi());
  CHECK(std::abs(toy.cos_theta_prime - std::abs(s)) < 1e-14);
  CHECK(std::abs(toy.delta - std::arg(s)) < 1e-14);
  CHECK(std::abs(toy.delta - kPi / 8) < 1e-14);

  // Zero mean: delta defaults to 0, theta' = pi/2.
  const std::vector<double> opposite{0.0, kPi};
  const auto z = theta_prime(AmplitudeSpec::uniform(1), PhaseFunction(opposite));
  CHECK(z.delta == 0.0);
  CHECK(z.theta_prime == doctest::Approx(kPi / 2).epsilon(1e-15));
}

TEST_CASE("alpha and beta states") {
  const auto spec = AmplitudeSpec::random(3, 8);
  const auto phi = random_phase(3, 9);
  const auto psi = prepare_two_register(spec);
  CHECK(testing_helpers::max_diff(alpha_state(spec, phi), two_register_oracle(phi).apply(psi)) < 1e-15);
  CHECK(testing_helpers::max_diff(beta_state(spec, phi), two_register_oracle(phi).apply_adjoint(psi)) < 1e-15);
  CHECK(std::abs(inner_product(psi, alpha_state(spec, phi)) - theta(spec, phi).cos_theta) < 1e-14);
}

TEST_CASE("eta states") {
  Rng rng(10);
  for (int t = 0; t < 30; ++t) {
    const auto in = random_instance(rng);
    if (std::sin(theta(in.spec, in.phi).theta) < 1e-3) continue;
    const auto eta = eta_states(in.spec, in.phi);
    CHECK(std::abs(inner_product(eta.plus, eta.plus) - 1.0) < 1e-10);
    CHECK(std::abs(inner_product(eta.minus, eta.minus) - 1.0) < 1e-10);
    CHECK(std::abs(inner_product(eta.plus, eta.minus)) < 1e-10);
    const auto psi = prepare_two_register(in.spec);
    for (std::size_t i = 0; i < psi.dim(); ++i) {
      CHECK(std::abs((eta.plus[i] - eta.minus[i]) / std::sqrt(2.0) - psi[i]) < 1e-10);
    }
    // Generic construction agrees with the phase-oracle one.
    const auto generic = eta_states(in.spec.psi0(), phase_oracle(in.phi));
    CHECK(testing_helpers::max_diff(generic.plus, eta.plus) < 1e-12);

    if (std::sin(theta_prime(in.spec, in.phi).theta_prime) < 1e-3) continue;
    const auto ep = eta_prime_states(in.spec, in.phi);
    CHECK(std::abs(ep.plus.norm() - 1.0) < 1e-10);
    CHECK(std::abs(ep.minus.norm() - 1.0) < 1e-10);
  }
  CHECK_THROWS_AS(eta_states(AmplitudeSpec::uniform(2), constant_phase(2, 0.0)), DomainError);
  CHECK_THROWS_AS(eta_prime_states(AmplitudeSpec::uniform(2), constant_phase(2, 1.0)), DomainError);
}

TEST_CASE("closed-form amplitudes at k = 0 are the initial states") {
  const auto spec = AmplitudeSpec::random(3, 11);
  const auto phi = random_phase(3, 12);
  for (auto f : {Formulation::Alternating, Formulation::QIter}) {
    CHECK(testing_helpers::max_diff(amplitudes_closed_form(spec, phi, 0, f), prepare_two_register(spec)) < 1e-15);
  }
  CHECK(testing_helpers::max_diff(amplitudes_closed_form(spec, phi, 0, Formulation::AncillaFree), spec.psi0()) <
        1e-15);
}
