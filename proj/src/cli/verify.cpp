#include "nbamp/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "nbamp/amplify.hpp"
#include "nbamp/meanest.hpp"
#include "nbamp/predict.hpp"
#include "nbamp/qpe.hpp"

namespace nbamp::cli {

namespace {

struct Instance {
  AmplitudeSpec spec;
  PhaseFunction phi;
};

Instance random_instance(Rng& rng, int max_qubits) {
  const int n = 1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(max_qubits));
  return {AmplitudeSpec::random(n, rng.next()), random_phase(n, rng.next())};
}

double max_diff(const StateVector& a, const StateVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

// Each check returns the worst observed error; pass when it is below tol.
struct Check {
  std::string name;
  double tol;
  std::function<double()> worst;
};

double closed_form_worst(Formulation f) {
  Rng rng(11);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto in = random_instance(rng, 6);
    for (int k = 0; k <= 10; ++k) {
      worst = std::max(worst, max_diff(run_amplification(in.spec, in.phi, k, f),
                                       amplitudes_closed_form(in.spec, in.phi, k, f)));
    }
  }
  return worst;
}

std::vector<Check> checks() {
  std::vector<Check> c;
  c.push_back({"closed form: alternating amplitudes", 1e-10,
               [] { return closed_form_worst(Formulation::Alternating); }});
  c.push_back({"closed form: qiter amplitudes", 1e-10, [] { return closed_form_worst(Formulation::QIter); }});
  c.push_back({"closed form: ancilla-free amplitudes", 1e-10,
               [] { return closed_form_worst(Formulation::AncillaFree); }});
  c.push_back({"alternating and qiter probabilities agree", 1e-10, [] {
                 Rng rng(12);
                 double worst = 0.0;
                 for (int t = 0; t < 20; ++t) {
                   const auto in = random_instance(rng, 6);
                   for (int k = 0; k <= 10; ++k) {
                     const auto pa = probabilities(run_amplification(in.spec, in.phi, k, Formulation::Alternating));
                     const auto pq = probabilities(run_amplification(in.spec, in.phi, k, Formulation::QIter));
                     for (std::size_t i = 0; i < pa.size(); ++i) worst = std::max(worst, std::abs(pa[i] - pq[i]));
                   }
                 }
                 return worst;
               }});
  c.push_back({"equal ancilla-branch magnitudes", 1e-10, [] {
                 Rng rng(13);
                 double worst = 0.0;
                 for (int t = 0; t < 20; ++t) {
                   const auto in = random_instance(rng, 6);
                   const std::size_t n = in.spec.size();
                   for (int k = 0; k <= 10; ++k) {
                     const auto s = run_amplification(in.spec, in.phi, k, Formulation::Alternating);
                     for (std::size_t x = 0; x < n; ++x) {
                       worst = std::max(worst, std::abs(std::abs(s[x]) - std::abs(s[n + x])));
                     }
                   }
                 }
                 return worst;
               }});
  c.push_back({"boolean oracle leaves the ancilla in |+>", 1e-12, [] {
                 Rng rng(14);
                 double worst = 0.0;
                 for (int t = 0; t < 10; ++t) {
                   const int n = 1 + static_cast<int>(rng.next() % 5);
                   const std::uint64_t w = rng.next() % (std::uint64_t{1} << n);
                   const auto spec = AmplitudeSpec::random(n, rng.next());
                   const auto phi = boolean_phase(n, std::vector<std::uint64_t>{w});
                   for (int k = 0; k <= 5; ++k) {
                     const auto s = run_amplification(spec, phi, k, Formulation::Alternating);
                     const std::size_t half = spec.size();
                     for (std::size_t x = 0; x < half; ++x) worst = std::max(worst, std::abs(s[x] - s[half + x]));
                   }
                 }
                 return worst;
               }});
  c.push_back({"probability ratio slope equals -lambda_K", 1e-8, [] {
                 Rng rng(15);
                 double worst = 0.0;
                 for (int t = 0; t < 20; ++t) {
                   const auto in = random_instance(rng, 6);
                   if (in.spec.size() < 4) continue;
                   const auto th = theta(in.spec, in.phi);
                   const auto p0 = in.spec.initial_probabilities();
                   for (int k = 1; k <= 6; ++k) {
                     const auto s = run_amplification(in.spec, in.phi, k, Formulation::Alternating);
                     const std::size_t n = in.spec.size();
                     double sx = 0, sy = 0, sxx = 0, sxy = 0;
                     for (std::size_t x = 0; x < n; ++x) {
                       const double cx = std::cos(in.phi[x]);
                       const double y = (std::norm(s[x]) + std::norm(s[n + x])) / p0[x] - 1.0;
                       sx += cx;
                       sy += y;
                       sxx += cx * cx;
                       sxy += cx * y;
                     }
                     const double dn = static_cast<double>(n);
                     const double slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
                     worst = std::max(worst, std::abs(slope + lambda_k(th.theta, k)) /
                                                 std::max(1.0, std::abs(lambda_k(th.theta, k))));
                   }
                 }
                 return worst;
               }});
  c.push_back({"qiter eigenstates", 1e-10, [] {
                 Rng rng(16);
                 double worst = 0.0;
                 for (int t = 0; t < 20; ++t) {
                   const auto in = random_instance(rng, 6);
                   const auto th = theta(in.spec, in.phi);
                   if (std::sin(th.theta) < 1e-3) continue;
                   const auto q = build_qiter(in.spec, in.phi);
                   const auto eta = eta_states(in.spec, in.phi);
                   for (int sign : {1, -1}) {
                     const auto& v = sign > 0 ? eta.plus : eta.minus;
                     auto expect = v.to_vector();
                     for (auto& z : expect) z *= std::polar(1.0, sign * th.theta);
                     worst = std::max(worst, max_diff(q.apply(v), StateVector::adopt(v.num_qubits(), expect)));
                   }
                 }
                 return worst;
               }});
  c.push_back({"q_evenodd eigenstates", 1e-10, [] {
                 Rng rng(17);
                 double worst = 0.0;
                 for (int t = 0; t < 20; ++t) {
                   const auto in = random_instance(rng, 6);
                   const auto tp = theta_prime(in.spec, in.phi);
                   if (std::sin(tp.theta_prime) < 1e-3) continue;
                   const auto q = build_qevenodd(in.spec, in.phi);
                   const auto eta = eta_prime_states(in.spec, in.phi);
                   for (int sign : {1, -1}) {
                     const auto& v = sign > 0 ? eta.plus : eta.minus;
                     auto expect = v.to_vector();
                     for (auto& z : expect) z *= std::polar(1.0, 2.0 * sign * tp.theta_prime);
                     worst = std::max(worst, max_diff(q.apply(v), StateVector::adopt(v.num_qubits(), expect)));
                   }
                 }
                 return worst;
               }});
  c.push_back({"trigonometric identities", 1e-12, [] {
                 Rng rng(18);
                 double worst = 0.0;
                 for (int t = 0; t < 10000; ++t) {
                   const double a = kTwoPi * rng.uniform();
                   const double d = kTwoPi * rng.uniform();
                   const double e1 = std::pow(std::sin(a), 2) + std::pow(std::sin(a + d), 2) -
                                     std::pow(std::sin(d), 2) - 2 * std::sin(a) * std::sin(a + d) * std::cos(d);
                   const double e2 = 2 * std::sin(a) * std::sin(a + d) - std::cos(d) + std::cos(2 * a + d);
                   worst = std::max({worst, std::abs(e1), std::abs(e2)});
                 }
                 return worst;
               }});
  c.push_back({"moment recurrence against direct sums", 1e-12, [] {
                 Rng rng(19);
                 double worst = 0.0;
                 for (int t = 0; t < 50; ++t) {
                   const auto in = random_instance(rng, 6);
                   for (int k = 0; k <= 5; ++k) {
                     const auto pk = predicted_probabilities(in.spec, in.phi, k, Formulation::Alternating);
                     for (int order = 0; order <= 4; ++order) {
                       double direct = 0.0;
                       for (std::size_t x = 0; x < pk.size(); ++x) direct += pk[x] * std::pow(std::cos(in.phi[x]), order);
                       worst = std::max(worst, std::abs(direct - moments(in.spec, in.phi, k, order).value));
                     }
                   }
                 }
                 return worst;
               }});
  c.push_back({"cdf bounds respected", 1e-12, [] {
                 Rng rng(20);
                 double worst = 0.0;
                 for (int t = 0; t < 1000; ++t) {
                   const auto in = random_instance(rng, 5);
                   const int k = static_cast<int>(rng.next() % 6);
                   const double y = -1.0 + 2.0 * rng.uniform();
                   const auto b = cdf_bound(in.spec, in.phi, k, y);
                   const double violation = b.kind == BoundKind::Lower ? b.bound - b.actual : b.actual - b.bound;
                   worst = std::max(worst, violation);
                 }
                 return worst;
               }});
  c.push_back({"lambda at K_tilde within its bounds", 1e-12, [] {
                 Rng rng(21);
                 double worst = 0.0;
                 for (int t = 0; t < 1000; ++t) {
                   const double th = (kPi / 2.0) * (1e-3 + (1.0 - 2e-3) * rng.uniform());
                   const double lam = lambda_k(th, k_tilde(th));
                   const double opt = lambda_optimal(th);
                   const double lo = opt * (1.0 - std::pow(std::tan(th / 2.0), 2));
                   worst = std::max({worst, (lo - lam) / opt, (lam - opt) / opt});
                 }
                 return worst;
               }});
  c.push_back({"lambda at K_tilde optimal for harmonic theta", 1e-12, [] {
                 double worst = 0.0;
                 for (double th : {kPi / 3.0, kPi / 5.0, kPi / 7.0}) {
                   worst = std::max(worst, std::abs(lambda_k(th, k_tilde(th)) - lambda_optimal(th)) / lambda_optimal(th));
                 }
                 return worst;
               }});
  c.push_back({"iteration matrix powers", 1e-10, [] {
                 Rng rng(22);
                 double worst = 0.0;
                 for (int t = 0; t < 50; ++t) {
                   const double th = 0.05 + (kPi - 0.1) * rng.uniform();
                   for (int k = 0; k <= 20; ++k) {
                     // [C_k, P_k] = [1, 0] M^k with C_k = sin((k+1)th)/sin th, P_k = C_{k-1}.
                     const auto m = iteration_matrix_power(std::cos(th), k);
                     const auto c = iteration_coefficients(th, k);
                     worst = std::max({worst, std::abs(m[0] - c.current), std::abs(m[1] - c.previous)});
                   }
                 }
                 return worst;
               }});
  c.push_back({"phase estimation modes at the grid points nearest +-theta", 0.5, [] {
                 const auto spec = AmplitudeSpec::uniform(6);
                 const auto phi = linear_ramp(6, kPi / 4.0);
                 const double th = theta(spec, phi).theta;
                 const auto est = run_qpe(build_qiter(spec, phi), prepare_two_register(spec), 7, 0, 0);
                 const double g = static_cast<double>(est.grid_size());
                 const auto j = est.folded_mode();
                 // Grid-step distance between the mode and theta.
                 return std::abs(static_cast<double>(j) - th * g / kTwoPi);
               }});
  c.push_back({"mean estimate within one grid step", 1.0, [] {
                 const auto spec = AmplitudeSpec::random(4, 5);
                 const auto phi = random_phase(4, 6);
                 const auto exact = theta_prime(spec, phi);
                 const Complex mean = std::polar(exact.cos_theta_prime, exact.delta);
                 const int M = 8;
                 const auto est = estimate_complex_mean(spec, phi, M, 0, 0);
                 const double step = kTwoPi / std::pow(2.0, M);
                 return std::max(std::abs(est.value.real() - mean.real()), std::abs(est.value.imag() - mean.imag())) /
                        step;
               }});
  return c;
}

}  // namespace

std::vector<PropertyResult> run_verify(std::ostream& out) {
  std::vector<PropertyResult> results;
  for (const auto& check : checks()) {
    PropertyResult r{check.name, false, {}};
    try {
      const double w = check.worst();
      r.pass = std::isfinite(w) && w <= check.tol;
      r.detail = "worst " + sci(w) + ", tolerance " + sci(check.tol);
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    out << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  (" << r.detail << ")\n";
    results.push_back(std::move(r));
  }
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  out << passed << "/" << results.size() << " properties passed\n";
  return results;
}

}  // namespace nbamp::cli
