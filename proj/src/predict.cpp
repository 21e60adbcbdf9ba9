#include "nbamp/predict.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nbamp/amplify.hpp"
#include "nbamp/error.hpp"

namespace nbamp {

namespace {

void check_dims(const AmplitudeSpec& spec, const PhaseFunction& phi) {
  if (spec.size() != phi.size()) {
    throw DomainError("amplitude spec has " + std::to_string(spec.size()) +
                      " entries but phase function has " + std::to_string(phi.size()));
  }
}

void check_k(int k) {
  if (k < 0) throw DomainError("iteration count must be >= 0, got " + std::to_string(k));
}

double clamp_unit(double c) { return std::clamp(c, -1.0, 1.0); }

// Two-register amplitudes a0(x)/sqrt2 [C - P e^{i s0 phi}] on b=0 and
// a0(x)/sqrt2 [C - P e^{-i s0 phi}] on b=1.
StateVector two_register_closed_form(const AmplitudeSpec& spec, const PhaseFunction& phi,
                                     const IterationCoefficients& c, double sign_b0) {
  const std::size_t n = spec.size();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<Complex> amps(2 * n);
  for (std::size_t x = 0; x < n; ++x) {
    const Complex a = spec[x] * inv_sqrt2;
    amps[x] = a * (c.current - c.previous * unit_phase(sign_b0 * phi[x]));
    amps[n + x] = a * (c.current - c.previous * unit_phase(-sign_b0 * phi[x]));
  }
  return StateVector::adopt(spec.num_qubits() + 1, std::move(amps));
}

EtaPair make_eta(const StateVector& base, const StateVector& rotated, double angle, double sin_angle) {
  // (e^{+-i angle}|base> - |rotated>) / (i sqrt2 sin(angle))
  const Complex denom = Complex(0.0, std::sqrt(2.0) * sin_angle);
  auto build = [&](double sign) {
    const Complex e = std::polar(1.0, sign * angle);
    std::vector<Complex> v(base.dim());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (e * base[i] - rotated[i]) / denom;
    return StateVector::adopt(base.num_qubits(), std::move(v));
  };
  return {build(1.0), build(-1.0)};
}

}  // namespace

ThetaSummary theta_from_cos(double cos_theta) {
  const double c = clamp_unit(cos_theta);
  return {c, std::acos(c)};
}

ThetaSummary theta(const AmplitudeSpec& spec, const PhaseFunction& phi) {
  check_dims(spec, phi);
  double c = 0.0, total = 0.0;
  for (std::size_t x = 0; x < spec.size(); ++x) {
    const double p = std::norm(spec[x]);
    c += p * std::cos(phi[x]);
    total += p;
  }
  return theta_from_cos(c / total);
}

ThetaPrimeSummary theta_prime_from_mean(Complex mean) {
  const double mag = std::min(1.0, std::abs(mean));
  double delta = 0.0;
  if (mag > 0.0) {
    delta = std::atan2(mean.imag(), mean.real());
    if (delta < 0.0) delta += kTwoPi;
    if (delta >= kTwoPi) delta = 0.0;
  }
  return {mag, std::acos(mag), delta};
}

ThetaPrimeSummary theta_prime(const AmplitudeSpec& spec, const PhaseFunction& phi) {
  check_dims(spec, phi);
  Complex mean = 0.0;
  double total = 0.0;
  for (std::size_t x = 0; x < spec.size(); ++x) {
    const double p = std::norm(spec[x]);
    mean += p * unit_phase(phi[x]);
    total += p;
  }
  return theta_prime_from_mean(mean / total);
}

double lambda_k(double theta, int k) {
  check_k(k);
  const double s = std::sin(theta);
  if (s * s < 1e-18) {
    const double kk = static_cast<double>(k);
    return (std::cos(theta) > 0.0 ? 2.0 : -2.0) * kk * (kk + 1.0);
  }
  return 2.0 * std::sin(k * theta) * std::sin((k + 1) * theta) / (s * s);
}

double lambda_optimal(double theta) {
  if (!(theta > 0.0) || theta > kPi + 1e-12) {
    throw DomainError("lambda_optimal: theta must lie in (0, pi], got " + std::to_string(theta));
  }
  return 1.0 / (1.0 - std::cos(theta));
}

int k_tilde(double theta) {
  if (!(theta > 0.0) || theta > kPi + 1e-12) {
    throw DomainError("k_tilde: theta must lie in (0, pi], got " + std::to_string(theta));
  }
  return static_cast<int>(std::floor(kPi / (2.0 * theta)));
}

IterationCoefficients iteration_coefficients(double theta, int k) {
  check_k(k);
  const double s = std::sin(theta);
  if (std::abs(s) < kSinThetaFloor) {
    const double kk = static_cast<double>(k);
    if (std::cos(theta) > 0.0) return {kk + 1.0, kk};
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return {sign * (kk + 1.0), -sign * kk};
  }
  return {std::sin((k + 1) * theta) / s, std::sin(k * theta) / s};
}

std::array<double, 4> iteration_matrix_power(double cos_theta, int k) {
  check_k(k);
  const std::array<double, 4> m{2.0 * cos_theta, 1.0, -1.0, 0.0};
  std::array<double, 4> r{1.0, 0.0, 0.0, 1.0};
  for (int i = 0; i < k; ++i) {
    r = {r[0] * m[0] + r[1] * m[2], r[0] * m[1] + r[1] * m[3], r[2] * m[0] + r[3] * m[2],
         r[2] * m[1] + r[3] * m[3]};
  }
  return r;
}

std::vector<double> predicted_probabilities(const AmplitudeSpec& spec, const PhaseFunction& phi, int k,
                                            Formulation formulation) {
  check_dims(spec, phi);
  check_k(k);
  const auto p0 = spec.initial_probabilities();
  std::vector<double> p(spec.size());
  if (formulation == Formulation::AncillaFree) {
    const auto tp = theta_prime(spec, phi);
    const double lam = lambda_k(tp.theta_prime, k);
    for (std::size_t x = 0; x < p.size(); ++x) {
      p[x] = p0[x] * (1.0 - lam * (std::cos(phi[x] - tp.delta) - tp.cos_theta_prime));
    }
  } else {
    const auto t = theta(spec, phi);
    const double lam = lambda_k(t.theta, k);
    for (std::size_t x = 0; x < p.size(); ++x) {
      p[x] = p0[x] * (1.0 - lam * (std::cos(phi[x]) - t.cos_theta));
    }
  }
  double total = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (p[x] < -1e-12) {
      throw ConsistencyError("predicted probability at x=" + std::to_string(x) + " is negative (" +
                             std::to_string(p[x]) + ")");
    }
    total += p[x];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConsistencyError("predicted probabilities sum to " + std::to_string(total));
  }
  return p;
}

MomentReport moments(const AmplitudeSpec& spec, const PhaseFunction& phi, int k, int order) {
  check_dims(spec, phi);
  check_k(k);
  if (order < 0) throw DomainError("moment order must be >= 0");
  const auto p0 = spec.initial_probabilities();
  auto raw = [&](int n) {
    double s = 0.0;
    for (std::size_t x = 0; x < p0.size(); ++x) s += p0[x] * std::pow(std::cos(phi[x]), n);
    return s;
  };
  const double mu1 = raw(1);
  const double lam = lambda_k(theta_from_cos(mu1).theta, k);
  const double mu_n = raw(order);
  return {order, mu_n - lam * (raw(order + 1) - mu_n * mu1)};
}

CdfBound cdf_bound(const AmplitudeSpec& spec, const PhaseFunction& phi, int k, double y) {
  check_dims(spec, phi);
  check_k(k);
  const auto p0 = spec.initial_probabilities();
  const auto t = theta(spec, phi);
  const double lam = lambda_k(t.theta, k);
  const auto pk = predicted_probabilities(spec, phi, k, Formulation::Alternating);

  double f0 = 0.0;
  double fk = 0.0;
  for (std::size_t x = 0; x < p0.size(); ++x) {
    if (std::cos(phi[x]) <= y) {
      f0 += p0[x];
      fk += pk[x];
    }
  }
  const double mu0 = t.cos_theta;
  const double below = f0 * (mu0 - y);
  const double above = (1.0 - f0) * (y - mu0);
  if (lam >= 0.0) return {BoundKind::Lower, f0 + lam * std::max(below, above), fk};
  return {BoundKind::Upper, f0 + lam * std::min(below, above), fk};
}

StateVector alpha_state(const AmplitudeSpec& spec, const PhaseFunction& phi) {
  check_dims(spec, phi);
  return two_register_closed_form(spec, phi, {0.0, -1.0}, 1.0);
}

StateVector beta_state(const AmplitudeSpec& spec, const PhaseFunction& phi) {
  check_dims(spec, phi);
  return two_register_closed_form(spec, phi, {0.0, -1.0}, -1.0);
}

StateVector amplitudes_closed_form(const AmplitudeSpec& spec, const PhaseFunction& phi, int k,
                                   Formulation formulation) {
  check_dims(spec, phi);
  check_k(k);
  if (formulation == Formulation::AncillaFree) {
    const auto tp = theta_prime(spec, phi);
    const auto c = iteration_coefficients(tp.theta_prime, k);
    const Complex e_delta = unit_phase(tp.delta);
    std::vector<Complex> amps(spec.size());
    for (std::size_t x = 0; x < amps.size(); ++x) {
      if (k % 2 == 1) {
        amps[x] = spec[x] * (c.current * e_delta - c.previous * unit_phase(phi[x]));
      } else {
        amps[x] = spec[x] * (c.current - c.previous * e_delta * unit_phase(-phi[x]));
      }
    }
    return StateVector::adopt(spec.num_qubits(), std::move(amps));
  }
  const auto t = theta(spec, phi);
  const auto c = iteration_coefficients(t.theta, k);
  // Ancilla b=0 carries e^{+i phi} when k + 0 is odd; QIter always uses |alpha>.
  const double sign_b0 = (formulation == Formulation::QIter || k % 2 == 1) ? 1.0 : -1.0;
  return two_register_closed_form(spec, phi, c, sign_b0);
}

EtaPair eta_states(const AmplitudeSpec& spec, const PhaseFunction& phi) {
  const auto t = theta(spec, phi);
  const double s = std::sin(t.theta);
  if (!(s > kSinThetaFloor)) throw DomainError("eigenstates undefined at sin theta = 0");
  return make_eta(prepare_two_register(spec), alpha_state(spec, phi), t.theta, s);
}

EtaPair eta_states(const StateVector& psi0, const Operator& u) {
  if (u.dim() != psi0.dim()) throw DomainError("eta_states: operator/state dimension mismatch");
  const auto t = theta_from_cos(inner_product(psi0, u.apply(psi0)).real());
  const double s = std::sin(t.theta);
  if (!(s > kSinThetaFloor)) throw DomainError("eigenstates undefined at sin theta = 0");
  const auto big_psi0 = prepare_two_register(psi0);
  return make_eta(big_psi0, conditional_two_register(u).apply(big_psi0), t.theta, s);
}

EtaPair eta_prime_states(const AmplitudeSpec& spec, const PhaseFunction& phi) {
  return eta_prime_states(spec.psi0(), phase_oracle(phi));
}

EtaPair eta_prime_states(const StateVector& psi0, const Operator& u) {
  if (u.dim() != psi0.dim()) throw DomainError("eta_prime_states: operator/state dimension mismatch");
  const auto alpha = u.apply(psi0);
  const auto tp = theta_prime_from_mean(inner_product(psi0, alpha));
  const double s = std::sin(tp.theta_prime);
  if (!(s > kSinThetaFloor)) throw DomainError("eigenstates undefined at sin theta' = 0");
  // e^{-i delta}|alpha'> plays the role of |alpha>.
  const Complex rot = unit_phase(-tp.delta);
  auto rotated = alpha.to_vector();
  for (auto& z : rotated) z *= rot;
  return make_eta(psi0, StateVector::adopt(psi0.num_qubits(), std::move(rotated)), tp.theta_prime, s);
}

}  // namespace nbamp
