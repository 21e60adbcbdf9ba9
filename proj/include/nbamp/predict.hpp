#pragma once

// Closed-form analysis of non-boolean amplitude amplification. Everything here
// is computed from the initial amplitudes and the phase table alone, without
// simulating any operator, so it serves as the reference every simulated result
// is checked against.
//
// Notation:
//   cos(theta)            = sum_x |a0(x)|^2 cos(phi(x)),      theta in [0, pi]
//   cos(theta') e^{i delta} = sum_x |a0(x)|^2 e^{i phi(x)},     theta' in [0, pi/2]
//   lambda_K              = 2 sin(K theta) sin((K+1) theta) / sin^2(theta)
//   p_K(x)                = p0(x) {1 - lambda_K [cos(phi(x)) - cos(theta)]}
//
// Singularities: formulas with a sin(theta) denominator switch to their limits
// when |sin(theta)| < 1e-9 (lambda_K when sin^2(theta) < 1e-18). At theta -> 0,
// sin((k+1)theta)/sin(theta) -> k+1 and lambda_K -> 2K(K+1); at theta -> pi the
// same limits pick up the signs (-1)^k and -1 respectively.
//
// Both means are divided by sum_x p0(x), which differs from 1 only by rounding
// in the amplitudes; an all-zero phase table then gives cos(theta) = 1 exactly.
//
// Error model: theta and theta' are accumulated by plain double-precision
// summation in index order. For N <= 2^16 the absolute error of cos(theta) is
// below N * 2^-53 ~ 1e-11, far inside every tolerance used by the library.

#include <array>
#include <utility>
#include <vector>

#include "nbamp/amplitude_spec.hpp"
#include "nbamp/operator.hpp"
#include "nbamp/oracles.hpp"
#include "nbamp/statevec.hpp"

namespace nbamp {

inline constexpr double kSinThetaFloor = 1e-9;

struct ThetaSummary {
  double cos_theta;
  double theta;
};

struct ThetaPrimeSummary {
  double cos_theta_prime;
  double theta_prime;
  // Argument of the complex mean, atan2 convention, shifted into [0, 2*pi).
  // Zero when the mean vanishes.
  double delta;
};

struct MomentReport {
  int order;
  double value;
};

enum class BoundKind { Lower, Upper };

struct CdfBound {
  BoundKind kind;  // Lower when lambda_K >= 0, Upper otherwise
  double bound;
  double actual;   // F_K(y) by direct summation over p_K
};

// Coefficients of |Psi0> and -|alpha> after k iterations:
// current = sin((k+1)theta)/sin(theta), previous = sin(k theta)/sin(theta).
struct IterationCoefficients {
  double current;
  double previous;
};

ThetaSummary theta(const AmplitudeSpec& spec, const PhaseFunction& phi);
ThetaSummary theta_from_cos(double cos_theta);
ThetaPrimeSummary theta_prime(const AmplitudeSpec& spec, const PhaseFunction& phi);
ThetaPrimeSummary theta_prime_from_mean(Complex mean);

double lambda_k(double theta, int k);
double lambda_optimal(double theta);
int k_tilde(double theta);

IterationCoefficients iteration_coefficients(double theta, int k);

// M^k for M = [[2c, 1], [-1, 0]] by repeated multiplication, row-major.
std::array<double, 4> iteration_matrix_power(double cos_theta, int k);

std::vector<double> predicted_probabilities(const AmplitudeSpec& spec, const PhaseFunction& phi, int k,
                                            Formulation formulation);

MomentReport moments(const AmplitudeSpec& spec, const PhaseFunction& phi, int k, int order);
CdfBound cdf_bound(const AmplitudeSpec& spec, const PhaseFunction& phi, int k, double y);

// |alpha> = bold U_phi |Psi0> and |beta> = bold U_phi^dagger |Psi0>, from their
// explicit expansions.
StateVector alpha_state(const AmplitudeSpec& spec, const PhaseFunction& phi);
StateVector beta_state(const AmplitudeSpec& spec, const PhaseFunction& phi);

// State after k iterations from the closed forms: 2N amplitudes for the two
// ancilla formulations, N for AncillaFree.
StateVector amplitudes_closed_form(const AmplitudeSpec& spec, const PhaseFunction& phi, int k,
                                   Formulation formulation);

struct EtaPair {
  StateVector plus;
  StateVector minus;
};

// Eigenstates of Q_iter with eigenvalues e^{+-i theta}. Throws DomainError
// when sin(theta) <= 1e-9.
EtaPair eta_states(const AmplitudeSpec& spec, const PhaseFunction& phi);
// Same for a generic unitary u and data-register state psi0.
EtaPair eta_states(const StateVector& psi0, const Operator& u);

// Eigenstates of Q_evenodd with eigenvalues e^{+-2i theta'}.
EtaPair eta_prime_states(const AmplitudeSpec& spec, const PhaseFunction& phi);
EtaPair eta_prime_states(const StateVector& psi0, const Operator& u);

}  // namespace nbamp
