#include "nbamp/qpe.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nbamp/error.hpp"
#include "nbamp/parallel.hpp"

namespace nbamp {

namespace {

constexpr int kMaxTotalQubits = 26;
constexpr double kTieTolerance = 1e-12;

template <typename T>
std::size_t argmax_low(const std::vector<T>& w, double rel_tol) {
  if (w.empty()) throw DomainError("argmax of an empty distribution");
  const T best = *std::max_element(w.begin(), w.end());
  const double cut = static_cast<double>(best) * (1.0 - rel_tol);
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (static_cast<double>(w[j]) >= cut) return j;
  }
  return 0;
}

std::size_t bit_of(int M, int q) { return std::size_t{1} << (M - 1 - q); }

// H on phase qubit q: pairs of blocks (j, j | bit) with the bit clear in j.
void hadamard_phase(std::span<Complex> amps, int M, int q, std::size_t block) {
  const std::size_t bit = bit_of(M, q);
  const std::size_t grid = std::size_t{1} << M;
  const double s = 1.0 / std::sqrt(2.0);
  parallel_for(grid, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      if (j & bit) continue;
      Complex* a = amps.data() + j * block;
      Complex* b = amps.data() + (j | bit) * block;
      for (std::size_t i = 0; i < block; ++i) {
        const Complex x = a[i];
        const Complex y = b[i];
        a[i] = (x + y) * s;
        b[i] = (x - y) * s;
      }
    }
  });
}

void controlled_phase(std::span<Complex> amps, int M, int q1, int q2, double angle, std::size_t block) {
  const std::size_t mask = bit_of(M, q1) | bit_of(M, q2);
  const Complex f = std::polar(1.0, angle);
  const std::size_t grid = std::size_t{1} << M;
  parallel_for(grid, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      if ((j & mask) != mask) continue;
      Complex* a = amps.data() + j * block;
      for (std::size_t i = 0; i < block; ++i) a[i] *= f;
    }
  });
}

void swap_phase(std::span<Complex> amps, int M, int q1, int q2, std::size_t block) {
  const std::size_t b1 = bit_of(M, q1);
  const std::size_t b2 = bit_of(M, q2);
  const std::size_t grid = std::size_t{1} << M;
  for (std::size_t j = 0; j < grid; ++j) {
    // Visit each (bit1=1, bit2=0) block once and exchange it with its partner.
    if ((j & b1) && !(j & b2)) {
      const std::size_t partner = (j & ~b1) | b2;
      std::swap_ranges(amps.begin() + j * block, amps.begin() + (j + 1) * block,
                       amps.begin() + partner * block);
    }
  }
}

}  // namespace

double PhaseEstimate::omega(std::size_t j) const {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(grid_size());
}

std::size_t PhaseEstimate::mode() const {
  if (counts) return argmax_low(*counts, 0.0);
  return argmax_low(distribution, kTieTolerance);
}

std::vector<double> PhaseEstimate::folded_weights() const {
  const std::size_t g = grid_size();
  std::vector<double> src(g);
  for (std::size_t j = 0; j < g; ++j) {
    src[j] = counts ? static_cast<double>((*counts)[j]) : distribution[j];
  }
  std::vector<double> w(g / 2 + 1, 0.0);
  for (std::size_t j = 0; j < g; ++j) w[std::min(j, g - j)] += src[j];
  return w;
}

std::size_t PhaseEstimate::folded_mode() const {
  return argmax_low(folded_weights(), counts ? 0.0 : kTieTolerance);
}

void inverse_qft_inplace(std::span<Complex> amps, int M, std::size_t block) {
  if (M < 1) throw DomainError("inverse QFT needs at least one qubit");
  if (amps.size() != (std::size_t{1} << M) * block) {
    throw DomainError("inverse QFT: buffer size does not match 2^M * block");
  }
  for (int q = 0; q < M / 2; ++q) swap_phase(amps, M, q, M - 1 - q, block);
  for (int q = M - 1; q >= 0; --q) {
    for (int r = M - 1; r > q; --r) {
      controlled_phase(amps, M, q, r, -kTwoPi / static_cast<double>(std::size_t{1} << (r - q + 1)), block);
    }
    hadamard_phase(amps, M, q, block);
  }
}

PhaseEstimate run_qpe(const Operator& u, const StateVector& input, int M, std::uint64_t shots,
                      std::uint64_t seed) {
  if (M < 1) throw DomainError("QPE needs M >= 1, got " + std::to_string(M));
  if (M > kMaxPhaseQubits) {
    throw ResourceError("QPE with M = " + std::to_string(M) + " exceeds the limit of " +
                        std::to_string(kMaxPhaseQubits) + " phase qubits");
  }
  if (u.dim() != input.dim()) {
    throw DomainError("QPE: operator dimension " + std::to_string(u.dim()) +
                      " does not match input dimension " + std::to_string(input.dim()));
  }
  if (M + input.num_qubits() > kMaxTotalQubits) {
    throw ResourceError("QPE register of " + std::to_string(M + input.num_qubits()) +
                        " qubits exceeds the dense simulation limit of " + std::to_string(kMaxTotalQubits));
  }

  const std::size_t block = input.dim();
  const std::size_t grid = std::size_t{1} << M;
  std::vector<Complex> amps(grid * block);

  // Hadamards on the phase register leave the uniform superposition over j,
  // and the controlled powers then put u^j |input> into block j. Block j is
  // therefore u applied to block j-1: 2^M - 1 applications in total.
  const double amp = 1.0 / std::sqrt(static_cast<double>(grid));
  for (std::size_t i = 0; i < block; ++i) amps[i] = input[i] * amp;
  for (std::size_t j = 1; j < grid; ++j) {
    std::copy_n(amps.begin() + (j - 1) * block, block, amps.begin() + j * block);
    u.apply_inplace(std::span<Complex>(amps).subspan(j * block, block));
  }

  inverse_qft_inplace(amps, M, block);

  PhaseEstimate est;
  est.M = M;
  est.distribution.assign(grid, 0.0);
  parallel_for(grid, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < block; ++i) s += std::norm(amps[j * block + i]);
      est.distribution[j] = s;
    }
  });
  if (shots > 0) est.counts = sample_weights(est.distribution, shots, seed);
  return est;
}

}  // namespace nbamp
