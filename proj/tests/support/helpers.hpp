#pragma once

#include <cmath>
#include <vector>

#include "dense_oracle.hpp"
#include "nbamp/statevec.hpp"

namespace testing_helpers {

inline oracle::Vec to_vec(const nbamp::StateVector& s) { return s.to_vector(); }

inline double max_diff(const nbamp::StateVector& a, const nbamp::StateVector& b) {
  return oracle::max_abs_diff(a.to_vector(), b.to_vector());
}

inline nbamp::StateVector random_state(int n, std::uint64_t seed) {
  nbamp::Rng rng(seed);
  std::vector<nbamp::Complex> v(std::size_t{1} << n);
  for (auto& z : v) z = {rng.uniform() - 0.5, rng.uniform() - 0.5};
  return nbamp::normalized(std::move(v));
}

inline double binomial_sigma(double p, double shots) { return std::sqrt(shots * p * (1.0 - p)); }

}  // namespace testing_helpers
