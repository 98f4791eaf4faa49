#pragma once

#include "rrrkit/types.hpp"

#include <cmath>
#include <random>

namespace rrrkit {

/// Standard normal draw. A fresh distribution object per call keeps the
/// rng-state -> value mapping independent of call history.
template <class Scalar>
Scalar draw_standard_normal(std::mt19937_64& rng);

template <>
inline Real draw_standard_normal<Real>(std::mt19937_64& rng) {
  std::normal_distribution<Real> dist(0.0, 1.0);
  return dist(rng);
}

/// Complex unit-variance normal: (N(0,1) + i N(0,1)) / sqrt(2).
template <>
inline Complex draw_standard_normal<Complex>(std::mt19937_64& rng) {
  const Real re = draw_standard_normal<Real>(rng);
  const Real im = draw_standard_normal<Real>(rng);
  return Complex(re, im) / std::sqrt(2.0);
}

template <class Scalar>
Vec<Scalar> random_normal_vector(Index size, std::mt19937_64& rng) {
  Vec<Scalar> v(size);
  for (Index i = 0; i < size; ++i) v[i] = draw_standard_normal<Scalar>(rng);
  return v;
}

}  // namespace rrrkit
