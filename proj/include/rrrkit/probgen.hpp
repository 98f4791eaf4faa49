#pragma once

#include "rrrkit/model.hpp"
#include "rrrkit/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace rrrkit {

/// Instance with i.i.d. unit-variance normal sensing matrix and planted
/// signal; b = |A x0|.
template <class Scalar>
Instance<Scalar> gen_gaussian(Index m, Index n, std::uint64_t seed) {
  if (n < 1 || m < n) throw std::invalid_argument("gen_gaussian: need m >= n >= 1");
  std::mt19937_64 rng(seed);
  Instance<Scalar> inst;
  inst.A.resize(m, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i) inst.A(i, j) = draw_standard_normal<Scalar>(rng);
  Vec<Scalar> x0 = random_normal_vector<Scalar>(n, rng);
  inst.b = (inst.A * x0).cwiseAbs();
  inst.x0 = std::move(x0);
  inst.kind = InstanceKind::Gaussian;
  return inst;
}

inline AnyInstance gen_gaussian(Index m, Index n, Field field, std::uint64_t seed) {
  if (field == Field::Real) return gen_gaussian<Real>(m, n, seed);
  return gen_gaussian<Complex>(m, n, seed);
}

namespace detail {

/// First n columns of the m x m unitary DFT matrix.
inline ComplexMat dft_columns(Index m, Index n) {
  ComplexMat A(m, n);
  const Real scale = 1.0 / std::sqrt(static_cast<Real>(m));
  for (Index col = 0; col < n; ++col)
    for (Index row = 0; row < m; ++row) {
      const Real angle = -2.0 * std::numbers::pi * static_cast<Real>(row) *
                         static_cast<Real>(col) / static_cast<Real>(m);
      A(row, col) = std::polar(scale, angle);
    }
  return A;
}

}  // namespace detail

/// Known-support instance: the sensing matrix is the first n columns of the
/// (oversample*n)-point unitary DFT, so the columns are orthonormal. An
/// oversample factor below 2 does not guarantee a unique solution; the
/// instance is still generated and the caller may warn.
inline ComplexInstance gen_oversampled_dft(Index n, Index oversample, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_oversampled_dft: need n >= 1");
  if (oversample < 1) throw std::invalid_argument("gen_oversampled_dft: need oversample >= 1");
  const Index m = n * oversample;
  std::mt19937_64 rng(seed);
  ComplexInstance inst;
  inst.A = detail::dft_columns(m, n);
  ComplexVec x0 = random_normal_vector<Complex>(n, rng);
  inst.b = (inst.A * x0).cwiseAbs();
  inst.x0 = std::move(x0);
  inst.kind = InstanceKind::OversampledDft;
  return inst;
}

/// Crystallography-style instance: full n-point DFT with a k-sparse planted
/// signal. Solvers pair the top-k projector with the magnitude constraint on
/// such instances. Nonzero atoms are redrawn until their magnitude clears
/// 0.1, keeping ball radii in the analysis bounded away from zero.
inline ComplexInstance gen_sparse(Index n, Index k, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_sparse: need n >= 1");
  if (k < 1 || k > n) throw std::invalid_argument("gen_sparse: need 1 <= k <= n");
  std::mt19937_64 rng(seed);
  ComplexInstance inst;
  inst.A = detail::dft_columns(n, n);
  std::vector<Index> positions(static_cast<std::size_t>(n));
  std::iota(positions.begin(), positions.end(), Index{0});
  std::shuffle(positions.begin(), positions.end(), rng);
  positions.resize(static_cast<std::size_t>(k));
  std::sort(positions.begin(), positions.end());
  ComplexVec x0 = ComplexVec::Zero(n);
  for (Index pos : positions) {
    Complex atom = draw_standard_normal<Complex>(rng);
    while (std::abs(atom) < 0.1) atom = draw_standard_normal<Complex>(rng);
    x0[pos] = atom;
  }
  inst.b = (inst.A * x0).cwiseAbs();
  inst.x0 = std::move(x0);
  inst.kind = InstanceKind::Sparse;
  inst.sparsity = k;
  return inst;
}

}  // namespace rrrkit
