#pragma once

#include "rrrkit/types.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

namespace rrrkit {

/// Orthogonal projector onto col(A), applied through an orthonormal basis
/// factor Q computed once from a rank-revealing QR of A: P(y) = Q (Q^H y).
/// The factorization also provides the least-squares coefficient pull-back
/// x = A^+ z, so a column-space point can be read back as a signal.
template <class Scalar>
class ColumnSpaceProjector {
 public:
  explicit ColumnSpaceProjector(const Mat<Scalar>& A) : qr_(A), m_(A.rows()), n_(A.cols()) {
    basis_ = qr_.householderQ() * Mat<Scalar>::Identity(m_, n_);
  }

  Index m() const noexcept { return m_; }
  Index n() const noexcept { return n_; }

  Vec<Scalar> operator()(const Vec<Scalar>& y) const {
    if (y.size() != m_)
      throw std::invalid_argument("ColumnSpaceProjector: vector length does not match");
    return basis_ * (basis_.adjoint() * y);
  }

  /// Least-squares coefficients A^+ z of a measurement-space point.
  Vec<Scalar> coefficients(const Vec<Scalar>& z) const {
    if (z.size() != m_)
      throw std::invalid_argument("ColumnSpaceProjector: vector length does not match");
    return qr_.solve(z);
  }

  /// Entry (i, k) of the projection matrix Q Q^H.
  Scalar gram_entry(Index i, Index k) const { return basis_.row(k).dot(basis_.row(i)); }

  const Mat<Scalar>& basis() const noexcept { return basis_; }

 private:
  Eigen::ColPivHouseholderQR<Mat<Scalar>> qr_;
  Mat<Scalar> basis_;
  Index m_;
  Index n_;
};

/// Projector onto B = {y : |y| = b}: rounds each coordinate to the target
/// magnitude keeping its phase. phase(0) = 0, so a zero coordinate stays 0.
class MagnitudeProjector {
 public:
  explicit MagnitudeProjector(RealVec b) : b_(std::move(b)) {
    if ((b_.array() < 0.0).any())
      throw std::invalid_argument("MagnitudeProjector: negative magnitude");
  }

  template <class Scalar>
  Vec<Scalar> operator()(const Vec<Scalar>& y) const {
    if (y.size() != b_.size())
      throw std::invalid_argument("MagnitudeProjector: vector length does not match");
    Vec<Scalar> out(y.size());
    for (Index i = 0; i < y.size(); ++i) out[i] = b_[i] * phase(y[i]);
    return out;
  }

  const RealVec& magnitudes() const noexcept { return b_; }

 private:
  RealVec b_;
};

/// Projector onto the set of at-most-k-sparse vectors: keeps the k entries of
/// largest magnitude (ties broken toward the lowest index) and zeroes the
/// rest. Not linear.
class TopKProjector {
 public:
  explicit TopKProjector(Index k) : k_(k) {
    if (k_ < 1) throw std::invalid_argument("TopKProjector: k must be >= 1");
  }

  template <class Scalar>
  Vec<Scalar> operator()(const Vec<Scalar>& y) const {
    if (k_ > y.size()) throw std::invalid_argument("TopKProjector: k exceeds vector length");
    if (k_ == y.size()) return y;
    std::vector<Index> order(static_cast<std::size_t>(y.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::partial_sort(order.begin(), order.begin() + k_, order.end(), [&y](Index a, Index b) {
      const Real ma = std::abs(y[a]);
      const Real mb = std::abs(y[b]);
      return ma > mb || (ma == mb && a < b);
    });
    Vec<Scalar> out = Vec<Scalar>::Zero(y.size());
    for (Index j = 0; j < k_; ++j) out[order[static_cast<std::size_t>(j)]] = y[order[static_cast<std::size_t>(j)]];
    return out;
  }

  Index k() const noexcept { return k_; }

 private:
  Index k_;
};

/// Magnitude projector conjugated by a unitary sensing matrix: projects a
/// signal-domain point onto {x : |A x| = b}. Requires A square with
/// A^H A = I, so the conjugation is an isometry and the projection is exact.
template <class Scalar>
class TransformedMagnitudeProjector {
 public:
  TransformedMagnitudeProjector(Mat<Scalar> A, RealVec b)
      : A_(std::move(A)), inner_(std::move(b)) {
    if (A_.rows() != A_.cols())
      throw std::invalid_argument("TransformedMagnitudeProjector: matrix must be square");
    const Mat<Scalar> gram = A_.adjoint() * A_;
    const Real defect = (gram - Mat<Scalar>::Identity(A_.cols(), A_.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-10)
      throw std::invalid_argument("TransformedMagnitudeProjector: matrix is not unitary");
  }

  Vec<Scalar> operator()(const Vec<Scalar>& x) const {
    return A_.adjoint() * inner_(Vec<Scalar>(A_ * x));
  }

  const RealVec& magnitudes() const noexcept { return inner_.magnitudes(); }

 private:
  Mat<Scalar> A_;
  MagnitudeProjector inner_;
};

/// P^c = I - P, for any projector.
template <class Proj, class Scalar>
Vec<Scalar> complement(const Proj& proj, const Vec<Scalar>& y) {
  return y - proj(y);
}

/// R = 2P - I; an involution when P is a linear subspace projector.
template <class Proj, class Scalar>
Vec<Scalar> reflect(const Proj& proj, const Vec<Scalar>& y) {
  return 2.0 * proj(y) - y;
}

/// ||P_A(y) - P_B(y)||_2; zero exactly at points corresponding to solutions.
template <class ProjA, class ProjB, class Scalar>
Real feasibility_gap(const Vec<Scalar>& y, const ProjA& pa, const ProjB& pb) {
  return (pa(y) - pb(y)).norm();
}

}  // namespace rrrkit
