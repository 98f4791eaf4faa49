#pragma once

#include "rrrkit/types.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rrrkit {

enum class InstanceKind { Gaussian, OversampledDft, Sparse };

inline std::string to_string(InstanceKind kind, Index sparsity = 0) {
  switch (kind) {
    case InstanceKind::Gaussian: return "gaussian";
    case InstanceKind::OversampledDft: return "dft";
    case InstanceKind::Sparse: return "sparse:" + std::to_string(sparsity);
  }
  return "gaussian";
}

inline std::pair<InstanceKind, Index> parse_instance_kind(const std::string& text) {
  if (text == "gaussian") return {InstanceKind::Gaussian, 0};
  if (text == "dft") return {InstanceKind::OversampledDft, 0};
  if (text.rfind("sparse:", 0) == 0) {
    const Index k = std::stoll(text.substr(7));
    return {InstanceKind::Sparse, k};
  }
  throw validation_error("kind", "unknown instance kind '" + text + "'");
}

/// A phase retrieval instance |A x| = b, with an optional planted signal.
/// The scalar type fixes the field; magnitudes are always real.
template <class Scalar>
struct Instance {
  Mat<Scalar> A;
  RealVec b;
  std::optional<Vec<Scalar>> x0;
  InstanceKind kind = InstanceKind::Gaussian;
  Index sparsity = 0;  // top-k level, meaningful for Sparse instances only

  static constexpr Field field = field_of<Scalar>;

  Index m() const noexcept { return A.rows(); }
  Index n() const noexcept { return A.cols(); }

  /// Throws validation_error naming the offending field when any invariant
  /// is broken: b >= 0 and finite, A finite with full column rank within
  /// tolerance, and |A x0| = b up to generation round-off when x0 is present.
  void validate() const {
    if (m() < 1 || n() < 1) throw validation_error("A", "must be at least 1x1");
    if (!A.allFinite()) throw validation_error("A", "non-finite entry");
    if (b.size() != m()) throw validation_error("b", "length must match the rows of A");
    if (!b.allFinite()) throw validation_error("b", "non-finite entry");
    if ((b.array() < 0.0).any()) throw validation_error("b", "negative magnitude entry");
    // Full column rank within tolerance; the column-space projector through
    // the pseudo-inverse is ill-defined otherwise.
    Eigen::JacobiSVD<Mat<Scalar>> svd(A);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0 || sv(sv.size() - 1) <= 1e-10 * sv(0))
      throw validation_error("A", "rank-deficient within tolerance");
    if (x0) {
      if (x0->size() != n()) throw validation_error("x0", "length must match the columns of A");
      if (!x0->allFinite()) throw validation_error("x0", "non-finite entry");
      const RealVec mags = (A * (*x0)).cwiseAbs();
      const Real scale = b.size() > 0 ? b.maxCoeff() : 0.0;
      if ((mags - b).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw validation_error("x0", "|A x0| does not reproduce b");
    }
    if (kind == InstanceKind::Sparse && (sparsity < 1 || sparsity > n()))
      throw validation_error("kind", "sparsity level out of range");
  }
};

using RealInstance = Instance<Real>;
using ComplexInstance = Instance<Complex>;
using AnyInstance = std::variant<RealInstance, ComplexInstance>;

inline Field field_of_instance(const AnyInstance& inst) {
  return std::holds_alternative<RealInstance>(inst) ? Field::Real : Field::Complex;
}

/// Relative l2 recovery error modulo the global ambiguity of the field: sign
/// for real signals, a unit phase for complex ones. The aligning scalar is
/// the closed-form optimum phase(<x0, x_hat>).
template <class Scalar>
Real signal_error(const Vec<Scalar>& x_hat, const Vec<Scalar>& x0) {
  if (x_hat.size() != x0.size()) throw std::invalid_argument("signal_error: length mismatch");
  const Real ref = x0.norm();
  if (ref == 0.0) throw std::domain_error("signal_error: undefined reference (x0 = 0)");
  Scalar align = phase(x0.dot(x_hat));
  if (align == Scalar(0)) align = Scalar(1);
  return (x_hat - align * x0).norm() / ref;
}

enum class Algorithm { GS, DR, HIO, RRR, RAAR };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::GS: return "gs";
    case Algorithm::DR: return "dr";
    case Algorithm::HIO: return "hio";
    case Algorithm::RRR: return "rrr";
    case Algorithm::RAAR: return "raar";
  }
  return "rrr";
}

inline Algorithm parse_algorithm(const std::string& name) {
  if (name == "gs") return Algorithm::GS;
  if (name == "dr") return Algorithm::DR;
  if (name == "hio") return Algorithm::HIO;
  if (name == "rrr") return Algorithm::RRR;
  if (name == "raar") return Algorithm::RAAR;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

inline bool uses_relaxation(Algorithm a) {
  return a == Algorithm::HIO || a == Algorithm::RRR || a == Algorithm::RAAR;
}

enum class InitKind { RandomGaussian, Given };

struct RunConfig {
  Algorithm algorithm = Algorithm::RRR;
  Real beta = 0.5;
  long max_iters = 100000;
  Real solve_tol = 1e-9;  // feasibility-gap threshold, relative to ||b||_2
  long trace_every = 1;
  std::uint64_t seed = 0;
  InitKind init = InitKind::RandomGaussian;
  std::optional<std::variant<RealVec, ComplexVec>> init_point;  // for InitKind::Given

  void validate() const {
    if (max_iters < 1) throw std::invalid_argument("RunConfig: max_iters must be >= 1");
    if (!(solve_tol > 0.0)) throw std::invalid_argument("RunConfig: solve_tol must be > 0");
    if (trace_every < 1) throw std::invalid_argument("RunConfig: trace_every must be >= 1");
    if (uses_relaxation(algorithm) && !(beta > 0.0))
      throw std::invalid_argument("RunConfig: beta must be > 0");
    if (init == InitKind::Given && !init_point)
      throw std::invalid_argument("RunConfig: init point missing");
  }
};

template <class Scalar>
struct IterState {
  Vec<Scalar> y;
  long t = 0;
  Real beta = 1.0;
};

struct TraceRow {
  long t = 0;
  Real f_r = 0.0;
  Real f_gs = 0.0;
  std::optional<Real> grad_norm;  // absent off the real sign-locked region
  Real feas_gap = 0.0;
  std::optional<Real> signal_error;  // absent without a ground-truth signal
};

/// Per-iteration record of a solver run. Rows are strictly increasing in t
/// and every stored value is finite.
class IterTrace {
 public:
  void append(const TraceRow& row) {
    if (!rows_.empty() && row.t <= rows_.back().t)
      throw std::invalid_argument("IterTrace: rows must be strictly increasing in t");
    const bool finite = std::isfinite(row.f_r) && std::isfinite(row.f_gs) &&
                        std::isfinite(row.feas_gap) &&
                        (!row.grad_norm || std::isfinite(*row.grad_norm)) &&
                        (!row.signal_error || std::isfinite(*row.signal_error));
    if (!finite) throw std::invalid_argument("IterTrace: non-finite value");
    rows_.push_back(row);
  }

  const std::vector<TraceRow>& rows() const noexcept { return rows_; }
  bool empty() const noexcept { return rows_.empty(); }
  std::size_t size() const noexcept { return rows_.size(); }

  /// Number of sign flips of the objective column across recorded rows.
  int objective_sign_changes() const {
    int count = 0;
    for (std::size_t i = 1; i < rows_.size(); ++i)
      if (rows_[i - 1].f_r * rows_[i].f_r < 0.0) ++count;
    return count;
  }

  void write_csv(std::ostream& os) const {
    os << "t,f_R,f_GS,grad_norm,feas_gap,signal_error\n";
    os << std::setprecision(17);
    for (const TraceRow& r : rows_) {
      os << r.t << ',' << r.f_r << ',' << r.f_gs << ',';
      if (r.grad_norm) os << *r.grad_norm;
      os << ',' << r.feas_gap << ',';
      if (r.signal_error) os << *r.signal_error;
      os << '\n';
    }
  }

 private:
  std::vector<TraceRow> rows_;
};

/// Per-coordinate regime of the orthogonal component w of a solution point
/// y = y_tilde + w: zero, aligned with y_tilde, or opposed with magnitude
/// strictly below the measured one.
enum class WitnessCase { Zero, SameSign, OppositeSign };

/// Constructive certificate that a point corresponds to a solution:
/// y = y_tilde + w with y_tilde in col(A) intersect B and w orthogonal to
/// col(A), with the residual ||P_A(y) - P_B(y)||_2 recorded.
struct SolutionWitness {
  RealVec y;
  RealVec y_tilde;
  RealVec w;
  Real residual = 0.0;
  std::vector<WitnessCase> cases;
};

}  // namespace rrrkit
