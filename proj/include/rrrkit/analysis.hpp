#pragma once

#include "rrrkit/model.hpp"
#include "rrrkit/objective.hpp"
#include "rrrkit/projectors.hpp"
#include "rrrkit/random.hpp"
#include "rrrkit/solvers.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rrrkit {

namespace detail {

inline std::vector<WitnessCase> classify_cases(const RealVec& y_tilde, const RealVec& w,
                                               Real zero_tol) {
  std::vector<WitnessCase> cases(static_cast<std::size_t>(w.size()), WitnessCase::Zero);
  for (Index i = 0; i < w.size(); ++i) {
    if (std::abs(w[i]) <= zero_tol)
      cases[static_cast<std::size_t>(i)] = WitnessCase::Zero;
    else if (phase(w[i]) == phase(y_tilde[i]))
      cases[static_cast<std::size_t>(i)] = WitnessCase::SameSign;
    else
      cases[static_cast<std::size_t>(i)] = WitnessCase::OppositeSign;
  }
  return cases;
}

inline SolutionWitness finish_witness(const ColumnSpaceProjector<Real>& pa,
                                      const RealVec& y_tilde, RealVec w) {
  const RealVec b = y_tilde.cwiseAbs();
  SolutionWitness witness;
  witness.y = y_tilde + w;
  witness.y_tilde = y_tilde;
  witness.w = std::move(w);
  const MagnitudeProjector pb(b);
  witness.residual = feasibility_gap(witness.y, pa, pb);
  const Real scale = std::max(1.0, b.norm());
  if (witness.residual > 1e-10 * scale)
    throw construction_error("make_solution: construction failed to reach the solution set");
  witness.cases = classify_cases(y_tilde, witness.w, 1e-12 * std::max(1.0, b.maxCoeff()));
  return witness;
}

inline void require_column_space_point(const ColumnSpaceProjector<Real>& pa,
                                       const RealVec& y_tilde) {
  if (y_tilde.size() != pa.m())
    throw std::invalid_argument("make_solution: y_tilde length does not match");
  const Real defect = complement(pa, y_tilde).norm();
  if (defect > 1e-10 * std::max(1.0, y_tilde.norm()))
    throw construction_error("make_solution: y_tilde is not in the column space");
}

}  // namespace detail

/// Samples a point of the solution set around y_tilde in col(A) with
/// |y_tilde| = b: draws w in the orthogonal complement and rescales it
/// globally so every coordinate magnitude stays below magnitude_cap * b[i].
/// Every coordinate then lands in an admissible regime (aligned, or opposed
/// but dominated), so y = y_tilde + w projects identically under both
/// constraint sets.
inline SolutionWitness make_solution(const ColumnSpaceProjector<Real>& pa, const RealVec& y_tilde,
                                     std::mt19937_64& rng, Real magnitude_cap = 0.9) {
  detail::require_column_space_point(pa, y_tilde);
  if (!(magnitude_cap > 0.0) || magnitude_cap >= 1.0)
    throw std::invalid_argument("make_solution: magnitude_cap must be in (0, 1)");
  const RealVec b = y_tilde.cwiseAbs();
  const RealVec g = random_normal_vector<Real>(y_tilde.size(), rng);
  RealVec w = complement(pa, g);
  if (w.cwiseAbs().maxCoeff() <= 1e-13 * std::max(1.0, g.norm())) {
    w.setZero();  // square case: the complement is trivial
  } else {
    Real scale = std::numeric_limits<Real>::infinity();
    for (Index i = 0; i < w.size(); ++i)
      if (w[i] != 0.0) scale = std::min(scale, magnitude_cap * b[i] / std::abs(w[i]));
    w *= std::isfinite(scale) ? scale : 0.0;
  }
  return detail::finish_witness(pa, y_tilde, std::move(w));
}

/// Samples a solution point whose orthogonal component realizes a requested
/// per-coordinate case pattern. The pattern constraints form a product of
/// closed convex sets (a point, a half-line, a segment), so the sampler
/// alternates projections between that product set and the orthogonal
/// complement of col(A), starting from per-coordinate targets with case-3
/// magnitudes drawn uniformly inside (0, 0.9 b[i]). Throws construction_error
/// when the requested pattern is infeasible (e.g. a nonzero case at a zero
/// magnitude) or the alternation fails to reach the solution set.
inline SolutionWitness make_solution(const ColumnSpaceProjector<Real>& pa, const RealVec& y_tilde,
                                     const std::vector<WitnessCase>& wanted,
                                     std::mt19937_64& rng) {
  detail::require_column_space_point(pa, y_tilde);
  if (wanted.size() != static_cast<std::size_t>(y_tilde.size()))
    throw std::invalid_argument("make_solution: case pattern length does not match");
  const RealVec b = y_tilde.cwiseAbs();
  for (Index i = 0; i < y_tilde.size(); ++i)
    if (wanted[static_cast<std::size_t>(i)] != WitnessCase::Zero && b[i] == 0.0)
      throw construction_error("make_solution: nonzero case requested at zero magnitude");

  const auto clamp_to_cases = [&](RealVec w) {
    for (Index i = 0; i < w.size(); ++i) {
      const Real s = phase(y_tilde[i]);
      switch (wanted[static_cast<std::size_t>(i)]) {
        case WitnessCase::Zero: w[i] = 0.0; break;
        case WitnessCase::SameSign: w[i] = s * std::max(w[i] * s, 0.0); break;
        case WitnessCase::OppositeSign:
          w[i] = -s * std::clamp(-w[i] * s, 0.0, 0.9 * b[i]);
          break;
      }
    }
    return w;
  };

  std::uniform_real_distribution<Real> same_mag(0.3, 1.0);
  std::uniform_real_distribution<Real> opp_mag(0.05, 0.9);
  RealVec w(y_tilde.size());
  for (Index i = 0; i < w.size(); ++i) {
    const Real s = phase(y_tilde[i]);
    switch (wanted[static_cast<std::size_t>(i)]) {
      case WitnessCase::Zero: w[i] = 0.0; break;
      case WitnessCase::SameSign: w[i] = s * b[i] * same_mag(rng); break;
      case WitnessCase::OppositeSign: w[i] = -s * b[i] * opp_mag(rng); break;
    }
  }
  for (int iter = 0; iter < 5000; ++iter) {
    const RealVec clamped = clamp_to_cases(w);
    const RealVec projected = complement(pa, clamped);
    const Real moved = (projected - w).norm();
    w = projected;
    if (moved <= 1e-14 * std::max(1.0, w.norm())) break;
  }
  w = complement(pa, clamp_to_cases(w));
  return detail::finish_witness(pa, y_tilde, std::move(w));
}

/// Outcome of testing a point against the coordinate-wise characterization of
/// the solution set. Decomposes y = y_tilde + w with y_tilde = P_A(y) and
/// reports which regime each coordinate landed in.
struct MembershipReport {
  bool is_solution = false;
  RealVec y_tilde;
  RealVec w;
  std::vector<WitnessCase> cases;
  std::optional<Index> first_violation;
};

/// Case-based membership predicate: y corresponds to a solution iff
/// |P_A(y)| = b (within tol, l2) and every coordinate of w = y - P_A(y) is
/// zero, aligned with P_A(y), or opposed with |w[i]| < |P_A(y)[i]|. Agrees
/// with the direct comparison of the two projections at the same tolerance;
/// the routes share no arithmetic. Coordinates with b[i] below tol/sqrt(m)
/// are degenerate and pass vacuously (the magnitude projector sends them
/// near zero regardless of phase).
inline MembershipReport check_solution_membership(const RealVec& y,
                                                  const ColumnSpaceProjector<Real>& pa,
                                                  const RealVec& b, Real tol) {
  MembershipReport report;
  report.y_tilde = pa(y);
  report.w = y - report.y_tilde;
  report.cases.assign(static_cast<std::size_t>(y.size()), WitnessCase::Zero);
  const bool in_b = (report.y_tilde.cwiseAbs() - b).norm() <= tol;
  const Real degenerate = tol / std::sqrt(static_cast<Real>(std::max<Index>(y.size(), 1)));
  bool cases_ok = true;
  for (Index i = 0; i < y.size(); ++i) {
    const Real s = phase(report.y_tilde[i]);
    const Real wi = report.w[i];
    WitnessCase c = WitnessCase::Zero;
    bool ok = true;
    if (wi == 0.0) {
      c = WitnessCase::Zero;
    } else if (s == 0.0) {
      ok = b[i] <= degenerate;  // zero column-space coordinate: only a (near-)zero magnitude passes
    } else if (phase(wi) == s) {
      c = WitnessCase::SameSign;
    } else if (std::abs(wi) < std::abs(report.y_tilde[i])) {
      c = WitnessCase::OppositeSign;
    } else {
      ok = false;  // opposed and dominating: y[i] crossed (or hit) the sign boundary
    }
    report.cases[static_cast<std::size_t>(i)] = c;
    if (!ok && !report.first_violation) report.first_violation = i;
    cases_ok = cases_ok && ok;
  }
  report.is_solution = in_b && cases_ok;
  return report;
}

/// Measurements supporting the local convexity statement around a solution
/// point y0 with d = min_i |y0[i]| > 0: inside the radius-d ball the gradient
/// collapses to P_A(y - y0), the gradient is monotone (1-strongly so along
/// col(A)), the unit-relaxation step lands on a fixed point in one iteration,
/// and relaxations in (0, 2) contract the distance to y0.
struct ConvexityReport {
  Real d = 0.0;
  bool gradient_identity_ok = false;
  Real gradient_identity_max_err = 0.0;
  Real monotonicity_margin = 0.0;      // min over sampled pairs, both regimes
  Real ball_margin_min = 0.0;          // <g(u)-g(v), u-v> over ball pairs
  Real column_margin_max_dev = 0.0;    // |<g(u)-g(v), u-v> - ||u-v||^2| over col(A) pairs
  bool column_pairs_available = false;
  bool one_step_ok = false;
  bool contraction_ok = false;
};

inline ConvexityReport local_convexity_report(const RealVec& y0,
                                              const ColumnSpaceProjector<Real>& pa,
                                              const MagnitudeProjector& pb, int samples,
                                              std::mt19937_64& rng) {
  if (samples < 1) throw std::invalid_argument("local_convexity_report: samples must be >= 1");
  ConvexityReport report;
  report.d = y0.cwiseAbs().minCoeff();
  if (report.d == 0.0)
    throw std::domain_error(
        "local_convexity_report: zero-coordinate solution, the sign-locked ball is empty");
  const Real gap0 = feasibility_gap(y0, pa, pb);
  if (gap0 > 1e-9 * std::max(1.0, pb.magnitudes().norm()))
    throw std::invalid_argument("local_convexity_report: y0 does not correspond to a solution");

  std::uniform_real_distribution<Real> radius(0.0, 0.99 * report.d);
  const auto sample_ball = [&]() {
    RealVec dir = random_normal_vector<Real>(y0.size(), rng);
    dir *= radius(rng) / dir.norm();
    return RealVec(y0 + dir);
  };

  // (a) gradient identity on sampled ball points
  report.gradient_identity_ok = true;
  for (int s = 0; s < samples; ++s) {
    const RealVec y = sample_ball();
    const RealVec grad = rrr_objective_gradient(y, pa, pb);
    const RealVec expected = pa(RealVec(y - y0));
    const Real err = (grad - expected).cwiseAbs().maxCoeff();
    report.gradient_identity_max_err = std::max(report.gradient_identity_max_err, err);
    if (err > 1e-10 * (1.0 + (y - y0).norm())) report.gradient_identity_ok = false;
  }

  // (b) monotone gradient over ball pairs, 1-strong along col(A)
  report.ball_margin_min = std::numeric_limits<Real>::infinity();
  for (int s = 0; s < samples; ++s) {
    const RealVec u = sample_ball();
    const RealVec v = sample_ball();
    const RealVec du = rrr_objective_gradient(u, pa, pb) - rrr_objective_gradient(v, pa, pb);
    report.ball_margin_min = std::min(report.ball_margin_min, du.dot(u - v));
  }
  const RealVec center = pa(y0);
  const Real offset = (center - y0).norm();
  const Real column_radius_sq = std::pow(0.99 * report.d, 2) - offset * offset;
  report.column_pairs_available = column_radius_sq > 0.0;
  if (report.column_pairs_available) {
    const Real column_radius = std::sqrt(column_radius_sq);
    const auto sample_column = [&]() {
      RealVec dir = pa(random_normal_vector<Real>(y0.size(), rng));
      dir *= (column_radius * 0.99) / dir.norm();
      std::uniform_real_distribution<Real> shrink(0.05, 1.0);
      return RealVec(center + shrink(rng) * dir);
    };
    for (int s = 0; s < samples; ++s) {
      const RealVec u = sample_column();
      const RealVec v = sample_column();
      const RealVec du = rrr_objective_gradient(u, pa, pb) - rrr_objective_gradient(v, pa, pb);
      const Real margin = du.dot(u - v) - (u - v).squaredNorm();
      report.column_margin_max_dev = std::max(report.column_margin_max_dev, std::abs(margin));
    }
  }
  report.monotonicity_margin =
      std::min(report.ball_margin_min, -report.column_margin_max_dev);

  // (c) one unit-relaxation step reaches a fixed point; relaxations inside
  // (0, 2) contract the distance to y0 strictly while the column-space
  // component of the error survives.
  const Real b_scale = std::max(1.0, pb.magnitudes().norm());
  report.one_step_ok = true;
  report.contraction_ok = true;
  const int probes = std::min(samples, 8);
  for (int s = 0; s < probes; ++s) {
    const RealVec start = sample_ball();
    const RealVec landed = rrr_step(start, 1.0, pa, pb);
    const Real moved_again = (rrr_step(landed, 1.0, pa, pb) - landed).norm();
    if (moved_again > 1e-10 * (1.0 + landed.norm()) ||
        feasibility_gap(landed, pa, pb) > 1e-10 * b_scale)
      report.one_step_ok = false;
    for (const Real beta : {0.5, 1.5}) {
      RealVec y = start;
      for (int it = 0; it < 8; ++it) {
        if (pa(RealVec(y - y0)).norm() <= 1e-13 * report.d) break;
        const RealVec next = rrr_step(y, beta, pa, pb);
        if (!((next - y0).norm() < (y - y0).norm())) report.contraction_ok = false;
        y = next;
      }
    }
  }
  return report;
}

/// Constructive nearby-solution certificate built from the gradient norm
/// epsilon at y: P_B(y) must already be a column-space point, and then
/// y0 = P_B(y) + (1 - epsilon/d) P_A^c(y) corresponds to a solution within
/// distance epsilon (1 + ||P_A^c(y)||/d). When additionally min_i |y[i]| >=
/// epsilon the untapered point (alpha = 0) is itself a solution within
/// distance epsilon. Validation failure (epsilon too large for the
/// construction) is reported, not thrown.
struct StabilityCertificate {
  bool validated = false;
  std::string failure_reason;
  Real epsilon = 0.0;
  RealVec solution_point;  // P_B(y)
  RealVec nearby_y0;
  Real alpha = 0.0;
  Real bound = 0.0;
  Real distance = 0.0;
  bool tight_bound_applicable = false;
  bool tight_bound_ok = false;
  Real tight_distance = 0.0;
};

inline StabilityCertificate stability_certificate(const RealVec& y, const RealInstance& inst,
                                                  const ColumnSpaceProjector<Real>& pa) {
  if (!inst.x0)
    throw std::invalid_argument("stability_certificate: x0 absent, cannot determine d");
  const Real d = (inst.A * *inst.x0).cwiseAbs().minCoeff();
  if (d <= 0.0)
    throw std::domain_error("stability_certificate: planted magnitudes touch zero");
  const MagnitudeProjector pb(inst.b);
  const Real tol = 1e-9 * std::max(1.0, inst.b.norm());

  StabilityCertificate cert;
  cert.epsilon = rrr_objective_gradient(y, pa, pb).norm();
  cert.solution_point = pb(y);

  const Real column_defect = complement(pa, cert.solution_point).norm();
  if (column_defect > tol) {
    cert.failure_reason = "P_B(y) is not a column-space point; gradient norm too large";
    return cert;
  }
  cert.alpha = cert.epsilon / d;
  if (cert.alpha >= 1.0) {
    cert.failure_reason = "epsilon/d >= 1, the tapered construction is undefined";
    return cert;
  }
  const RealVec orth = complement(pa, y);
  cert.nearby_y0 = cert.solution_point + (1.0 - cert.alpha) * orth;
  if (feasibility_gap(cert.nearby_y0, pa, pb) > tol) {
    cert.failure_reason = "constructed point does not correspond to a solution";
    return cert;
  }
  cert.distance = (y - cert.nearby_y0).norm();
  cert.bound = cert.epsilon * (1.0 + orth.norm() / d);
  const Real slack = 1e-12 * (1.0 + y.norm());
  if (cert.distance > cert.bound + slack) {
    cert.failure_reason = "constructed point violates the distance bound";
    return cert;
  }
  cert.validated = true;

  cert.tight_bound_applicable = y.cwiseAbs().minCoeff() >= cert.epsilon;
  if (cert.tight_bound_applicable) {
    const RealVec y0_flat = cert.solution_point + orth;
    cert.tight_distance = (y - y0_flat).norm();
    cert.tight_bound_ok = feasibility_gap(y0_flat, pa, pb) <= tol &&
                          cert.tight_distance <= cert.epsilon + slack;
  }
  return cert;
}

/// Quadratic restriction of the objective along a ray y - beta dir, valid for
/// relaxations beyond the sign-lock threshold max_i |y[i]/dir[i]| where the
/// magnitude projection of the ray point freezes at -P_B(dir). The closed
/// form there is
///   f(beta) = (||P_A dir||^2 / 2) beta^2
///           - <dir, P_A(y + 2 P_B(dir)) - P_B(dir)> beta + const,
/// so when dir has no column-space component the restriction is affine with
/// slope <dir, P_B(dir)> = sum_i b[i] |dir[i]|, strictly positive for any
/// fully nonzero direction against nonzero magnitudes. Fitted from the first
/// three grid values; the fourth grid value, when given, measures the fit
/// residual.
struct RayFit {
  std::array<Real, 3> coeffs{};  // c0 + c1 beta + c2 beta^2
  Real quadratic_coeff_expected = 0.0;  // ||P_A dir||^2 / 2
  Real linear_coeff_expected = 0.0;     // -<dir, P_A(y + 2 P_B(dir)) - P_B(dir)>
  Real affine_slope_expected = 0.0;     // <dir, P_B(dir)>, the affine-case slope
  bool affine = false;
  std::optional<Real> residual_at_check;
  std::optional<Real> value_at_check;
  Real sign_lock_threshold = 0.0;
};

inline RayFit ray_probe(const RealVec& y, const RealVec& dir, std::span<const Real> beta_grid,
                        const ColumnSpaceProjector<Real>& pa, const MagnitudeProjector& pb) {
  if (dir.size() != y.size()) throw std::invalid_argument("ray_probe: direction length mismatch");
  for (Index i = 0; i < dir.size(); ++i)
    if (dir[i] == 0.0)
      throw sign_boundary_error("ray_probe: direction has a zero coordinate", i);
  if (beta_grid.size() < 3)
    throw std::invalid_argument("ray_probe: need at least three grid points");
  RayFit fit;
  for (Index i = 0; i < y.size(); ++i)
    fit.sign_lock_threshold = std::max(fit.sign_lock_threshold, std::abs(y[i] / dir[i]));
  for (const Real beta : beta_grid)
    if (!(beta > fit.sign_lock_threshold))
      throw std::invalid_argument("ray_probe: grid point below the sign-lock threshold");

  const auto value = [&](Real beta) { return rrr_objective(RealVec(y - beta * dir), pa, pb); };
  const RealVec pa_dir = pa(dir);
  const RealVec pb_dir = pb(dir);
  fit.quadratic_coeff_expected = 0.5 * pa_dir.squaredNorm();
  fit.affine_slope_expected = dir.dot(pb_dir);
  fit.linear_coeff_expected = -dir.dot(pa(RealVec(y + 2.0 * pb_dir))) + fit.affine_slope_expected;
  fit.affine = pa_dir.norm() <= 1e-12 * dir.norm();

  Eigen::Vector3d values;
  for (int j = 0; j < 3; ++j) values[j] = value(beta_grid[static_cast<std::size_t>(j)]);
  if (fit.affine) {
    // Least-squares line through the three samples.
    Eigen::Matrix<Real, 3, 2> vand;
    for (int j = 0; j < 3; ++j) vand.row(j) << 1.0, beta_grid[static_cast<std::size_t>(j)];
    const Eigen::Vector2d line = vand.colPivHouseholderQr().solve(values);
    fit.coeffs = {line[0], line[1], 0.0};
  } else {
    Eigen::Matrix3d vand;
    for (int j = 0; j < 3; ++j) {
      const Real beta = beta_grid[static_cast<std::size_t>(j)];
      vand.row(j) << 1.0, beta, beta * beta;
    }
    const Eigen::Vector3d quad = vand.fullPivLu().solve(values);
    fit.coeffs = {quad[0], quad[1], quad[2]};
  }
  if (beta_grid.size() >= 4) {
    const Real beta = beta_grid[3];
    const Real predicted = fit.coeffs[0] + fit.coeffs[1] * beta + fit.coeffs[2] * beta * beta;
    const Real actual = value(beta);
    fit.value_at_check = actual;
    fit.residual_at_check = std::abs(predicted - actual);
  }
  return fit;
}

/// Whether the gradient at y satisfies the ray-escape hypotheses: every
/// gradient coordinate nonzero, and either a surviving column-space component
/// or a positive inner product with P_B(y) (which then equals
/// ||P_A^c P_B(y)||^2). False only when y corresponds to a solution.
inline bool grad_direction_admissible(const RealVec& y, const ColumnSpaceProjector<Real>& pa,
                                      const MagnitudeProjector& pb) {
  const RealVec grad = rrr_objective_gradient(y, pa, pb);
  const Real norm = grad.norm();
  if (norm <= 1e-14 * (1.0 + y.norm())) return false;
  for (Index i = 0; i < grad.size(); ++i)
    if (grad[i] == 0.0) return false;
  if (pa(grad).norm() > 1e-14 * norm) return true;
  return grad.dot(pb(y)) > 0.0;
}

}  // namespace rrrkit
