#pragma once

#include "rrrkit/projectors.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

namespace rrrkit {

/// Objective whose sign-locked gradient step reproduces the relax-reflect-
/// reflect iteration:
///   ||y - P_A P_B(y)||^2 - (||y - P_A(y)||^2 + ||y - P_B(y)||^2) / 2.
/// Defined for both fields and any projector pair. Zero at every point that
/// corresponds to a solution, strictly negative at suboptimal alternating-
/// projection stagnation points, so solutions are critical points of the
/// objective but not its minimizers.
template <class Scalar, class ProjA, class ProjB>
Real rrr_objective(const Vec<Scalar>& y, const ProjA& pa, const ProjB& pb) {
  const Vec<Scalar> pby = pb(y);
  const Vec<Scalar> papby = pa(pby);
  return (y - papby).squaredNorm() -
         0.5 * ((y - pa(y)).squaredNorm() + (y - pby).squaredNorm());
}

/// Alternating-projection objective ||y - P_A P_B(y)||^2 / 2. Vanishes at
/// every fixed point of the alternating projections, solution or not.
template <class Scalar, class ProjA, class ProjB>
Real gs_objective(const Vec<Scalar>& y, const ProjA& pa, const ProjB& pb) {
  return 0.5 * (y - pa(pb(y))).squaredNorm();
}

/// Analytic gradient P_A(y) + P_B(y) - 2 P_A P_B(y), valid over the reals
/// wherever no coordinate of y sits on the sign boundary (the magnitude
/// projector is locally constant there). Refuses points with a zero
/// coordinate rather than returning a subgradient.
inline RealVec rrr_objective_gradient(const RealVec& y, const ColumnSpaceProjector<Real>& pa,
                                      const MagnitudeProjector& pb) {
  for (Index i = 0; i < y.size(); ++i)
    if (y[i] == 0.0)
      throw sign_boundary_error("rrr_objective_gradient: gradient undefined at sign boundary", i);
  const RealVec pby = pb(y);
  return pa(y) + pby - 2.0 * pa(pby);
}

inline ComplexVec rrr_objective_gradient(const ComplexVec&, const ColumnSpaceProjector<Complex>&,
                                         const MagnitudeProjector&) {
  throw std::domain_error(
      "rrr_objective_gradient: gradient interpretation unavailable in complex field");
}

/// Central finite differences of rrr_objective, the independent reference for
/// the analytic gradient. The step is h * max(1, |y[i]|) per coordinate;
/// requires min_i |y[i]| > 10 h so every probe stays inside the region where
/// the signs of y are locked.
template <class ProjA, class ProjB>
RealVec finite_difference_gradient(const RealVec& y, const ProjA& pa, const ProjB& pb,
                                   Real h = 1e-6) {
  if (!(h > 0.0)) throw std::invalid_argument("finite_difference_gradient: h must be > 0");
  for (Index i = 0; i < y.size(); ++i)
    if (std::abs(y[i]) <= 10.0 * h)
      throw sign_boundary_error(
          "finite_difference_gradient: coordinate too close to the sign boundary", i);
  RealVec grad(y.size());
  RealVec probe = y;
  for (Index i = 0; i < y.size(); ++i) {
    const Real hi = h * std::max(1.0, std::abs(y[i]));
    probe[i] = y[i] + hi;
    const Real fp = rrr_objective(probe, pa, pb);
    probe[i] = y[i] - hi;
    const Real fm = rrr_objective(probe, pa, pb);
    probe[i] = y[i];
    grad[i] = (fp - fm) / (2.0 * hi);
  }
  return grad;
}

/// Joint evaluation of both objectives at a point, with the gradient filled
/// in only where it exists: real field and no zero coordinate.
template <class Scalar>
struct ObjectiveEval {
  Vec<Scalar> at;
  Real f_r = 0.0;
  Real f_gs = 0.0;
  std::optional<RealVec> gradient;
};

template <class Scalar>
ObjectiveEval<Scalar> evaluate_objective(const Vec<Scalar>& y,
                                         const ColumnSpaceProjector<Scalar>& pa,
                                         const MagnitudeProjector& pb) {
  ObjectiveEval<Scalar> eval;
  eval.at = y;
  const Vec<Scalar> pby = pb(y);
  const Vec<Scalar> pay = pa(y);
  const Vec<Scalar> papby = pa(pby);
  eval.f_gs = 0.5 * (y - papby).squaredNorm();
  eval.f_r = (y - papby).squaredNorm() -
             0.5 * ((y - pay).squaredNorm() + (y - pby).squaredNorm());
  if constexpr (field_of<Scalar> == Field::Real) {
    if ((y.array() != 0.0).all()) eval.gradient = RealVec(pay + pby - 2.0 * papby);
  }
  return eval;
}

/// The two mixed Wirtinger derivatives of the composed projection whose
/// inequality certifies that the complex iteration is not a gradient flow:
///   forward = d/d conj(y[k]) of (P_A P_B y)[i],   swapped = the (i <-> k) value.
/// A symmetric pair is necessary for P_A P_B to be a gradient.
struct WirtingerPair {
  Complex forward;
  Complex swapped;
  bool asymmetric = false;  // |forward - swapped| > 1e-10
};

inline WirtingerPair wirtinger_asymmetry(const ComplexVec& y, Index i, Index k,
                                         const ColumnSpaceProjector<Complex>& pa,
                                         const MagnitudeProjector& pb) {
  if (i == k) throw std::invalid_argument("wirtinger_asymmetry: indices must differ");
  if (i < 0 || k < 0 || i >= y.size() || k >= y.size())
    throw std::invalid_argument("wirtinger_asymmetry: index out of range");
  if (y[i] == Complex(0)) throw sign_boundary_error("wirtinger_asymmetry: zero coordinate", i);
  if (y[k] == Complex(0)) throw sign_boundary_error("wirtinger_asymmetry: zero coordinate", k);
  const RealVec& b = pb.magnitudes();
  const auto mixed = [&](Index r, Index s) {
    const Complex ys = y[s];
    return Complex(-0.5) * pa.gram_entry(r, s) * b[s] * ys / (std::abs(ys) * std::conj(ys));
  };
  WirtingerPair pair{mixed(i, k), mixed(k, i), false};
  pair.asymmetric = std::abs(pair.forward - pair.swapped) > 1e-10;
  return pair;
}

/// Real instances: the composed projection is locally constant around any
/// point with nonzero coordinates, so both mixed derivatives vanish and the
/// pair is symmetric. The gradient view survives only over the reals.
inline WirtingerPair wirtinger_asymmetry(const RealVec& y, Index i, Index k,
                                         const ColumnSpaceProjector<Real>&,
                                         const MagnitudeProjector&) {
  if (i == k) throw std::invalid_argument("wirtinger_asymmetry: indices must differ");
  if (i < 0 || k < 0 || i >= y.size() || k >= y.size())
    throw std::invalid_argument("wirtinger_asymmetry: index out of range");
  if (y[i] == 0.0) throw sign_boundary_error("wirtinger_asymmetry: zero coordinate", i);
  if (y[k] == 0.0) throw sign_boundary_error("wirtinger_asymmetry: zero coordinate", k);
  return WirtingerPair{Complex(0), Complex(0), false};
}

/// Numerical Wirtinger derivative d/d conj(y[k]) of (P_A P_B y)[i], via
/// 0.5 (d/d re + i d/d im) central differences; the reference the closed
/// forms are checked against.
inline Complex wirtinger_numerical(const ComplexVec& y, Index i, Index k,
                                   const ColumnSpaceProjector<Complex>& pa,
                                   const MagnitudeProjector& pb, Real h = 1e-5) {
  const auto component = [&](const ComplexVec& point) {
    return Complex(pa(pb(point))[i]);
  };
  ComplexVec probe = y;
  probe[k] = y[k] + Complex(h, 0.0);
  const Complex fp_re = component(probe);
  probe[k] = y[k] - Complex(h, 0.0);
  const Complex fm_re = component(probe);
  probe[k] = y[k] + Complex(0.0, h);
  const Complex fp_im = component(probe);
  probe[k] = y[k] - Complex(0.0, h);
  const Complex fm_im = component(probe);
  const Complex d_re = (fp_re - fm_re) / (2.0 * h);
  const Complex d_im = (fp_im - fm_im) / (2.0 * h);
  return 0.5 * (d_re + Complex(0.0, 1.0) * d_im);
}

}  // namespace rrrkit
