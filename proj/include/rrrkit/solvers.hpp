#pragma once

#include "rrrkit/model.hpp"
#include "rrrkit/objective.hpp"
#include "rrrkit/projectors.hpp"
#include "rrrkit/random.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace rrrkit {

/// Alternating projections: y -> P_A P_B (y).
template <class Scalar, class ProjA, class ProjB>
Vec<Scalar> gs_step(const Vec<Scalar>& y, const ProjA& pa, const ProjB& pb) {
  return pa(pb(y));
}

/// Relax-reflect-reflect: y -> y + beta (P_A(2 P_B(y) - y) - P_B(y)).
template <class Scalar, class ProjA, class ProjB>
Vec<Scalar> rrr_step(const Vec<Scalar>& y, Real beta, const ProjA& pa, const ProjB& pb) {
  if (!(beta > 0.0)) throw std::invalid_argument("rrr_step: beta must be > 0");
  const Vec<Scalar> pby = pb(y);
  return y + beta * (pa(Vec<Scalar>(2.0 * pby - y)) - pby);
}

/// Douglas-Rachford: y -> y + P_A(2 P_B(y) - y) - P_B(y). Computed as the
/// beta = 1 member of the relaxed family so the two share arithmetic exactly.
template <class Scalar, class ProjA, class ProjB>
Vec<Scalar> dr_step(const Vec<Scalar>& y, const ProjA& pa, const ProjB& pb) {
  return rrr_step(y, 1.0, pa, pb);
}

/// Hybrid input-output: y -> y + P_A((1 + beta) P_B(y) - y) - beta P_B(y).
template <class Scalar, class ProjA, class ProjB>
Vec<Scalar> hio_step(const Vec<Scalar>& y, Real beta, const ProjA& pa, const ProjB& pb) {
  if (!(beta > 0.0)) throw std::invalid_argument("hio_step: beta must be > 0");
  const Vec<Scalar> pby = pb(y);
  return y + pa(Vec<Scalar>((1.0 + beta) * pby - y)) - beta * pby;
}

/// Relaxed averaged alternating reflections:
///   y -> beta (y + P_A(2 P_B(y) - y)) + (1 - 2 beta) P_B(y).
template <class Scalar, class ProjA, class ProjB>
Vec<Scalar> raar_step(const Vec<Scalar>& y, Real beta, const ProjA& pa, const ProjB& pb) {
  if (!(beta > 0.0)) throw std::invalid_argument("raar_step: beta must be > 0");
  const Vec<Scalar> pby = pb(y);
  return beta * (y + pa(Vec<Scalar>(2.0 * pby - y))) + (1.0 - 2.0 * beta) * pby;
}

template <class Scalar, class ProjA, class ProjB>
Vec<Scalar> apply_step(Algorithm alg, const Vec<Scalar>& y, Real beta, const ProjA& pa,
                       const ProjB& pb) {
  switch (alg) {
    case Algorithm::GS: return gs_step(y, pa, pb);
    case Algorithm::DR: return dr_step(y, pa, pb);
    case Algorithm::HIO: return hio_step(y, beta, pa, pb);
    case Algorithm::RRR: return rrr_step(y, beta, pa, pb);
    case Algorithm::RAAR: return raar_step(y, beta, pa, pb);
  }
  throw std::invalid_argument("apply_step: unknown algorithm");
}

/// One step of the chosen map together with its displacement and the
/// feasibility gap at the new point.
template <class Scalar>
struct StepReport {
  Vec<Scalar> y_next;
  Real moved = 0.0;
  Real feas_gap = 0.0;
};

template <class Scalar, class ProjA, class ProjB>
StepReport<Scalar> step_report(Algorithm alg, const Vec<Scalar>& y, Real beta, const ProjA& pa,
                               const ProjB& pb) {
  StepReport<Scalar> report;
  report.y_next = apply_step(alg, y, beta, pa, pb);
  report.moved = (report.y_next - y).norm();
  report.feas_gap = feasibility_gap(report.y_next, pa, pb);
  return report;
}

enum class RunStatus { Solved, MaxIters, Diverged };

inline std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Solved: return "solved";
    case RunStatus::MaxIters: return "max_iters";
    case RunStatus::Diverged: return "diverged";
  }
  return "max_iters";
}

template <class Scalar>
struct RunResult {
  IterState<Scalar> state;
  IterTrace trace;
  RunStatus status = RunStatus::MaxIters;
};

namespace detail {

/// Shared iteration loop. `extras` fills the optional trace columns from the
/// already-computed projections (y, P_A y, P_B y, P_A P_B y).
template <class Scalar, class ProjA, class ProjB, class Extras>
RunResult<Scalar> run_loop(const RunConfig& cfg, const ProjA& pa, const ProjB& pb, Vec<Scalar> y,
                           Real stop_scale, Extras&& extras) {
  RunResult<Scalar> out;
  for (long t = 0;; ++t) {
    const Vec<Scalar> pby = pb(y);
    const Vec<Scalar> pay = pa(y);
    const Real gap = (pay - pby).norm();
    if (!pby.allFinite() || !pay.allFinite() || !std::isfinite(gap)) {
      out.state = IterState<Scalar>{std::move(y), t, cfg.beta};
      out.status = RunStatus::Diverged;
      return out;
    }
    const bool solved = gap <= cfg.solve_tol * stop_scale;
    const bool done = solved || t >= cfg.max_iters;
    if (done || t % cfg.trace_every == 0) {
      const Vec<Scalar> papby = pa(pby);
      TraceRow row;
      row.t = t;
      row.f_gs = 0.5 * (y - papby).squaredNorm();
      row.f_r = (y - papby).squaredNorm() -
                0.5 * ((y - pay).squaredNorm() + (y - pby).squaredNorm());
      row.feas_gap = gap;
      extras(row, y, pay, pby, papby);
      if (!std::isfinite(row.f_r) || !std::isfinite(row.f_gs)) {
        // the iterate left the representable range; stop with what we have
        out.state = IterState<Scalar>{std::move(y), t, cfg.beta};
        out.status = RunStatus::Diverged;
        return out;
      }
      out.trace.append(row);
    }
    if (done) {
      out.state = IterState<Scalar>{std::move(y), t, cfg.beta};
      out.status = solved ? RunStatus::Solved : RunStatus::MaxIters;
      return out;
    }
    Vec<Scalar> next = apply_step(cfg.algorithm, y, cfg.beta, pa, pb);
    if (!next.allFinite()) {
      out.state = IterState<Scalar>{std::move(y), t, cfg.beta};
      out.status = RunStatus::Diverged;
      return out;
    }
    y = std::move(next);
  }
}

template <class Scalar>
Vec<Scalar> initial_iterate(Index size, const RunConfig& cfg) {
  if (cfg.init == InitKind::Given) {
    if (!cfg.init_point) throw std::invalid_argument("run: init point missing");
    const auto* given = std::get_if<Vec<Scalar>>(&*cfg.init_point);
    if (!given) throw std::invalid_argument("run: init point field does not match the instance");
    if (given->size() != size) throw std::invalid_argument("run: init point length mismatch");
    return *given;
  }
  std::mt19937_64 rng(cfg.seed);
  return random_normal_vector<Scalar>(size, rng);
}

}  // namespace detail

/// Iterates the configured map from the initial point until the feasibility
/// gap falls below solve_tol * ||b||_2 (Solved), the iteration budget runs
/// out (MaxIters), or an iterate stops being finite (Diverged, reporting the
/// last finite state). A trace row is recorded every trace_every steps and at
/// the final step.
///
/// Gaussian and oversampled-DFT instances iterate in measurement space with
/// the column-space projector; sparse instances iterate in signal space with
/// the top-k projector and the magnitude constraint conjugated through the
/// (unitary) sensing matrix. The traced signal error is measured against the
/// planted signal after the field's global ambiguity is removed.
template <class Scalar>
RunResult<Scalar> run(const Instance<Scalar>& inst, const RunConfig& cfg) {
  cfg.validate();
  const Real stop_scale = inst.b.norm();
  if (inst.kind == InstanceKind::Sparse) {
    const TopKProjector pa(inst.sparsity);
    const TransformedMagnitudeProjector<Scalar> pb(inst.A, inst.b);
    Vec<Scalar> y0 = detail::initial_iterate<Scalar>(inst.m(), cfg);
    const auto extras = [&inst](TraceRow& row, const Vec<Scalar>&, const Vec<Scalar>&,
                                const Vec<Scalar>&, const Vec<Scalar>& papby) {
      if (inst.x0) row.signal_error = signal_error(papby, *inst.x0);
    };
    return detail::run_loop<Scalar>(cfg, pa, pb, std::move(y0), stop_scale, extras);
  }
  const ColumnSpaceProjector<Scalar> pa(inst.A);
  const MagnitudeProjector pb(inst.b);
  Vec<Scalar> y0 = detail::initial_iterate<Scalar>(inst.m(), cfg);
  const auto extras = [&inst, &pa](TraceRow& row, const Vec<Scalar>& y, const Vec<Scalar>& pay,
                                   const Vec<Scalar>& pby, const Vec<Scalar>& papby) {
    if constexpr (field_of<Scalar> == Field::Real) {
      if ((y.array() != 0.0).all()) row.grad_norm = (pay + pby - 2.0 * papby).norm();
    }
    if (inst.x0) row.signal_error = signal_error(Vec<Scalar>(pa.coefficients(pby)), *inst.x0);
  };
  return detail::run_loop<Scalar>(cfg, pa, pb, std::move(y0), stop_scale, extras);
}

inline std::variant<RunResult<Real>, RunResult<Complex>> run(const AnyInstance& inst,
                                                             const RunConfig& cfg) {
  using Out = std::variant<RunResult<Real>, RunResult<Complex>>;
  return std::visit([&cfg](const auto& concrete) -> Out { return run(concrete, cfg); }, inst);
}

}  // namespace rrrkit
