// Command-line front end: generate instances, run the projection solvers with
// CSV traces, run the verifier suites, and reproduce the two-relaxation
// recovery experiment. Emits CSV/JSON; plotting is left to external tools.

#include "rrrkit/rrrkit.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace rrrkit;
using nlohmann::json;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RRRKIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable RRRKIT_SEED='" << env << "'\n";
    }
  }
  return 1;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOptions {
  std::string family = "gaussian";
  Index m = 0;
  Index n = 0;
  std::string field = "real";
  Index oversample = 2;
  Index k = 1;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_generate(const GenerateOptions& opt) {
  AnyInstance inst = [&]() -> AnyInstance {
    if (opt.family == "gaussian") {
      const Field field = opt.field == "complex" ? Field::Complex : Field::Real;
      return gen_gaussian(opt.m, opt.n, field, opt.seed);
    }
    if (opt.family == "dft") {
      if (opt.oversample < 2)
        std::cerr << "warning: oversample < 2 does not guarantee a unique solution\n";
      return gen_oversampled_dft(opt.n, opt.oversample, opt.seed);
    }
    return gen_sparse(opt.n, opt.k, opt.seed);
  }();
  save_instance(inst, opt.out);
  std::visit([](const auto& c) { c.validate(); }, inst);
  json summary{{"schema", 1},
               {"family", opt.family},
               {"m", std::visit([](const auto& c) { return c.m(); }, inst)},
               {"n", std::visit([](const auto& c) { return c.n(); }, inst)},
               {"field", to_string(field_of_instance(inst))},
               {"out", opt.out}};
  std::cout << summary.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
  std::string instance_path;
  std::string algorithm = "rrr";
  Real beta = 0.5;
  long max_iters = 100000;
  Real tol = 1e-9;
  long trace_every = 1;
  std::uint64_t seed = 0;
  std::string trace_path;
  std::string summary_path;
};

template <class Scalar>
json solve_one(const Instance<Scalar>& inst, const SolveOptions& opt) {
  RunConfig cfg;
  cfg.algorithm = parse_algorithm(opt.algorithm);
  cfg.beta = opt.beta;
  cfg.max_iters = opt.max_iters;
  cfg.solve_tol = opt.tol;
  cfg.trace_every = opt.trace_every;
  cfg.seed = opt.seed;
  const RunResult<Scalar> result = run(inst, cfg);
  if (!opt.trace_path.empty()) {
    std::ofstream out(opt.trace_path);
    if (!out) throw std::runtime_error("cannot open '" + opt.trace_path + "' for writing");
    result.trace.write_csv(out);
  }
  const TraceRow& last = result.trace.rows().back();
  json summary{{"schema", 1},
               {"algorithm", opt.algorithm},
               {"beta", opt.beta},
               {"status", to_string(result.status)},
               {"iters", result.state.t},
               {"final_feas_gap", last.feas_gap},
               {"final_signal_error",
                last.signal_error ? json(*last.signal_error) : json(nullptr)}};
  return summary;
}

int cmd_solve(const SolveOptions& opt) {
  const AnyInstance inst = load_instance(opt.instance_path);
  const json summary =
      std::visit([&](const auto& concrete) { return solve_one(concrete, opt); }, inst);
  std::cout << summary.dump(2) << '\n';
  if (!opt.summary_path.empty()) write_text(opt.summary_path, summary.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::string suite;
  int samples = 100;
  std::uint64_t seed = 0;
  Index m = 0;  // 0: suite default
  Index n = 0;
  std::string out;
};

struct CheckAccumulator {
  json checks = json::array();
  bool all_passed = true;
  std::string first_failure;

  void add(const std::string& name, bool passed, json detail = json::object()) {
    detail["name"] = name;
    detail["passed"] = passed;
    checks.push_back(detail);
    if (!passed && all_passed) first_failure = name;
    all_passed = all_passed && passed;
  }
};

RealVec nonzero_point(Index m, std::mt19937_64& rng, double floor) {
  for (;;) {
    RealVec y = random_normal_vector<Real>(m, rng);
    if (y.cwiseAbs().minCoeff() >= floor) return y;
  }
}

RealInstance healthy_instance(Index m, Index n, std::uint64_t seed, double floor_ratio = 0.05) {
  for (std::uint64_t s = seed;; ++s) {
    RealInstance inst = gen_gaussian<Real>(m, n, s);
    if (inst.b.minCoeff() >= floor_ratio * inst.b.maxCoeff()) return inst;
  }
}

void suite_gradcheck(const VerifyOptions& opt, CheckAccumulator& acc) {
  std::mt19937_64 rng(opt.seed);
  double max_grad_err = 0.0;
  double max_step_err = 0.0;
  for (int s = 0; s < opt.samples; ++s) {
    const Index n = 2 + static_cast<Index>(rng() % 8);
    const Index m = n + 1 + static_cast<Index>(rng() % 12);
    const RealInstance inst = gen_gaussian<Real>(m, n, rng());
    const ColumnSpaceProjector<Real> pa(inst.A);
    const MagnitudeProjector pb(inst.b);
    const RealVec y = nonzero_point(m, rng, 1e-2);
    const RealVec grad = rrr_objective_gradient(y, pa, pb);
    const RealVec fd = finite_difference_gradient(y, pa, pb, 1e-6);
    max_grad_err = std::max(
        max_grad_err,
        (grad - fd).cwiseAbs().maxCoeff() / (1.0 + grad.cwiseAbs().maxCoeff()));
    for (const double beta : {0.5, 1.0, 1.8})
      max_step_err = std::max(max_step_err,
                              (rrr_step(y, beta, pa, pb) - (y - beta * grad)).norm() /
                                  std::max(1.0, y.norm()));
  }
  acc.add("gradient_matches_finite_differences", max_grad_err <= 1e-5,
          {{"max_relative_error", max_grad_err}, {"bound", 1e-5}});
  acc.add("relaxed_step_is_the_gradient_step", max_step_err <= 1e-12,
          {{"max_relative_error", max_step_err}, {"bound", 1e-12}});
}

void suite_wirtinger(const VerifyOptions& opt, CheckAccumulator& acc) {
  const Index m = opt.m > 0 ? opt.m : 4;
  const Index n = opt.n > 0 ? opt.n : 2;
  std::mt19937_64 rng(opt.seed);
  const int instances = std::max(1, opt.samples / 10);
  double worst_numeric = 0.0;
  double best_asymmetry = 1e300;
  bool real_symmetric = true;
  for (int s = 0; s < instances; ++s) {
    const ComplexInstance inst = gen_gaussian<Complex>(m, n, rng());
    const ColumnSpaceProjector<Complex> pa(inst.A);
    const MagnitudeProjector pb(inst.b);
    const ComplexVec y = random_normal_vector<Complex>(m, rng);
    double largest_pair_gap = 0.0;
    for (Index i = 0; i < m; ++i)
      for (Index k = i + 1; k < m; ++k) {
        const WirtingerPair pair = wirtinger_asymmetry(y, i, k, pa, pb);
        const Complex nf = wirtinger_numerical(y, i, k, pa, pb);
        const Complex ns = wirtinger_numerical(y, k, i, pa, pb);
        worst_numeric = std::max(
            worst_numeric, std::abs(pair.forward - nf) / (1.0 + std::abs(pair.forward)));
        worst_numeric = std::max(
            worst_numeric, std::abs(pair.swapped - ns) / (1.0 + std::abs(pair.swapped)));
        largest_pair_gap = std::max(largest_pair_gap, std::abs(pair.forward - pair.swapped));
      }
    best_asymmetry = std::min(best_asymmetry, largest_pair_gap);

    const RealInstance rinst = gen_gaussian<Real>(m, n, rng());
    const ColumnSpaceProjector<Real> rpa(rinst.A);
    const MagnitudeProjector rpb(rinst.b);
    const RealVec ry = nonzero_point(m, rng, 1e-3);
    const WirtingerPair rpair = wirtinger_asymmetry(ry, 0, m - 1, rpa, rpb);
    real_symmetric = real_symmetric && std::abs(rpair.forward - rpair.swapped) <= 1e-10 &&
                     !rpair.asymmetric;
  }
  acc.add("closed_forms_match_numerical_wirtinger", worst_numeric <= 1e-6,
          {{"max_relative_error", worst_numeric}, {"bound", 1e-6}});
  acc.add("complex_mixed_derivatives_asymmetric", best_asymmetry >= 1e-6,
          {{"min_over_instances_of_largest_pair_gap", best_asymmetry}, {"bound", 1e-6}});
  acc.add("real_mixed_derivatives_symmetric", real_symmetric, json::object());
}

void suite_solutions(const VerifyOptions& opt, CheckAccumulator& acc) {
  std::mt19937_64 rng(opt.seed);
  bool constructed_ok = true;
  bool agreement = true;
  int tested_points = 0;
  for (int s = 0; s < std::max(1, opt.samples / 20); ++s) {
    const Index n = 3 + static_cast<Index>(rng() % 5);
    const Index m = n + 2 + static_cast<Index>(rng() % 10);
    const RealInstance inst = gen_gaussian<Real>(m, n, rng());
    const ColumnSpaceProjector<Real> pa(inst.A);
    const MagnitudeProjector pb(inst.b);
    const double tol = 1e-9 * inst.b.norm();
    const RealVec y_tilde = inst.A * *inst.x0;
    for (int t = 0; t < 10; ++t) {
      const SolutionWitness witness = make_solution(pa, y_tilde, rng);
      constructed_ok = constructed_ok && witness.residual <= 1e-10 * (1.0 + inst.b.norm()) &&
                       check_solution_membership(witness.y, pa, inst.b, tol).is_solution;
    }
    for (int t = 0; t < 50; ++t) {
      const RealVec y = random_normal_vector<Real>(m, rng);
      const bool direct = feasibility_gap(y, pa, pb) <= tol;
      const bool cased = check_solution_membership(y, pa, inst.b, tol).is_solution;
      agreement = agreement && (direct == cased);
      ++tested_points;
    }
  }
  // the sharp case-3 window on the 2x1 hand instance
  RealMat A(2, 1);
  A << 1.0, 1.0;
  RealVec b(2);
  b << 1.0, 1.0;
  const ColumnSpaceProjector<Real> pa(A);
  const double tol = 1e-9 * b.norm();
  const auto member = [&](double c) {
    RealVec y(2);
    y << 1.0 + c, 1.0 - c;
    return check_solution_membership(y, pa, b, tol).is_solution;
  };
  const bool window_ok = member(0.5) && member(-0.999) && !member(1.0 + 1e-9) && !member(2.0);
  acc.add("constructed_solutions_verify", constructed_ok, json::object());
  acc.add("membership_agrees_with_direct_test", agreement,
          {{"points_tested", tested_points}});
  acc.add("case3_window_sharp_on_hand_instance", window_ok, json::object());
}

void suite_convexity(const VerifyOptions& opt, CheckAccumulator& acc) {
  std::mt19937_64 rng(opt.seed);
  const Index m = opt.m > 0 ? opt.m : 12;
  const Index n = opt.n > 0 ? opt.n : 5;
  const RealInstance inst = healthy_instance(m, n, opt.seed + 1000);
  const ColumnSpaceProjector<Real> pa(inst.A);
  const MagnitudeProjector pb(inst.b);
  const RealVec y_tilde = inst.A * *inst.x0;
  RealVec w = complement(pa, random_normal_vector<Real>(m, rng));
  if (w.norm() > 0.0) w *= 0.2 * inst.b.minCoeff() / w.norm();
  const RealVec y0 = y_tilde + w;
  const ConvexityReport report = local_convexity_report(y0, pa, pb, opt.samples, rng);
  acc.add("gradient_identity_in_ball", report.gradient_identity_ok,
          {{"max_error", report.gradient_identity_max_err}, {"d", report.d}});
  acc.add("monotone_gradient_on_ball", report.ball_margin_min >= 0.0,
          {{"min_margin", report.ball_margin_min}});
  acc.add("unit_strong_convexity_on_column_space",
          report.column_pairs_available && report.column_margin_max_dev <= 1e-10,
          {{"max_deviation", report.column_margin_max_dev}});
  acc.add("unit_relaxation_fixes_in_one_step", report.one_step_ok, json::object());
  acc.add("relaxations_contract_in_ball", report.contraction_ok, json::object());

  // zero-coordinate solution: the ball is empty and the report says so
  RealMat A(2, 1);
  A << 1.0, 0.0;
  RealVec b(2);
  b << 1.0, 0.0;
  const ColumnSpaceProjector<Real> degenerate_pa(A);
  const MagnitudeProjector degenerate_pb(b);
  RealVec degenerate_y0(2);
  degenerate_y0 << 1.0, 0.0;
  bool diagnostic_ok = false;
  try {
    local_convexity_report(degenerate_y0, degenerate_pa, degenerate_pb, 4, rng);
  } catch (const std::domain_error& e) {
    diagnostic_ok = std::string(e.what()).find("ball is empty") != std::string::npos;
  }
  acc.add("zero_coordinate_solution_diagnosed", diagnostic_ok, json::object());
}

void suite_stability(const VerifyOptions& opt, CheckAccumulator& acc) {
  std::mt19937_64 rng(opt.seed);
  const Index m = opt.m > 0 ? opt.m : 14;
  const Index n = opt.n > 0 ? opt.n : 6;
  const RealInstance inst = healthy_instance(m, n, opt.seed + 2000);
  const ColumnSpaceProjector<Real> pa(inst.A);
  const RealVec y_tilde = inst.A * *inst.x0;
  std::mt19937_64 wrng(opt.seed + 1);
  const SolutionWitness witness = make_solution(pa, y_tilde, wrng, 0.5);
  bool validated = true;
  bool tight = true;
  for (const double delta : {1e-8, 1e-6, 1e-4}) {
    RealVec dir = pa(random_normal_vector<Real>(m, rng));
    dir /= dir.norm();
    const RealVec y = witness.y + delta * dir;
    const StabilityCertificate cert = stability_certificate(y, inst, pa);
    validated = validated && cert.validated &&
                cert.distance <= cert.bound + 1e-12 * (1.0 + y.norm());
    tight = tight && cert.tight_bound_applicable && cert.tight_bound_ok;
  }
  bool far_fails_gracefully = true;
  for (int t = 0; t < 5; ++t) {
    const RealVec y = 5.0 * random_normal_vector<Real>(m, rng);
    try {
      const StabilityCertificate cert = stability_certificate(y, inst, pa);
      far_fails_gracefully =
          far_fails_gracefully && !cert.validated && !cert.failure_reason.empty();
    } catch (const std::exception&) {
      far_fails_gracefully = false;  // failure must be reported, not thrown
    }
  }
  acc.add("perturbed_solutions_certify", validated, json::object());
  acc.add("tight_bound_holds_when_applicable", tight, json::object());
  acc.add("far_points_fail_without_crashing", far_fails_gracefully, json::object());
}

void suite_ray(const VerifyOptions& opt, CheckAccumulator& acc) {
  std::mt19937_64 rng(opt.seed);
  const Index m = opt.m > 0 ? opt.m : 12;
  const Index n = opt.n > 0 ? opt.n : 5;
  const RealInstance inst = gen_gaussian<Real>(m, n, opt.seed + 3000);
  const ColumnSpaceProjector<Real> pa(inst.A);
  const MagnitudeProjector pb(inst.b);
  double worst_quad = 0.0;
  double worst_resid = 0.0;
  bool admissible_ok = true;
  bool escapes = true;
  for (int s = 0; s < opt.samples; ++s) {
    const RealVec y = nonzero_point(m, rng, 1e-6);
    const RealVec dir = nonzero_point(m, rng, 1e-6);
    double lock = 0.0;
    for (Index i = 0; i < m; ++i) lock = std::max(lock, std::abs(y[i] / dir[i]));
    const std::array<Real, 4> grid = {lock * 1.5, lock * 2.25, lock * 3.5, lock * 5.0};
    const RayFit fit = ray_probe(y, dir, grid, pa, pb);
    worst_quad = std::max(worst_quad,
                          std::abs(fit.coeffs[2] - fit.quadratic_coeff_expected) /
                              std::max(1e-300, fit.quadratic_coeff_expected));
    worst_resid = std::max(
        worst_resid, *fit.residual_at_check / std::max(1.0, std::abs(*fit.value_at_check)));

    if (feasibility_gap(y, pa, pb) > 1e-6) {
      admissible_ok = admissible_ok && grad_direction_admissible(y, pa, pb);
      const RealVec g = rrr_objective_gradient(y, pa, pb);
      bool nonzero = true;
      for (Index i = 0; i < m; ++i) nonzero = nonzero && g[i] != 0.0;
      if (nonzero) {
        double glock = 0.0;
        for (Index i = 0; i < m; ++i) glock = std::max(glock, std::abs(y[i] / g[i]));
        double best = -1e300;
        for (const double mult : {4.0, 16.0, 64.0})
          best = std::max(best, rrr_objective(RealVec(y - mult * glock * g), pa, pb));
        escapes = escapes && best > 0.0;
      }
    }
  }
  acc.add("quadratic_coefficient_matches_closed_form", worst_quad <= 1e-8,
          {{"max_relative_error", worst_quad}, {"bound", 1e-8}});
  acc.add("fourth_point_fit_residual_small", worst_resid <= 1e-9,
          {{"max_relative_residual", worst_resid}, {"bound", 1e-9}});
  acc.add("gradient_directions_admissible", admissible_ok, json::object());
  acc.add("objective_escapes_to_positive_along_gradient", escapes, json::object());
}

int cmd_verify(const VerifyOptions& opt) {
  CheckAccumulator acc;
  if (opt.suite == "gradcheck")
    suite_gradcheck(opt, acc);
  else if (opt.suite == "wirtinger")
    suite_wirtinger(opt, acc);
  else if (opt.suite == "solutions")
    suite_solutions(opt, acc);
  else if (opt.suite == "convexity")
    suite_convexity(opt, acc);
  else if (opt.suite == "stability")
    suite_stability(opt, acc);
  else if (opt.suite == "ray")
    suite_ray(opt, acc);

  json report{{"schema", 1},
              {"suite", opt.suite},
              {"seed", opt.seed},
              {"samples", opt.samples},
              {"passed", acc.all_passed},
              {"checks", acc.checks}};
  std::cout << report.dump(2) << '\n';
  if (!opt.out.empty()) write_text(opt.out, report.dump(2) + "\n");
  if (!acc.all_passed) {
    std::cerr << "verification failed: " << acc.first_failure << '\n';
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// fig1

struct Fig1Options {
  std::uint64_t seed = 0;
  std::string prefix = "fig1";
  long max_iters = 100000;
  Real tol = 1e-9;
};

int cmd_fig1(const Fig1Options& opt) {
  const RealInstance inst = gen_gaussian<Real>(80, 50, opt.seed);
  json runs = json::array();
  for (const double beta : {0.5, 1.0}) {
    RunConfig cfg;
    cfg.algorithm = Algorithm::RRR;
    cfg.beta = beta;
    cfg.max_iters = opt.max_iters;
    cfg.solve_tol = opt.tol;
    cfg.trace_every = 1;
    cfg.seed = opt.seed;  // both relaxations share the same random init
    const RunResult<Real> result = run(inst, cfg);
    const std::string trace_path =
        opt.prefix + (beta == 0.5 ? "_beta05.csv" : "_beta10.csv");
    std::ofstream out(trace_path);
    if (!out) throw std::runtime_error("cannot open '" + trace_path + "' for writing");
    result.trace.write_csv(out);
    const TraceRow& last = result.trace.rows().back();
    runs.push_back({{"beta", beta},
                    {"status", to_string(result.status)},
                    {"iters", result.state.t},
                    {"final_feas_gap", last.feas_gap},
                    {"final_signal_error",
                     last.signal_error ? json(*last.signal_error) : json(nullptr)},
                    {"f_R_sign_changes", result.trace.objective_sign_changes()},
                    {"trace", trace_path}});
  }
  json summary{{"schema", 1}, {"seed", opt.seed}, {"m", 80}, {"n", 50}, {"runs", runs}};
  std::cout << summary.dump(2) << '\n';
  write_text(opt.prefix + "_summary.json", summary.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phase-retrieval feasibility toolkit"};
  app.require_subcommand(1);
  const std::uint64_t seed_fallback = default_seed();

  GenerateOptions gen;
  gen.seed = seed_fallback;
  CLI::App* generate = app.add_subcommand("generate", "generate a problem instance");
  generate->add_option("--family", gen.family, "instance family")
      ->check(CLI::IsMember({"gaussian", "dft", "sparse"}))
      ->capture_default_str();
  generate->add_option("--m", gen.m, "number of measurements (gaussian)");
  generate->add_option("--n", gen.n, "signal length")->required();
  generate->add_option("--field", gen.field, "scalar field (gaussian)")
      ->check(CLI::IsMember({"real", "complex"}))
      ->capture_default_str();
  generate->add_option("--oversample", gen.oversample, "oversampling factor (dft)")
      ->capture_default_str();
  generate->add_option("--k", gen.k, "sparsity level (sparse)")->capture_default_str();
  generate->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
  generate->add_option("--out", gen.out, "output instance file")->required();

  SolveOptions solve;
  solve.seed = seed_fallback;
  CLI::App* solve_cmd = app.add_subcommand("solve", "run a projection algorithm");
  solve_cmd->add_option("--inst", solve.instance_path, "instance file")
      ->required()
      ->check(CLI::ExistingFile);
  solve_cmd->add_option("--alg", solve.algorithm, "algorithm")
      ->check(CLI::IsMember({"gs", "dr", "hio", "rrr", "raar"}))
      ->capture_default_str();
  solve_cmd->add_option("--beta", solve.beta, "relaxation parameter")->capture_default_str();
  solve_cmd->add_option("--max-iters", solve.max_iters, "iteration budget")
      ->capture_default_str();
  solve_cmd->add_option("--tol", solve.tol, "relative feasibility-gap tolerance")
      ->capture_default_str();
  solve_cmd->add_option("--trace-every", solve.trace_every, "trace cadence")
      ->capture_default_str();
  solve_cmd->add_option("--seed", solve.seed, "initialization seed")->capture_default_str();
  solve_cmd->add_option("--trace", solve.trace_path, "trace CSV output path");
  solve_cmd->add_option("--summary", solve.summary_path, "summary JSON output path");

  VerifyOptions verify;
  verify.seed = seed_fallback;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run a verifier suite");
  verify_cmd->add_option("--suite", verify.suite, "which suite")
      ->check(CLI::IsMember({"solutions", "convexity", "stability", "ray", "wirtinger",
                             "gradcheck"}))
      ->required();
  verify_cmd->add_option("--samples", verify.samples, "sample count")->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "suite seed")->capture_default_str();
  verify_cmd->add_option("--m", verify.m, "measurement count override");
  verify_cmd->add_option("--n", verify.n, "signal length override");
  verify_cmd->add_option("--out", verify.out, "report JSON output path");

  Fig1Options fig1;
  fig1.seed = seed_fallback;
  CLI::App* fig1_cmd =
      app.add_subcommand("fig1", "recovery experiment: two relaxations, shared init");
  fig1_cmd->add_option("--seed", fig1.seed, "instance and init seed")->capture_default_str();
  fig1_cmd->add_option("--out-prefix", fig1.prefix, "output path prefix")
      ->capture_default_str();
  fig1_cmd->add_option("--max-iters", fig1.max_iters, "iteration budget")
      ->capture_default_str();
  fig1_cmd->add_option("--tol", fig1.tol, "relative feasibility-gap tolerance")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << '\n';
    return 2;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*solve_cmd) return cmd_solve(solve);
    if (*verify_cmd) return cmd_verify(verify);
    if (*fig1_cmd) return cmd_fig1(fig1);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
