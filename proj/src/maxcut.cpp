#include "projopt/maxcut.hpp"

#include <chrono>
#include <cmath>

#include "projopt/eig.hpp"
#include "projopt/errors.hpp"
#include "projopt/rng.hpp"

namespace projopt {

const char* to_string(SdpSolver s) {
  return s == SdpSolver::Dykstra ? "dykstra" : "newton";
}

const char* to_string(RepairKind r) {
  return r == RepairKind::GramNormalize ? "gram_normalize" : "shrink";
}

SdpSolver sdp_solver_from_string(const std::string& s) {
  if (s == "dykstra") return SdpSolver::Dykstra;
  if (s == "newton") return SdpSolver::Newton;
  throw ValidationError("unknown solver \"" + s +
                        "\" (expected dykstra or newton)");
}

RepairKind repair_from_string(const std::string& s) {
  if (s == "gram_normalize") return RepairKind::GramNormalize;
  if (s == "shrink") return RepairKind::Shrink;
  throw ValidationError("unknown repair \"" + s +
                        "\" (expected gram_normalize or shrink)");
}

SdpRelaxResult sdp_relax(const Graph& g, double eta, SdpSolver solver,
                         double tol, Exec exec) {
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw ValidationError("eta must be positive and finite");
  if (!(tol > 0.0)) throw ValidationError("tol must be positive");

  // Maximizing the cut relaxation means maximizing <M, X> with M = -W.
  SymMatrix m_neg = -1.0 * g.adjacency();
  const SymMatrix scaled = eta * m_neg;
  const NcmResult sol = solver == SdpSolver::Dykstra
                            ? project_elliptope_dykstra(scaled, tol, 100000, exec)
                            : project_elliptope_newton(scaled, tol, 200, 1e-2, exec);

  SdpRelaxResult res;
  res.x = sol.x;
  res.sdp_objective = frob_dot(m_neg, res.x);
  const double n = static_cast<double>(g.n);
  res.gap_bound = n * n / (2.0 * eta);
  res.converged = sol.converged;
  res.iterations = sol.iterations;
  return res;
}

namespace {

/// Hyperplane cut for one trial: Gaussian direction from the trial's own
/// substream, then side_i = sign(<v_i, r>) with sign(0) = +1.
std::vector<int> round_one_trial(const Matrix& factor, std::uint64_t seed,
                                 int trial) {
  SubstreamRng rng(seed, static_cast<std::uint64_t>(trial));
  const int n = factor.rows, k = factor.cols;
  Vector r(k);
  for (double& x : r) x = rng.normal();
  std::vector<int> side(n);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < k; ++j) s += factor(i, j) * r[j];
    side[i] = s < 0.0 ? -1 : 1;
  }
  return side;
}

}  // namespace

RoundingResult gw_round(const Matrix& factor, const Graph& g, int trials,
                        std::uint64_t seed, Exec exec) {
  if (factor.rows != g.n)
    throw DimensionError("factor has " + std::to_string(factor.rows) +
                         " rows for a graph with " + std::to_string(g.n) +
                         " vertices");
  if (factor.cols < 1) throw ValidationError("factor needs at least one column");
  if (trials < 1) throw ValidationError("trials must be at least 1");

  RoundingResult res;
  res.trial_values.assign(trials, 0.0);

  // Trials are independent; each one derives its randomness from its own
  // substream, so the parallel schedule cannot change any value.
  const double flops = static_cast<double>(trials) *
                       (static_cast<double>(factor.rows) * factor.cols +
                        static_cast<double>(g.edges.size()));
  const bool par = kern::use_parallel(exec, flops);
#pragma omp parallel for schedule(static) if (par)
  for (int t = 0; t < trials; ++t)
    res.trial_values[t] = cut_value(g, round_one_trial(factor, seed, t));

  // Aggregation in trial order; ties keep the earliest trial.
  int best_idx = 0;
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    sum += res.trial_values[t];
    if (res.trial_values[t] > res.trial_values[best_idx]) best_idx = t;
  }
  res.best_cut = res.trial_values[best_idx];
  res.mean_cut = sum / trials;
  res.best_side = round_one_trial(factor, seed, best_idx);
  return res;
}

MaxCutReport run_pipeline(const Graph& g, double eta, SdpSolver solver,
                          int trials, std::uint64_t seed, RepairKind repair,
                          Exec exec) {
  const auto t0 = std::chrono::steady_clock::now();

  MaxCutReport rep;
  rep.n = g.n;
  rep.eta = eta;
  rep.solver = solver;
  rep.repair = repair;
  rep.trials = trials;
  rep.seed = seed;

  const SdpRelaxResult rel = sdp_relax(g, eta, solver, 1e-7, exec);
  rep.sdp_objective = rel.sdp_objective;
  rep.gap_bound = rel.gap_bound;
  rep.solver_converged = rel.converged;
  rep.solver_iterations = rel.iterations;

  const Matrix factor = repair == RepairKind::GramNormalize
                            ? gram_normalize(rel.x, 1e-10, exec)
                            : gram_factor(shrink_repair(rel.x, exec), 1e-10, exec);

  const RoundingResult rounded = gw_round(factor, g, trials, seed, exec);
  rep.best_cut = rounded.best_cut;
  rep.mean_cut = rounded.mean_cut;
  rep.best_side = rounded.best_side;
  rep.trial_values = rounded.trial_values;

  if (g.n <= 24) {
    const BruteForceCut exact = brute_force_maxcut(g);
    rep.brute_force_value = exact.value;
    if (exact.value > 0.0) rep.ratio_vs_optimum = rep.best_cut / exact.value;
  }

  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

}  // namespace projopt
