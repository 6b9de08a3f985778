#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "projopt/graph.hpp"
#include "projopt/ncm.hpp"
#include "projopt/parallel.hpp"

namespace projopt {

enum class SdpSolver { Dykstra, Newton };
enum class RepairKind { GramNormalize, Shrink };

const char* to_string(SdpSolver s);
const char* to_string(RepairKind r);
SdpSolver sdp_solver_from_string(const std::string& s);
RepairKind repair_from_string(const std::string& s);

/// Semidefinite relaxation of Max-Cut solved by one elliptope projection:
/// X = P(eta * M) with M = -W.  The optimality gap of <M, X> is certified by
/// n^2/(2 eta).
struct SdpRelaxResult {
  SymMatrix x{1};
  double sdp_objective = 0.0;  // <M, X>, Frobenius inner product
  double gap_bound = 0.0;      // n^2/(2 eta)
  bool converged = false;
  int iterations = 0;
};

SdpRelaxResult sdp_relax(const Graph& g, double eta,
                         SdpSolver solver = SdpSolver::Newton,
                         double tol = 1e-7, Exec exec = Exec::Auto);

/// Random-hyperplane rounding of a Gram factor (rows are the unit vectors of
/// the relaxation).  Deterministic given the seed: trial t draws its Gaussians
/// from an independent substream, side_i = sign(<v_i, r>) with sign(0) = +1,
/// and aggregation runs in trial order.
struct RoundingResult {
  std::vector<int> best_side;
  double best_cut = 0.0;
  double mean_cut = 0.0;
  Vector trial_values;
};

RoundingResult gw_round(const Matrix& factor, const Graph& g, int trials,
                        std::uint64_t seed, Exec exec = Exec::Auto);

struct MaxCutReport {
  int n = 0;
  double eta = 0.0;
  SdpSolver solver = SdpSolver::Newton;
  RepairKind repair = RepairKind::GramNormalize;
  int trials = 0;
  std::uint64_t seed = 0;
  double sdp_objective = 0.0;
  double gap_bound = 0.0;
  bool solver_converged = false;
  int solver_iterations = 0;
  double best_cut = 0.0;
  double mean_cut = 0.0;
  std::vector<int> best_side;
  Vector trial_values;
  /// Exact optimum and best_cut/optimum, filled for n <= 24 (ratio only when
  /// the optimum is positive).
  std::optional<double> brute_force_value;
  std::optional<double> ratio_vs_optimum;
  double wall_time_s = 0.0;
};

/// Full pipeline: relax, repair the solution to a feasible correlation
/// matrix, round, and (on desk-scale instances) compare with brute force.
MaxCutReport run_pipeline(const Graph& g, double eta = 4000.0,
                          SdpSolver solver = SdpSolver::Newton,
                          int trials = 100, std::uint64_t seed = 0,
                          RepairKind repair = RepairKind::GramNormalize,
                          Exec exec = Exec::Auto);

/// Base URL for benchmark-instance downloads: the PROJOPT_GSET_URL
/// environment variable when set, otherwise the public mirror.
std::string default_gset_base_url();

/// Ensures the named instance (G<number>) exists in cache_dir and returns its
/// path.  A cache miss downloads base_url + name over HTTP(S) and validates
/// that the payload parses as a graph before storing; a hit skips the network.
std::string fetch_gset(const std::string& name, const std::string& cache_dir,
                       const std::string& base_url = default_gset_base_url());

}  // namespace projopt
