#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "projopt/parallel.hpp"
#include "projopt/sets.hpp"
#include "projopt/vec.hpp"

namespace projopt {

/// Convex objective with a subgradient selection.  eval and subgrad must be
/// consistent: f(y) >= f(x) + <subgrad(x), y - x> for all x, y.
struct SubgradientOracle {
  std::function<double(const Vector&)> eval;
  std::function<Vector(const Vector&)> subgrad;
  std::string name;

  static SubgradientOracle linear(Vector c);
  static SubgradientOracle half_squared_norm();
  /// f(x) = max_i <c_i, x> + b_i.  The subgradient selection is the c_i of the
  /// lowest index attaining the max (exact comparison).
  static SubgradientOracle max_of_linear(std::vector<Vector> cs, Vector bs);
};

/// Step-size schedule.  A sequence schedule repeats its last value once
/// exhausted.
class StepSchedule {
 public:
  static StepSchedule constant(double eta);
  static StepSchedule sequence(Vector etas);
  double at(std::int64_t k) const;

 private:
  StepSchedule() = default;
  Vector etas_;
};

enum class StopReason { MaxIter, StepNormTol, GapTol };

const char* to_string(StopReason r);

/// One ascent iteration k: the state at x_k and the move to x_{k+1}.
struct IterateRecord {
  std::int64_t k = 0;
  double f = 0.0;          // f(x_k)
  double step_norm = 0.0;  // ||x_{k+1} - x_k||
  double eta = 0.0;
  double fw_gap = 0.0;     // Frank-Wolfe gap at x_k
  double g_dot_step = 0.0; // <g_k, x_{k+1} - x_k>
};

struct IterateTrace {
  std::vector<IterateRecord> records;
  Vector x_final;
  double f_final = 0.0;
  StopReason terminated_reason = StopReason::MaxIter;
  /// Set by the iterated linear optimization engine when it starts (and hence
  /// stays) at the zero point, which is a fixed point of its update.
  bool stationary_at_zero = false;
  std::string engine;
  /// Iterate sequence x_0, x_1, ..., x_final; filled only when requested.
  std::vector<Vector> points;
};

struct AscentOptions {
  std::int64_t max_iter = 100000;
  double step_norm_tol = 1e-9;
  bool store_points = false;
  Exec exec = Exec::Auto;
};

/// Projected gradient ascent x_{k+1} = P(x_k + eta_k g_k), g_k a subgradient
/// of f at x_k.  For convex f the objective values are nondecreasing.
IterateTrace pga_run(const SubgradientOracle& oracle, const ConvexSetSpec& set,
                     const Vector& x0, const StepSchedule& steps,
                     const AscentOptions& opts = {});

/// Conditional gradient with unit step: x_{k+1} = lmo(set, grad f(x_k)).
/// With anchor_tiebreak the maximizer closest to x_k is selected.
IterateTrace cgu_run(const SubgradientOracle& oracle, const ConvexSetSpec& set,
                     const Vector& x0, bool anchor_tiebreak = true,
                     const AscentOptions& opts = {});

/// Iterated linear optimization x_{k+1} = lmo(set, x_k), the conditional
/// gradient update for f(x) = ||x||^2/2.  Converges to a maximal-norm point.
IterateTrace ilo_run(const ConvexSetSpec& set, const Vector& x0,
                     bool anchor_tiebreak = true,
                     const AscentOptions& opts = {});

/// First-order stationarity evidence for the final iterate of a trace.
struct StationarityReport {
  double fw_gap = 0.0;
  double feasibility_residual = 0.0;
  double recent_step_norm = 0.0;  // max step norm over the last 10 records
  bool certified = false;  // fw_gap <= gap_tol
};

StationarityReport stationarity_report(const SubgradientOracle& oracle,
                                       const ConvexSetSpec& set,
                                       const IterateTrace& trace,
                                       double gap_tol = 1e-8,
                                       Exec exec = Exec::Auto);

}  // namespace projopt
