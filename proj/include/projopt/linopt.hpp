#pragma once

#include <optional>

#include "projopt/parallel.hpp"
#include "projopt/sets.hpp"
#include "projopt/vec.hpp"

namespace projopt {

/// Result of approximating argmax <c, x> over a set by the single projection
/// x_eta = P(x0 + eta*c).
struct LinOptResult {
  Vector x_eta;
  double objective = 0.0;  // <c, x_eta>
  double eta = 0.0;
  /// Certified upper bound on the optimality gap: the reference form
  /// (||x*-x0||^2 - ||x_eta-x0||^2)/(2 eta) when a reference maximizer was
  /// supplied, otherwise diam^2/(2 eta).
  double gap_bound = 0.0;
  bool used_reference_bound = false;
  /// diam^2/(2 eta); present when x0 is feasible (the form's hypothesis).
  std::optional<double> diam_bound;
  /// <c, x*> - <c, x_eta> when a reference maximizer was supplied.
  std::optional<double> exact_gap;
};

/// Objective values (and distances to a reference point) along an increasing
/// eta schedule.
struct EtaSweep {
  Vector etas;
  Vector objectives;
  std::optional<std::vector<double>> distances_to_ref;
};

LinOptResult solve_single_projection(const ConvexSetSpec& set, const Vector& c,
                                     const Vector& x0, double eta,
                                     const std::optional<Vector>& reference = {},
                                     Exec exec = Exec::Auto);

/// Step size guaranteeing an objective gap of at most epsilon for any c when
/// x0 is in the set: diam^2/(2 epsilon).  When x0 = 0 is supplied and the set
/// is the elliptope, uses the tighter norm bound n^2/(2 epsilon).
double eta_for_epsilon(const ConvexSetSpec& set, double epsilon,
                       const std::optional<Vector>& x0 = {});

EtaSweep eta_sweep(const ConvexSetSpec& set, const Vector& c, const Vector& x0,
                   const Vector& eta_schedule,
                   const std::optional<Vector>& reference = {},
                   Exec exec = Exec::Auto);

}  // namespace projopt
