#include "projopt/linopt.hpp"

#include <cmath>

#include "projopt/errors.hpp"

namespace projopt {

LinOptResult solve_single_projection(const ConvexSetSpec& set, const Vector& c,
                                     const Vector& x0, double eta,
                                     const std::optional<Vector>& reference,
                                     Exec exec) {
  check_dim(c, static_cast<std::size_t>(set.ambient_dim()), "c");
  check_dim(x0, static_cast<std::size_t>(set.ambient_dim()), "x0");
  require_finite(c, "c");
  require_finite(x0, "x0");
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw ValidationError("eta must be positive and finite");
  if (reference) {
    check_dim(*reference, static_cast<std::size_t>(set.ambient_dim()), "reference");
    require_finite(*reference, "reference");
  }

  LinOptResult res;
  res.eta = eta;
  res.x_eta = project(set, add_scaled(x0, eta, c), exec);
  res.objective = dot(c, res.x_eta);

  const double d = diameter(set);
  if (membership_residual(set, x0, exec) <= kFeasTol)
    res.diam_bound = d * d / (2.0 * eta);
  if (reference) {
    res.exact_gap = dot(c, *reference) - res.objective;
    const double dr = dist2(*reference, x0);
    const double dx = dist2(res.x_eta, x0);
    res.gap_bound = (dr * dr - dx * dx) / (2.0 * eta);
    res.used_reference_bound = true;
  } else {
    res.gap_bound = d * d / (2.0 * eta);
  }
  return res;
}

double eta_for_epsilon(const ConvexSetSpec& set, double epsilon,
                       const std::optional<Vector>& x0) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw ValidationError("epsilon must be positive and finite");
  if (x0) check_dim(*x0, static_cast<std::size_t>(set.ambient_dim()), "x0");
  // From the origin every elliptope point X satisfies ||X||_F^2 <= n^2, which
  // beats the squared diameter (2n)^2.
  if (set.kind == ConvexSetSpec::Kind::Elliptope && x0 && is_zero(*x0)) {
    const double n = static_cast<double>(set.matrix_order());
    return n * n / (2.0 * epsilon);
  }
  const double d = diameter(set);
  return d * d / (2.0 * epsilon);
}

EtaSweep eta_sweep(const ConvexSetSpec& set, const Vector& c, const Vector& x0,
                   const Vector& eta_schedule,
                   const std::optional<Vector>& reference, Exec exec) {
  if (eta_schedule.empty()) throw ValidationError("eta schedule is empty");
  for (std::size_t i = 0; i < eta_schedule.size(); ++i) {
    if (!(eta_schedule[i] > 0.0) || !std::isfinite(eta_schedule[i]))
      throw ValidationError("eta schedule entries must be positive and finite");
    if (i > 0 && !(eta_schedule[i] > eta_schedule[i - 1]))
      throw ValidationError("eta schedule must be strictly increasing");
  }

  EtaSweep sweep;
  sweep.etas = eta_schedule;
  sweep.objectives.reserve(eta_schedule.size());
  if (reference) sweep.distances_to_ref.emplace();
  for (double eta : eta_schedule) {
    LinOptResult r = solve_single_projection(set, c, x0, eta, {}, exec);
    sweep.objectives.push_back(r.objective);
    if (reference)
      sweep.distances_to_ref->push_back(dist2(r.x_eta, *reference));
  }
  return sweep;
}

}  // namespace projopt
