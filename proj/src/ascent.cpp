#include "projopt/ascent.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "projopt/errors.hpp"

namespace projopt {

SubgradientOracle SubgradientOracle::linear(Vector c) {
  require_finite(c, "c");
  SubgradientOracle o;
  o.name = "linear";
  o.eval = [c](const Vector& x) { return dot(c, x); };
  o.subgrad = [c](const Vector& x) {
    check_dim(x, c.size(), "x");
    return c;
  };
  return o;
}

SubgradientOracle SubgradientOracle::half_squared_norm() {
  SubgradientOracle o;
  o.name = "half_squared_norm";
  o.eval = [](const Vector& x) { return 0.5 * dot(x, x); };
  o.subgrad = [](const Vector& x) { return x; };
  return o;
}

SubgradientOracle SubgradientOracle::max_of_linear(std::vector<Vector> cs,
                                                   Vector bs) {
  if (cs.empty()) throw ValidationError("max_of_linear needs at least one piece");
  if (bs.size() != cs.size())
    throw ValidationError("max_of_linear: one offset per linear piece required");
  for (const Vector& c : cs) {
    require_finite(c, "c");
    check_dim(c, cs.front().size(), "c");
  }
  require_finite(bs, "b");

  auto piece_index = [cs, bs](const Vector& x) {
    std::size_t best = 0;
    double best_val = dot(cs[0], x) + bs[0];
    for (std::size_t i = 1; i < cs.size(); ++i) {
      const double v = dot(cs[i], x) + bs[i];
      if (v > best_val) {  // ties keep the lowest index
        best_val = v;
        best = i;
      }
    }
    return std::pair<std::size_t, double>(best, best_val);
  };

  SubgradientOracle o;
  o.name = "max_of_linear";
  o.eval = [piece_index](const Vector& x) { return piece_index(x).second; };
  o.subgrad = [piece_index, cs](const Vector& x) {
    return cs[piece_index(x).first];
  };
  return o;
}

StepSchedule StepSchedule::constant(double eta) {
  return sequence(Vector{eta});
}

StepSchedule StepSchedule::sequence(Vector etas) {
  if (etas.empty()) throw ValidationError("step schedule is empty");
  for (double e : etas)
    if (!(e > 0.0) || !std::isfinite(e))
      throw ValidationError("step sizes must be positive and finite");
  StepSchedule s;
  s.etas_ = std::move(etas);
  return s;
}

double StepSchedule::at(std::int64_t k) const {
  if (k < 0) throw ValidationError("step index must be nonnegative");
  const auto n = static_cast<std::int64_t>(etas_.size());
  return etas_[k < n ? k : n - 1];
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::MaxIter: return "max_iter";
    case StopReason::StepNormTol: return "step_norm_tol";
    case StopReason::GapTol: return "gap_tol";
  }
  return "unknown";
}

namespace {

void check_start(const ConvexSetSpec& set, const Vector& x0, Exec exec) {
  check_dim(x0, static_cast<std::size_t>(set.ambient_dim()), "x0");
  require_finite(x0, "x0");
  const double r = membership_residual(set, x0, exec);
  if (r > kFeasTol)
    throw ValidationError("x0 is not feasible (residual " + std::to_string(r) +
                          ")");
}

void check_options(const AscentOptions& opts) {
  if (opts.max_iter < 1) throw ValidationError("max_iter must be at least 1");
  if (!(opts.step_norm_tol >= 0.0))
    throw ValidationError("step_norm_tol must be nonnegative");
}

}  // namespace

IterateTrace pga_run(const SubgradientOracle& oracle, const ConvexSetSpec& set,
                     const Vector& x0, const StepSchedule& steps,
                     const AscentOptions& opts) {
  check_start(set, x0, opts.exec);
  check_options(opts);

  IterateTrace trace;
  trace.engine = "pga";
  Vector x = x0;
  if (opts.store_points) trace.points.push_back(x);

  trace.terminated_reason = StopReason::MaxIter;
  for (std::int64_t k = 0; k < opts.max_iter; ++k) {
    const double fk = oracle.eval(x);
    Vector g = oracle.subgrad(x);
    check_dim(g, static_cast<std::size_t>(set.ambient_dim()), "subgradient");
    require_finite(g, "subgradient");
    const double eta = steps.at(k);

    Vector x_next = project(set, add_scaled(x, eta, g), opts.exec);
    const Vector v = sub(x_next, x);

    IterateRecord rec;
    rec.k = k;
    rec.f = fk;
    rec.eta = eta;
    rec.step_norm = std::sqrt(dot(v, v));
    rec.g_dot_step = dot(g, v);
    rec.fw_gap = fw_gap(set, x, g, opts.exec);
    trace.records.push_back(rec);

    x = std::move(x_next);
    if (opts.store_points) trace.points.push_back(x);
    if (rec.step_norm <= opts.step_norm_tol) {
      trace.terminated_reason = StopReason::StepNormTol;
      break;
    }
  }
  trace.x_final = std::move(x);
  trace.f_final = oracle.eval(trace.x_final);
  return trace;
}

IterateTrace cgu_run(const SubgradientOracle& oracle, const ConvexSetSpec& set,
                     const Vector& x0, bool anchor_tiebreak,
                     const AscentOptions& opts) {
  check_start(set, x0, opts.exec);
  check_options(opts);

  IterateTrace trace;
  trace.engine = "cgu";
  Vector x = x0;
  if (opts.store_points) trace.points.push_back(x);

  const Vector origin(x.size(), 0.0);
  trace.terminated_reason = StopReason::MaxIter;
  for (std::int64_t k = 0; k < opts.max_iter; ++k) {
    const double fk = oracle.eval(x);
    Vector g = oracle.subgrad(x);
    check_dim(g, static_cast<std::size_t>(set.ambient_dim()), "gradient");
    require_finite(g, "gradient");

    IterateRecord rec;
    rec.k = k;
    rec.f = fk;
    rec.eta = 1.0;

    if (is_zero(g)) {
      // Vanished gradient: x maximizes the local linearization, so the
      // Frank-Wolfe gap is exactly zero.
      trace.records.push_back(rec);
      trace.terminated_reason = StopReason::GapTol;
      break;
    }

    LmoResult next = lmo(set, g, anchor_tiebreak ? x : origin, opts.exec);
    const Vector v = sub(next.x, x);
    rec.step_norm = std::sqrt(dot(v, v));
    rec.g_dot_step = dot(g, v);
    rec.fw_gap =
        next.approximate ? std::max(0.0, rec.g_dot_step) : rec.g_dot_step;
    trace.records.push_back(rec);

    x = std::move(next.x);
    if (opts.store_points) trace.points.push_back(x);
    if (rec.step_norm <= opts.step_norm_tol) {
      trace.terminated_reason = StopReason::StepNormTol;
      break;
    }
  }
  trace.x_final = std::move(x);
  trace.f_final = oracle.eval(trace.x_final);
  return trace;
}

IterateTrace ilo_run(const ConvexSetSpec& set, const Vector& x0,
                     bool anchor_tiebreak, const AscentOptions& opts) {
  check_start(set, x0, opts.exec);
  check_options(opts);

  IterateTrace trace;
  trace.engine = "ilo";
  Vector x = x0;
  if (opts.store_points) trace.points.push_back(x);

  // The update x_{k+1} = argmax <x_k, z> is norm ascent; the zero start is a
  // fixed point of it (every z ties), so report stationarity immediately.
  if (is_zero(x)) {
    trace.x_final = x;
    trace.f_final = 0.0;
    trace.terminated_reason = StopReason::GapTol;
    trace.stationary_at_zero = true;
    return trace;
  }

  const Vector origin(x.size(), 0.0);
  trace.terminated_reason = StopReason::MaxIter;
  for (std::int64_t k = 0; k < opts.max_iter; ++k) {
    IterateRecord rec;
    rec.k = k;
    rec.f = 0.5 * dot(x, x);
    rec.eta = 1.0;

    LmoResult next = lmo(set, x, anchor_tiebreak ? x : origin, opts.exec);
    const Vector v = sub(next.x, x);
    rec.step_norm = std::sqrt(dot(v, v));
    rec.g_dot_step = dot(x, v);
    rec.fw_gap =
        next.approximate ? std::max(0.0, rec.g_dot_step) : rec.g_dot_step;
    trace.records.push_back(rec);

    x = std::move(next.x);
    if (opts.store_points) trace.points.push_back(x);
    if (rec.step_norm <= opts.step_norm_tol) {
      trace.terminated_reason = StopReason::StepNormTol;
      break;
    }
  }
  trace.x_final = std::move(x);
  trace.f_final = 0.5 * dot(trace.x_final, trace.x_final);
  return trace;
}

StationarityReport stationarity_report(const SubgradientOracle& oracle,
                                       const ConvexSetSpec& set,
                                       const IterateTrace& trace,
                                       double gap_tol, Exec exec) {
  if (!(gap_tol >= 0.0)) throw ValidationError("gap_tol must be nonnegative");
  StationarityReport rep;
  const Vector g = oracle.subgrad(trace.x_final);
  rep.fw_gap = fw_gap(set, trace.x_final, g, exec);
  rep.feasibility_residual = membership_residual(set, trace.x_final, exec);
  const std::size_t tail = std::min<std::size_t>(trace.records.size(), 10);
  for (std::size_t i = trace.records.size() - tail; i < trace.records.size();
       ++i)
    rep.recent_step_norm =
        std::max(rep.recent_step_norm, trace.records[i].step_norm);
  rep.certified = rep.fw_gap <= gap_tol;
  return rep;
}

}  // namespace projopt
