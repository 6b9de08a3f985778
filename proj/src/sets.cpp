#include "projopt/sets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "projopt/eig.hpp"
#include "projopt/errors.hpp"
#include "projopt/ncm.hpp"

namespace projopt {
namespace {

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_vec(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += fmt_num(v[i]);
  }
  return s;
}

void check_point(const ConvexSetSpec& set, const Vector& v, const char* what) {
  if (static_cast<int>(v.size()) != set.ambient_dim())
    throw DimensionError(std::string(what) + ": point length " +
                         std::to_string(v.size()) + " does not match ambient dim " +
                         std::to_string(set.ambient_dim()));
  require_finite(v, what);
}

SymMatrix as_sym(const ConvexSetSpec& set, const Vector& v) {
  return symmetrize(set.dim, v);
}

// Elliptope projection: Newton dual solve with a tolerance floored by what
// the eigensolver can resolve at the input's scale, then a feasibility
// polish (exact unit diagonal, shrink when a negative eigenvalue remains).
Vector project_elliptope_point(const ConvexSetSpec& set, const Vector& y,
                               Exec exec) {
  const SymMatrix g = as_sym(set, y);
  const double tol = std::max(1e-12, max_abs(g) * 1e-15);
  const NcmResult r = project_elliptope_newton(g, tol, 200, 1e-2, exec);
  return shrink_repair(r.x, exec).flat();
}

Vector project_box(const ConvexSetSpec& s, const Vector& y) {
  Vector x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    x[i] = std::clamp(y[i], s.lower[i], s.upper[i]);
  return x;
}

Vector project_ball(const ConvexSetSpec& s, const Vector& y) {
  const Vector d = sub(y, s.center);
  const double nd = norm2(d);
  if (nd <= s.radius) return y;
  // Multiply before dividing: one rounding per coordinate for a unit ball.
  Vector x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    x[i] = s.center[i] + d[i] * s.radius / nd;
  return x;
}

Vector project_l1(const ConvexSetSpec& s, const Vector& y) {
  if (norm1(y) <= s.radius) return y;
  Vector ab(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) ab[i] = std::abs(y[i]);
  const Vector t = simplex_project(ab, s.radius);
  Vector x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    x[i] = y[i] < 0.0 ? -t[i] : t[i];
  return x;
}

}  // namespace

ConvexSetSpec ConvexSetSpec::box(Vector lower, Vector upper) {
  if (lower.size() != upper.size() || lower.empty())
    throw ValidationError("box: bounds must be nonempty and of equal length");
  require_finite(lower, "box lower");
  require_finite(upper, "box upper");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (lower[i] > upper[i])
      throw ValidationError("box: lower bound exceeds upper bound at index " +
                            std::to_string(i));
  ConvexSetSpec s;
  s.kind = Kind::Box;
  s.lower = std::move(lower);
  s.upper = std::move(upper);
  return s;
}

ConvexSetSpec ConvexSetSpec::ball(Vector center, double radius) {
  if (center.empty()) throw ValidationError("ball: center must be nonempty");
  require_finite(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw ValidationError("ball: radius must be positive and finite");
  ConvexSetSpec s;
  s.kind = Kind::Ball;
  s.center = std::move(center);
  s.radius = radius;
  return s;
}

ConvexSetSpec ConvexSetSpec::simplex(int n) {
  if (n < 1) throw ValidationError("simplex: dimension must be >= 1");
  ConvexSetSpec s;
  s.kind = Kind::Simplex;
  s.dim = n;
  return s;
}

ConvexSetSpec ConvexSetSpec::l1ball(int n, double radius) {
  if (n < 1) throw ValidationError("l1ball: dimension must be >= 1");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw ValidationError("l1ball: radius must be positive and finite");
  ConvexSetSpec s;
  s.kind = Kind::L1Ball;
  s.dim = n;
  s.radius = radius;
  return s;
}

ConvexSetSpec ConvexSetSpec::elliptope(int n) {
  if (n < 1) throw ValidationError("elliptope: order must be >= 1");
  ConvexSetSpec s;
  s.kind = Kind::Elliptope;
  s.dim = n;
  return s;
}

int ConvexSetSpec::ambient_dim() const {
  switch (kind) {
    case Kind::Box:
      return static_cast<int>(lower.size());
    case Kind::Ball:
      return static_cast<int>(center.size());
    case Kind::Simplex:
    case Kind::L1Ball:
      return dim;
    case Kind::Elliptope:
      return dim * dim;
  }
  return 0;
}

std::string ConvexSetSpec::describe() const {
  switch (kind) {
    case Kind::Box:
      return "box:" + fmt_vec(lower) + ":" + fmt_vec(upper);
    case Kind::Ball:
      return "ball:" + fmt_vec(center) + ":" + fmt_num(radius);
    case Kind::Simplex:
      return "simplex:" + std::to_string(dim);
    case Kind::L1Ball:
      return "l1ball:" + std::to_string(dim) + ":" + fmt_num(radius);
    case Kind::Elliptope:
      return "elliptope:" + std::to_string(dim);
  }
  return "";
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_num(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError(context + ": cannot parse number \"" + s + "\"");
  }
  if (used != s.size())
    throw ValidationError(context + ": trailing characters in \"" + s + "\"");
  return v;
}

int parse_count(const std::string& s, const std::string& context) {
  const double v = parse_num(s, context);
  const int n = static_cast<int>(v);
  if (v != n || n < 1)
    throw ValidationError(context + ": expected a positive integer, got \"" +
                          s + "\"");
  return n;
}

Vector parse_vec(const std::string& s, const std::string& context) {
  Vector v;
  for (const std::string& part : split(s, ','))
    v.push_back(parse_num(part, context));
  return v;
}

}  // namespace

ConvexSetSpec parse_set_spec(const std::string& text) {
  const auto parts = split(text, ':');
  const std::string& kind = parts[0];
  const auto arity = parts.size() - 1;

  if (kind == "box") {
    if (arity != 2)
      throw ValidationError("box spec needs box:lower:upper");
    return ConvexSetSpec::box(parse_vec(parts[1], "box lower"),
                              parse_vec(parts[2], "box upper"));
  }
  if (kind == "ball") {
    if (arity != 2)
      throw ValidationError("ball spec needs ball:center:radius");
    return ConvexSetSpec::ball(parse_vec(parts[1], "ball center"),
                               parse_num(parts[2], "ball radius"));
  }
  if (kind == "simplex") {
    if (arity != 1) throw ValidationError("simplex spec needs simplex:n");
    return ConvexSetSpec::simplex(parse_count(parts[1], "simplex dimension"));
  }
  if (kind == "l1ball") {
    if (arity != 2)
      throw ValidationError("l1ball spec needs l1ball:n:radius");
    return ConvexSetSpec::l1ball(parse_count(parts[1], "l1ball dimension"),
                                 parse_num(parts[2], "l1ball radius"));
  }
  if (kind == "elliptope") {
    if (arity != 1) throw ValidationError("elliptope spec needs elliptope:n");
    return ConvexSetSpec::elliptope(
        parse_count(parts[1], "elliptope order"));
  }
  throw ValidationError("unknown set kind \"" + kind +
                        "\" (expected box, ball, simplex, l1ball, or "
                        "elliptope)");
}

Vector simplex_project(const Vector& y, double radius) {
  if (!(radius > 0.0)) throw ValidationError("simplex_project: radius must be positive");
  const int n = static_cast<int>(y.size());
  if (n == 0) throw DimensionError("simplex_project: empty input");

  // Sort-and-threshold: find the largest prefix of the sorted entries whose
  // running mean shifted by the budget stays below the entry itself.
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return y[a] > y[b]; });

  double cum = 0.0, tau = 0.0;
  for (int j = 0; j < n; ++j) {
    const double u = y[idx[j]];
    cum += u;
    const double t = (cum - radius) / (j + 1);
    if (u - t > 0.0) tau = t;
  }

  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = std::max(y[i] - tau, 0.0);
  return x;
}

Vector project(const ConvexSetSpec& set, const Vector& y, Exec exec) {
  check_point(set, y, "project");
  switch (set.kind) {
    case ConvexSetSpec::Kind::Box:
      return project_box(set, y);
    case ConvexSetSpec::Kind::Ball:
      return project_ball(set, y);
    case ConvexSetSpec::Kind::Simplex:
      return simplex_project(y, 1.0);
    case ConvexSetSpec::Kind::L1Ball:
      return project_l1(set, y);
    case ConvexSetSpec::Kind::Elliptope:
      return project_elliptope_point(set, y, exec);
  }
  throw ValidationError("project: unknown set kind");
}

LmoResult lmo(const ConvexSetSpec& set, const Vector& c, const Vector& anchor,
              Exec exec) {
  check_point(set, c, "lmo direction");
  check_point(set, anchor, "lmo anchor");
  if (is_zero(c)) return {project(set, anchor, exec), false};

  switch (set.kind) {
    case ConvexSetSpec::Kind::Box: {
      Vector x(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] > 0.0)
          x[i] = set.upper[i];
        else if (c[i] < 0.0)
          x[i] = set.lower[i];
        else
          x[i] = std::clamp(anchor[i], set.lower[i], set.upper[i]);
      }
      return {std::move(x), false};
    }
    case ConvexSetSpec::Kind::Ball: {
      const double nc = norm2(c);
      return {add_scaled(set.center, set.radius / nc, c), false};
    }
    case ConvexSetSpec::Kind::Simplex: {
      const double m = *std::max_element(c.begin(), c.end());
      std::vector<int> active;
      for (int i = 0; i < set.dim; ++i)
        if (c[i] == m) active.push_back(i);
      Vector x(set.dim, 0.0);
      if (active.size() == 1) {
        x[active[0]] = 1.0;
      } else {
        // Closest point of the optimal face to the anchor.
        Vector sub(active.size());
        for (std::size_t k = 0; k < active.size(); ++k) sub[k] = anchor[active[k]];
        const Vector t = simplex_project(sub, 1.0);
        for (std::size_t k = 0; k < active.size(); ++k) x[active[k]] = t[k];
      }
      return {std::move(x), false};
    }
    case ConvexSetSpec::Kind::L1Ball: {
      double m = 0.0;
      for (double v : c) m = std::max(m, std::abs(v));
      std::vector<int> active;
      for (int i = 0; i < set.dim; ++i)
        if (std::abs(c[i]) == m) active.push_back(i);
      Vector x(set.dim, 0.0);
      if (active.size() == 1) {
        const int i = active[0];
        x[i] = c[i] > 0.0 ? set.radius : -set.radius;
      } else {
        // Optimal face is the convex hull of the signed scaled basis
        // vectors; projecting the anchor onto it reduces to a simplex
        // projection in the barycentric weights.
        Vector w(active.size());
        for (std::size_t k = 0; k < active.size(); ++k) {
          const int i = active[k];
          const double sign = c[i] > 0.0 ? 1.0 : -1.0;
          w[k] = sign * anchor[i] / set.radius;
        }
        const Vector t = simplex_project(w, 1.0);
        for (std::size_t k = 0; k < active.size(); ++k) {
          const int i = active[k];
          const double sign = c[i] > 0.0 ? 1.0 : -1.0;
          x[i] = sign * set.radius * t[k];
        }
      }
      return {std::move(x), false};
    }
    case ConvexSetSpec::Kind::Elliptope: {
      // Single large-step projection; the step makes the objective gap at
      // most 1e-6 (diameter-squared rule), capped to keep anchor + eta*c
      // representable.
      const double diam = 2.0 * set.dim;
      const double eta = std::min(diam * diam / (2.0 * 1e-6), 1e12);
      LmoResult r;
      r.x = project(set, add_scaled(anchor, eta, c), exec);
      r.approximate = true;
      return r;
    }
  }
  throw ValidationError("lmo: unknown set kind");
}

double fw_gap(const ConvexSetSpec& set, const Vector& x, const Vector& g,
              Exec exec) {
  const LmoResult best = lmo(set, g, x, exec);
  const double raw = dot(g, best.x) - dot(g, x);
  // For feasible x the true sup is nonnegative; the approximate lmo may
  // undershoot slightly, so its raw value is floored at zero.
  if (best.approximate) return std::max(raw, 0.0);
  return raw;
}

double diameter(const ConvexSetSpec& set) {
  switch (set.kind) {
    case ConvexSetSpec::Kind::Box:
      return dist2(set.upper, set.lower);
    case ConvexSetSpec::Kind::Ball:
      return 2.0 * set.radius;
    case ConvexSetSpec::Kind::Simplex:
      return set.dim >= 2 ? std::sqrt(2.0) : 0.0;
    case ConvexSetSpec::Kind::L1Ball:
      return 2.0 * set.radius;
    case ConvexSetSpec::Kind::Elliptope:
      return 2.0 * set.dim;
  }
  return 0.0;
}

double membership_residual(const ConvexSetSpec& set, const Vector& x, Exec exec) {
  check_point(set, x, "membership_residual");
  switch (set.kind) {
    case ConvexSetSpec::Kind::Box: {
      double worst = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, set.lower[i] - x[i]);
        worst = std::max(worst, x[i] - set.upper[i]);
      }
      return std::max(worst, 0.0);
    }
    case ConvexSetSpec::Kind::Ball:
      return std::max(0.0, dist2(x, set.center) - set.radius);
    case ConvexSetSpec::Kind::Simplex: {
      double worst = 0.0, sum = 0.0;
      for (double v : x) {
        worst = std::max(worst, -v);
        sum += v;
      }
      return std::max(worst, std::abs(sum - 1.0));
    }
    case ConvexSetSpec::Kind::L1Ball:
      return std::max(0.0, norm1(x) - set.radius);
    case ConvexSetSpec::Kind::Elliptope: {
      const SymMatrix m = as_sym(set, x);
      double diag_dev = 0.0;
      for (int i = 0; i < m.n(); ++i)
        diag_dev = std::max(diag_dev, std::abs(m(i, i) - 1.0));
      return std::max(diag_dev, std::max(0.0, -min_eigenvalue(m, exec)));
    }
  }
  return 0.0;
}

}  // namespace projopt
