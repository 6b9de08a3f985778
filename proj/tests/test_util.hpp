#pragma once

// Shared samplers and reference oracles for the test suites.  Oracles here
// are deliberately naive (brute force, textbook formulas) and independent of
// the library code paths they check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "projopt/rng.hpp"
#include "projopt/sets.hpp"
#include "projopt/sym_matrix.hpp"
#include "projopt/vec.hpp"

namespace testutil {

using projopt::Matrix;
using projopt::SubstreamRng;
using projopt::SymMatrix;
using projopt::Vector;

inline Vector random_vector(SubstreamRng& rng, int n, double lo = -1.0,
                            double hi = 1.0) {
  Vector v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

inline SymMatrix random_symmetric(SubstreamRng& rng, int n, double lo = -1.0,
                                  double hi = 1.0) {
  SymMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a.set(i, j, rng.uniform(lo, hi));
  return a;
}

/// Random PSD matrix R R^T with R of shape n x k.
inline SymMatrix random_psd(SubstreamRng& rng, int n, int k) {
  Matrix r(n, k);
  for (double& x : r.a) x = rng.normal();
  SymMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int l = 0; l < k; ++l) s += r(i, l) * r(j, l);
      a.set(i, j, s);
    }
  return a;
}

/// Random correlation matrix: rows of a random Gaussian factor normalized to
/// unit length, then the Gram matrix of those rows.
inline SymMatrix random_correlation(SubstreamRng& rng, int n, int k = 0) {
  if (k <= 0) k = n + 2;
  Matrix r(n, k);
  for (double& x : r.a) x = rng.normal();
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int l = 0; l < k; ++l) s += r(i, l) * r(i, l);
    s = std::sqrt(s);
    if (s == 0.0) {
      r(i, 0) = 1.0;
      s = 1.0;
    }
    for (int l = 0; l < k; ++l) r(i, l) /= s;
  }
  SymMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int l = 0; l < k; ++l) s += r(i, l) * r(j, l);
      a.set(i, j, s);
    }
  for (int i = 0; i < n; ++i) a.set(i, i, 1.0);
  return a;
}

/// Textbook i-j-k matrix product, used as an order-independent oracle for the
/// fused kernels (tolerance comparisons only).
inline std::vector<double> naive_mul(const std::vector<double>& a,
                                     const std::vector<double>& b, int m, int k,
                                     int n) {
  std::vector<double> c(static_cast<std::size_t>(m) * n, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int l = 0; l < k; ++l)
        s += a[static_cast<std::size_t>(i) * k + l] *
             b[static_cast<std::size_t>(l) * n + j];
      c[static_cast<std::size_t>(i) * n + j] = s;
    }
  return c;
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline bool bitwise_equal(const std::vector<double>& a,
                          const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i] || std::signbit(a[i]) != std::signbit(b[i])) return false;
  return true;
}

inline double frob_diff(const SymMatrix& a, const SymMatrix& b) {
  return projopt::frob_norm(a - b);
}

/// Uniform-ish sample from the interior/boundary of a supported set.
/// Sets with closed-form projections and exact linear-maximization oracles;
/// shared by the optimizer suites.
inline std::vector<projopt::ConvexSetSpec> sample_exact_sets() {
  using projopt::ConvexSetSpec;
  return {
      ConvexSetSpec::box({-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}),
      ConvexSetSpec::box({0.0, -2.0, 1.0, -0.5}, {0.25, 2.0, 3.0, 0.5}),
      ConvexSetSpec::ball({0.0, 0.0}, 1.0),
      ConvexSetSpec::ball({1.0, -2.0, 0.5}, 2.5),
      ConvexSetSpec::simplex(4),
      ConvexSetSpec::l1ball(5, 1.5),
  };
}

inline Vector random_point_in(const projopt::ConvexSetSpec& set,
                              SubstreamRng& rng) {
  using Kind = projopt::ConvexSetSpec::Kind;
  switch (set.kind) {
    case Kind::Box: {
      Vector x(set.lower.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = rng.uniform(set.lower[i], set.upper[i]);
      return x;
    }
    case Kind::Ball: {
      const int n = static_cast<int>(set.center.size());
      Vector d(n);
      double s = 0.0;
      for (double& v : d) {
        v = rng.normal();
        s += v * v;
      }
      s = std::sqrt(s);
      if (s == 0.0) return set.center;
      const double rad = set.radius * std::pow(rng.uniform(), 1.0 / n);
      Vector x(n);
      for (int i = 0; i < n; ++i) x[i] = set.center[i] + rad * d[i] / s;
      return x;
    }
    case Kind::Simplex: {
      Vector x(set.dim);
      double s = 0.0;
      for (double& v : x) {
        v = -std::log(1.0 - rng.uniform());
        s += v;
      }
      if (s == 0.0) {
        x.assign(set.dim, 0.0);
        x[0] = 1.0;
        return x;
      }
      for (double& v : x) v /= s;
      return x;
    }
    case Kind::L1Ball: {
      const projopt::ConvexSetSpec inner = projopt::ConvexSetSpec::simplex(set.dim);
      Vector t = random_point_in(inner, rng);
      const double scale = set.radius * rng.uniform();
      for (double& v : t) v *= (rng.bernoulli(0.5) ? 1.0 : -1.0) * scale;
      return t;
    }
    case Kind::Elliptope:
      return random_correlation(rng, set.dim).flat();
  }
  return {};
}

/// Exact projection onto {x >= 0, sum x = radius} by enumerating supports;
/// exponential in the dimension, for use as a desk-scale oracle only.
inline Vector brute_force_simplex_projection(const Vector& y, double radius) {
  const int n = static_cast<int>(y.size());
  Vector best;
  double best_d = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        sum += y[i];
        ++count;
      }
    const double shift = (radius - sum) / count;
    Vector x(n, 0.0);
    bool ok = true;
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        x[i] = y[i] + shift;
        if (x[i] < -1e-12) {
          ok = false;
          break;
        }
        d += shift * shift;
      } else {
        d += y[i] * y[i];
      }
    }
    if (ok && d < best_d) {
      best_d = d;
      best = std::move(x);
    }
  }
  return best;
}

}  // namespace testutil
