#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "projopt/errors.hpp"

namespace projopt {

/// Dense real vector. Symmetric matrices reuse this as flat row-major storage,
/// so a plain dot product of two flattened matrices is the Frobenius inner
/// product (both orderings of each off-diagonal pair counted).
using Vector = std::vector<double>;

inline void check_same_dim(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size())
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
}

inline void check_dim(const Vector& a, std::size_t n, const char* what) {
  if (a.size() != n)
    throw DimensionError(std::string(what) + ": expected dimension " +
                         std::to_string(n) + ", got " + std::to_string(a.size()));
}

inline double dot(const Vector& a, const Vector& b) {
  check_same_dim(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

inline double norm1(const Vector& a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

inline double norm_inf(const Vector& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

/// y += alpha * x
inline void axpy(double alpha, const Vector& x, Vector& y) {
  check_same_dim(x, y, "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline Vector add_scaled(const Vector& x, double alpha, const Vector& d) {
  check_same_dim(x, d, "add_scaled");
  Vector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + alpha * d[i];
  return r;
}

inline Vector sub(const Vector& a, const Vector& b) {
  check_same_dim(a, b, "sub");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline double dist2(const Vector& a, const Vector& b) { return norm2(sub(a, b)); }

inline Vector scaled(const Vector& a, double alpha) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = alpha * a[i];
  return r;
}

inline bool all_finite(const Vector& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

inline void require_finite(const Vector& a, const char* what) {
  if (!all_finite(a)) throw ValidationError(std::string(what) + ": non-finite entries");
}

inline bool is_zero(const Vector& a) {
  for (double v : a)
    if (v != 0.0) return false;
  return true;
}

}  // namespace projopt
