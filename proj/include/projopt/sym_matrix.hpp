#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "projopt/errors.hpp"
#include "projopt/vec.hpp"

namespace projopt {

/// Dense rectangular matrix, row-major.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(int r, int c, double value = 0.0)
      : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, value) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
  double* data() { return a.data(); }
  const double* data() const { return a.data(); }
};

/// Dense symmetric matrix with full row-major storage.  Symmetry is enforced
/// by construction: set() writes both (i, j) and (j, i).
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n, double value = 0.0)
      : n_(n), a_(static_cast<std::size_t>(n) * n, value) {
    if (n < 0) throw DimensionError("SymMatrix dimension must be nonnegative");
  }

  static SymMatrix identity(int n) {
    SymMatrix m(n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
  }

  /// Builds from full row-major data; entries farther than sym_tol from their
  /// transpose are rejected, closer ones are averaged so storage is exact.
  static SymMatrix from_dense(int n, const std::vector<double>& full,
                              double sym_tol = 0.0) {
    if (static_cast<std::size_t>(n) * n != full.size())
      throw DimensionError("dense data size does not match n*n");
    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double ij = full[static_cast<std::size_t>(i) * n + j];
        const double ji = full[static_cast<std::size_t>(j) * n + i];
        if (!(std::abs(ij - ji) <= sym_tol))
          throw ValidationError("matrix is not symmetric");
        m.set(i, j, 0.5 * (ij + ji));
      }
    return m;
  }

  int n() const { return n_; }
  std::size_t size() const { return a_.size(); }

  double operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }
  void set(int i, int j, double v) {
    a_[static_cast<std::size_t>(i) * n_ + j] = v;
    a_[static_cast<std::size_t>(j) * n_ + i] = v;
  }
  void add_to(int i, int j, double v) { set(i, j, (*this)(i, j) + v); }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  const std::vector<double>& flat() const { return a_; }

  SymMatrix& operator+=(const SymMatrix& other) {
    check_dim(other);
    for (std::size_t p = 0; p < a_.size(); ++p) a_[p] += other.a_[p];
    return *this;
  }
  SymMatrix& operator-=(const SymMatrix& other) {
    check_dim(other);
    for (std::size_t p = 0; p < a_.size(); ++p) a_[p] -= other.a_[p];
    return *this;
  }
  SymMatrix& operator*=(double s) {
    for (double& v : a_) v *= s;
    return *this;
  }

  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

 private:
  void check_dim(const SymMatrix& other) const {
    if (other.n_ != n_) throw DimensionError("SymMatrix dimension mismatch");
  }

  int n_ = 0;
  std::vector<double> a_;
};

/// Frobenius inner product sum_ij A_ij B_ij (both orderings of each
/// off-diagonal pair counted).
inline double frob_dot(const SymMatrix& a, const SymMatrix& b) {
  if (a.n() != b.n()) throw DimensionError("SymMatrix dimension mismatch");
  return dot(a.flat(), b.flat());
}

inline double frob_norm(const SymMatrix& a) { return std::sqrt(dot(a.flat(), a.flat())); }

inline double trace(const SymMatrix& a) {
  double t = 0.0;
  for (int i = 0; i < a.n(); ++i) t += a(i, i);
  return t;
}

inline double max_abs(const SymMatrix& a) {
  double m = 0.0;
  for (double v : a.flat()) m = std::max(m, std::abs(v));
  return m;
}

inline Vector diag_of(const SymMatrix& a) {
  Vector d(a.n());
  for (int i = 0; i < a.n(); ++i) d[i] = a(i, i);
  return d;
}

inline SymMatrix with_diag(const SymMatrix& a, double value) {
  SymMatrix m = a;
  for (int i = 0; i < m.n(); ++i) m.set(i, i, value);
  return m;
}

/// Symmetrizes arbitrary square row-major data: (A + A^T)/2.
inline SymMatrix symmetrize(int n, const std::vector<double>& full) {
  if (static_cast<std::size_t>(n) * n != full.size())
    throw DimensionError("dense data size does not match n*n");
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      m.set(i, j, 0.5 * (full[static_cast<std::size_t>(i) * n + j] +
                         full[static_cast<std::size_t>(j) * n + i]));
  return m;
}

}  // namespace projopt
