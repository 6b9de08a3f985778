#include "projopt/eig.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

#include "projopt/errors.hpp"
#include "projopt/kernels.hpp"

namespace projopt {
namespace {

// Householder reduction of the symmetric matrix stored in v (row-major n*n)
// to tridiagonal form: diagonal in d, subdiagonal in e[1..n-1].  On return v
// holds the accumulated orthogonal transformation.  Restructured from the
// classic tred2 routine to keep the full symmetric storage, which turns the
// O(n^2)-per-stage loops into clean row maps; `par` only distributes rows
// across threads and never changes the per-row arithmetic, so results are
// bitwise identical for any thread count.
void tridiagonalize(double* v, int n, double* d, double* e, bool par,
                    bool accumulate) {
  auto at = [&](int i, int j) -> double& {
    return v[static_cast<std::size_t>(i) * n + j];
  };

  for (int j = 0; j < n; ++j) d[j] = at(n - 1, j);

  for (int i = n - 1; i > 0; --i) {
    // d holds row i of the active block [0, i)^2.
    double scale = 0.0, h = 0.0;
    for (int k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (int j = 0; j < i; ++j) {
        d[j] = at(i - 1, j);
        at(i, j) = 0.0;
        at(j, i) = 0.0;
      }
    } else {
      for (int k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = (f > 0.0) ? -std::sqrt(h) : std::sqrt(h);
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;

      // p = A u / h with the Householder vector u in d[0..i-1].
#pragma omp parallel for schedule(static) if (par)
      for (int j = 0; j < i; ++j) {
        const double* row = v + static_cast<std::size_t>(j) * n;
        double s = 0.0;
        for (int k = 0; k < i; ++k) s += row[k] * d[k];
        e[j] = s / h;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) f += e[j] * d[j];
      const double hh = f / (h + h);
      for (int j = 0; j < i; ++j) e[j] -= hh * d[j];

      // Rank-2 update A <- A - u q^T - q u^T; elementwise symmetric, so the
      // full block stays exactly symmetric.
#pragma omp parallel for schedule(static) if (par)
      for (int j = 0; j < i; ++j) {
        double* row = v + static_cast<std::size_t>(j) * n;
        const double dj = d[j], ej = e[j];
        for (int k = 0; k < i; ++k) row[k] -= dj * e[k] + ej * d[k];
      }

      // Stash u in column i for the accumulation phase, then load row i-1.
      for (int j = 0; j < i; ++j) at(j, i) = d[j];
      for (int j = 0; j < i; ++j) {
        d[j] = at(i - 1, j);
        at(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  if (accumulate) {
    // Accumulate the Householder transformations into v (columns become the
    // orthogonal basis of the tridiagonal similarity).
    for (int i = 0; i < n - 1; ++i) {
      at(n - 1, i) = at(i, i);
      at(i, i) = 1.0;
      const double h = d[i + 1];
      if (h != 0.0) {
        for (int k = 0; k <= i; ++k) d[k] = at(k, i + 1) / h;
#pragma omp parallel for schedule(static) if (par)
        for (int j = 0; j <= i; ++j) {
          double g = 0.0;
          for (int k = 0; k <= i; ++k) g += at(k, i + 1) * at(k, j);
          for (int k = 0; k <= i; ++k) at(k, j) -= g * d[k];
        }
      }
      for (int k = 0; k <= i; ++k) at(k, i + 1) = 0.0;
    }
    for (int j = 0; j < n; ++j) {
      d[j] = at(n - 1, j);
      at(n - 1, j) = 0.0;
    }
    at(n - 1, n - 1) = 1.0;
  } else {
    // Eigenvalue-only path: the tridiagonal diagonal sits at the block pivots.
    for (int j = 0; j < n; ++j) d[j] = at(j, j);
  }
  if (n > 0) e[0] = 0.0;
}

struct Rot {
  int i;
  double c, s;
};

// Applies a recorded rotation sequence to every row of v.  Rows are
// independent; within a row the order is the recording order.
void apply_rotations(double* v, int n, const std::vector<Rot>& rots, bool par) {
  if (rots.empty()) return;
#pragma omp parallel for schedule(static) if (par)
  for (int k = 0; k < n; ++k) {
    double* row = v + static_cast<std::size_t>(k) * n;
    for (const Rot& r : rots) {
      const double f = row[r.i + 1];
      row[r.i + 1] = r.s * row[r.i] + r.c * f;
      row[r.i] = r.c * row[r.i] - r.s * f;
    }
  }
}

// Implicit-shift QL on the tridiagonal (d, e) accumulating eigenvectors into
// v (skipped when v is null).  The rotation angles depend only on d and e, so
// each sweep's rotations are recorded first and applied to the rows of v in
// one batch.
void ql_implicit(double* v, int n, double* d, double* e, int max_iter, bool par) {
  if (n <= 1) return;
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  constexpr double kRelTol = 1e-12;
  std::vector<Rot> rots;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kRelTol * dd || std::abs(e[m]) < 1e-300) break;
      }
      if (m != l) {
        if (iter++ == max_iter)
          throw NumericError("symmetric QL iteration failed to deflate",
                             std::abs(e[l]));
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        rots.clear();
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (v != nullptr) rots.push_back({i, c, s});
        }
        if (v != nullptr) apply_rotations(v, n, rots, par);
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

EigenDecomposition sym_eig(const SymMatrix& a, Exec exec, int max_ql_iter) {
  const int n = a.n();
  require_finite(a.flat(), "sym_eig input");
  const bool par = kern::use_parallel(exec, 2.0 * n * n * n);

  Matrix q(n, n);
  std::copy(a.flat().begin(), a.flat().end(), q.a.begin());
  Vector d(n), e(n);
  if (n > 0) {
    tridiagonalize(q.data(), n, d.data(), e.data(), par, true);
    ql_implicit(q.data(), n, d.data(), e.data(), max_ql_iter, par);
  }

  // Nonincreasing eigenvalue order, ties kept in QL output order.
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int x, int y) { return d[x] > d[y]; });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.eigenvalues[j] = d[idx[j]];
    for (int i = 0; i < n; ++i) out.eigenvectors(i, j) = q(i, idx[j]);
  }
  return out;
}

Vector sym_eigvals(const SymMatrix& a, Exec exec, int max_ql_iter) {
  const int n = a.n();
  require_finite(a.flat(), "sym_eigvals input");
  const bool par = kern::use_parallel(exec, 2.0 * n * n * n);

  std::vector<double> work(a.flat());
  Vector d(n), e(n);
  if (n > 0) {
    tridiagonalize(work.data(), n, d.data(), e.data(), par, false);
    ql_implicit(nullptr, n, d.data(), e.data(), max_ql_iter, par);
  }
  std::sort(d.begin(), d.end(), std::greater<double>());
  return d;
}

SymMatrix psd_part(const SymMatrix& a, Exec exec) {
  const int n = a.n();
  EigenDecomposition ed = sym_eig(a, exec);
  Vector lam = ed.eigenvalues;
  for (double& l : lam) l = std::max(l, 0.0);
  std::vector<double> buf(static_cast<std::size_t>(n) * n);
  kern::sandwich_diag(ed.eigenvectors.data(), lam.data(), buf.data(), n, exec);
  return SymMatrix::from_dense(n, buf);
}

Matrix gram_factor(const SymMatrix& x, double rank_tol, Exec exec) {
  const int n = x.n();
  EigenDecomposition ed = sym_eig(x, exec);
  const double lam_min = n > 0 ? ed.eigenvalues[n - 1] : 0.0;
  if (lam_min < -1e-6)
    throw NotPsdError("matrix is not positive semidefinite", lam_min);
  const double lam_max = n > 0 ? std::max(ed.eigenvalues[0], 0.0) : 0.0;

  int r = 0;
  while (r < n && ed.eigenvalues[r] > rank_tol * lam_max) ++r;

  Matrix v(n, r);
  for (int k = 0; k < r; ++k) {
    const double w = std::sqrt(std::max(ed.eigenvalues[k], 0.0));
    for (int i = 0; i < n; ++i) v(i, k) = w * ed.eigenvectors(i, k);
  }
  return v;
}

double min_eigenvalue(const SymMatrix& a, Exec exec) {
  if (a.n() == 0) return 0.0;
  EigenDecomposition ed = sym_eig(a, exec);
  return ed.eigenvalues[a.n() - 1];
}

}  // namespace projopt
