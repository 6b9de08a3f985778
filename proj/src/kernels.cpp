#include "projopt/kernels.hpp"

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace projopt::kern {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace serial {

void mul(const double* a, const double* b, double* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i) {
    double* ci = c + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) ci[j] = 0.0;
    const double* ai = a + static_cast<std::size_t>(i) * k;
    for (int l = 0; l < k; ++l) {
      const double ail = ai[l];
      const double* bl = b + static_cast<std::size_t>(l) * n;
      for (int j = 0; j < n; ++j) ci[j] += ail * bl[j];
    }
  }
}

void mul_bt(const double* a, const double* b, double* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i) {
    const double* ai = a + static_cast<std::size_t>(i) * k;
    double* ci = c + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* bj = b + static_cast<std::size_t>(j) * k;
      double s = 0.0;
      for (int l = 0; l < k; ++l) s += ai[l] * bj[l];
      ci[j] = s;
    }
  }
}

void mul_at(const double* a, const double* b, double* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i) {
    double* ci = c + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) ci[j] = 0.0;
    for (int l = 0; l < k; ++l) {
      const double ali = a[static_cast<std::size_t>(l) * m + i];
      const double* bl = b + static_cast<std::size_t>(l) * n;
      for (int j = 0; j < n; ++j) ci[j] += ali * bl[j];
    }
  }
}

void matvec(const double* a, const double* x, double* y, int m, int n) {
  for (int i = 0; i < m; ++i) {
    const double* ai = a + static_cast<std::size_t>(i) * n;
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += ai[j] * x[j];
    y[i] = s;
  }
}

void sandwich_diag(const double* q, const double* d, double* c, int n, double* work) {
  for (int i = 0; i < n; ++i) {
    const double* qi = q + static_cast<std::size_t>(i) * n;
    double* wi = work + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) wi[j] = qi[j] * d[j];
  }
  // Upper triangle plus mirror keeps C exactly symmetric.
  for (int i = 0; i < n; ++i) {
    const double* wi = work + static_cast<std::size_t>(i) * n;
    for (int j = i; j < n; ++j) {
      const double* qj = q + static_cast<std::size_t>(j) * n;
      double s = 0.0;
      for (int l = 0; l < n; ++l) s += wi[l] * qj[l];
      c[static_cast<std::size_t>(i) * n + j] = s;
      c[static_cast<std::size_t>(j) * n + i] = s;
    }
  }
}

}  // namespace serial

namespace omp {

// Row-partitioned twins of the serial kernels.  Each output element is
// produced by exactly one thread with the serial inner-loop order, so the
// results match the serial kernels bitwise for any thread count.

void mul(const double* a, const double* b, double* c, int m, int k, int n) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    double* ci = c + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) ci[j] = 0.0;
    const double* ai = a + static_cast<std::size_t>(i) * k;
    for (int l = 0; l < k; ++l) {
      const double ail = ai[l];
      const double* bl = b + static_cast<std::size_t>(l) * n;
      for (int j = 0; j < n; ++j) ci[j] += ail * bl[j];
    }
  }
}

void mul_bt(const double* a, const double* b, double* c, int m, int k, int n) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    const double* ai = a + static_cast<std::size_t>(i) * k;
    double* ci = c + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* bj = b + static_cast<std::size_t>(j) * k;
      double s = 0.0;
      for (int l = 0; l < k; ++l) s += ai[l] * bj[l];
      ci[j] = s;
    }
  }
}

void mul_at(const double* a, const double* b, double* c, int m, int k, int n) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    double* ci = c + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) ci[j] = 0.0;
    for (int l = 0; l < k; ++l) {
      const double ali = a[static_cast<std::size_t>(l) * m + i];
      const double* bl = b + static_cast<std::size_t>(l) * n;
      for (int j = 0; j < n; ++j) ci[j] += ali * bl[j];
    }
  }
}

void matvec(const double* a, const double* x, double* y, int m, int n) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    const double* ai = a + static_cast<std::size_t>(i) * n;
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += ai[j] * x[j];
    y[i] = s;
  }
}

void sandwich_diag(const double* q, const double* d, double* c, int n, double* work) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const double* qi = q + static_cast<std::size_t>(i) * n;
    double* wi = work + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) wi[j] = qi[j] * d[j];
  }
  // Each (i, j) pair with j >= i is visited once, so the mirrored writes of
  // distinct rows never touch the same element.
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    const double* wi = work + static_cast<std::size_t>(i) * n;
    for (int j = i; j < n; ++j) {
      const double* qj = q + static_cast<std::size_t>(j) * n;
      double s = 0.0;
      for (int l = 0; l < n; ++l) s += wi[l] * qj[l];
      c[static_cast<std::size_t>(i) * n + j] = s;
      c[static_cast<std::size_t>(j) * n + i] = s;
    }
  }
}

}  // namespace omp

void mul(const double* a, const double* b, double* c, int m, int k, int n, Exec exec) {
  if (use_parallel(exec, 2.0 * m * k * n))
    omp::mul(a, b, c, m, k, n);
  else
    serial::mul(a, b, c, m, k, n);
}

void mul_bt(const double* a, const double* b, double* c, int m, int k, int n, Exec exec) {
  if (use_parallel(exec, 2.0 * m * k * n))
    omp::mul_bt(a, b, c, m, k, n);
  else
    serial::mul_bt(a, b, c, m, k, n);
}

void mul_at(const double* a, const double* b, double* c, int m, int k, int n, Exec exec) {
  if (use_parallel(exec, 2.0 * m * k * n))
    omp::mul_at(a, b, c, m, k, n);
  else
    serial::mul_at(a, b, c, m, k, n);
}

void matvec(const double* a, const double* x, double* y, int m, int n, Exec exec) {
  if (use_parallel(exec, 2.0 * m * n))
    omp::matvec(a, x, y, m, n);
  else
    serial::matvec(a, x, y, m, n);
}

void sandwich_diag(const double* q, const double* d, double* c, int n, double* work,
                   Exec exec) {
  if (use_parallel(exec, 1.0 * n * n * n))
    omp::sandwich_diag(q, d, c, n, work);
  else
    serial::sandwich_diag(q, d, c, n, work);
}

void sandwich_diag(const double* q, const double* d, double* c, int n, Exec exec) {
  std::vector<double> work(static_cast<std::size_t>(n) * n);
  sandwich_diag(q, d, c, n, work.data(), exec);
}

}  // namespace projopt::kern
