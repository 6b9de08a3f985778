#pragma once

#include <vector>

#include "projopt/parallel.hpp"

namespace projopt::kern {

// Dense row-major kernels. Each has a serial reference implementation and an
// OpenMP row-parallel one; the dispatchers below pick per the Exec policy.
// The parallel variants partition output rows only and keep the serial
// inner-loop order, so serial and parallel results match bitwise.

/// C(m x n) = A(m x k) * B(k x n)
void mul(const double* a, const double* b, double* c, int m, int k, int n,
         Exec exec = Exec::Auto);

/// C(m x n) = A(m x k) * B(n x k)^T
void mul_bt(const double* a, const double* b, double* c, int m, int k, int n,
            Exec exec = Exec::Auto);

/// C(m x n) = A(k x m)^T * B(k x n)
void mul_at(const double* a, const double* b, double* c, int m, int k, int n,
            Exec exec = Exec::Auto);

/// y(m) = A(m x n) * x(n)
void matvec(const double* a, const double* x, double* y, int m, int n,
            Exec exec = Exec::Auto);

/// C = Q * diag(d) * Q^T for square Q (n x n, eigenvectors in columns).
/// Only the upper triangle is computed and then mirrored, so C is exactly
/// symmetric.  `work` must hold n*n doubles.
void sandwich_diag(const double* q, const double* d, double* c, int n, double* work,
                   Exec exec = Exec::Auto);

/// Convenience overload that allocates its own workspace.
void sandwich_diag(const double* q, const double* d, double* c, int n,
                   Exec exec = Exec::Auto);

// Serial reference implementations (exposed for the comparison tests and the
// benchmark; the dispatchers above are what library code calls).
namespace serial {
void mul(const double* a, const double* b, double* c, int m, int k, int n);
void mul_bt(const double* a, const double* b, double* c, int m, int k, int n);
void mul_at(const double* a, const double* b, double* c, int m, int k, int n);
void matvec(const double* a, const double* x, double* y, int m, int n);
void sandwich_diag(const double* q, const double* d, double* c, int n, double* work);
}  // namespace serial

// OpenMP implementations (plain loops when built without OpenMP).
namespace omp {
void mul(const double* a, const double* b, double* c, int m, int k, int n);
void mul_bt(const double* a, const double* b, double* c, int m, int k, int n);
void mul_at(const double* a, const double* b, double* c, int m, int k, int n);
void matvec(const double* a, const double* x, double* y, int m, int n);
void sandwich_diag(const double* q, const double* d, double* c, int n, double* work);
}  // namespace omp

}  // namespace projopt::kern
