#pragma once

#include "projopt/parallel.hpp"
#include "projopt/sym_matrix.hpp"
#include "projopt/vec.hpp"

namespace projopt {

/// Result of a full symmetric eigendecomposition A = Q diag(lambda) Q^T.
struct EigenDecomposition {
  Vector eigenvalues;   // nonincreasing
  Matrix eigenvectors;  // n x n, eigenvector j in column j
};

/// Full eigendecomposition of a dense symmetric matrix by Householder
/// tridiagonalization followed by implicit-shift QL iterations.
/// Throws NumericError when an off-diagonal entry fails to deflate within
/// max_ql_iter iterations.
EigenDecomposition sym_eig(const SymMatrix& a, Exec exec = Exec::Auto,
                           int max_ql_iter = 100);

/// Eigenvalues only (nonincreasing), skipping eigenvector accumulation;
/// roughly half the cost of sym_eig.
Vector sym_eigvals(const SymMatrix& a, Exec exec = Exec::Auto,
                   int max_ql_iter = 100);

/// Frobenius-nearest positive semidefinite matrix: eigenvalues clamped at 0.
SymMatrix psd_part(const SymMatrix& a, Exec exec = Exec::Auto);

/// Gram factor V (n x r) with V V^T ~ X, from the top r eigenpairs where
/// r = #{lambda_i > rank_tol * lambda_max}.  Requires lambda_min >= -1e-6;
/// smaller negative eigenvalues raise NotPsdError.
Matrix gram_factor(const SymMatrix& x, double rank_tol = 1e-10,
                   Exec exec = Exec::Auto);

/// Smallest eigenvalue (convenience wrapper over sym_eig).
double min_eigenvalue(const SymMatrix& a, Exec exec = Exec::Auto);

}  // namespace projopt
