#pragma once

#include <optional>

#include "projopt/eig.hpp"
#include "projopt/parallel.hpp"
#include "projopt/sym_matrix.hpp"
#include "projopt/vec.hpp"

namespace projopt {

/// Outcome of a correlation-matrix projection (nearest point of the set of
/// unit-diagonal PSD matrices in Frobenius norm).
struct NcmResult {
  SymMatrix x;
  int iterations = 0;
  /// max of diagonal deviation from 1 and negative-eigenvalue magnitude.
  double residual = 0.0;
  bool converged = false;
  /// Dual variable of the Newton path (absent for Dykstra).
  std::optional<Vector> dual_y;
  /// Internal conditioning scale applied to the input (1 when none).
  double prescale = 1.0;
  double wall_time_s = 0.0;
};

/// Dykstra alternating projections between the PSD cone and the unit-diagonal
/// affine set, with the correction term on the PSD projection only.  Stops
/// when the Frobenius change between successive iterates drops below tol.
/// The returned matrix has an exactly unit diagonal.
NcmResult project_elliptope_dykstra(const SymMatrix& g, double tol = 1e-7,
                                    int max_iter = 100000,
                                    Exec exec = Exec::Auto);

/// Dual semismooth Newton solver: minimizes
///   theta(y) = 0.5*||(G + Diag(y))_+||_F^2 - sum(y)
/// with a generalized Jacobian built from eigenvalue divided differences,
/// conjugate-gradient inner solves, and an Armijo line search.  Returns
/// X = (G + Diag(y))_+ once ||grad theta||_inf <= tol.  Inputs are scaled by
/// 1/max(1, max|G_ij|) internally (an exact reparametrization of the dual,
/// recorded in `prescale`); the stopping test is on the unscaled gradient.
NcmResult project_elliptope_newton(const SymMatrix& g, double tol = 1e-7,
                                   int max_outer = 200,
                                   double cg_rel_tol = 1e-2,
                                   Exec exec = Exec::Auto);

/// Dual objective and gradient at y for the unscaled problem; the gradient is
/// diag((G + Diag(y))_+) - 1.
struct DualEval {
  double theta = 0.0;
  Vector grad;
};
DualEval ncm_dual_eval(const SymMatrix& g, const Vector& y,
                       Exec exec = Exec::Auto);

/// Restores feasibility of an almost-correlation matrix: replaces the
/// diagonal with ones, then, when the result has a negative eigenvalue
/// lambda, contracts the off-diagonal part by 1/(1 - lambda), which moves the
/// smallest eigenvalue to exactly zero.
SymMatrix shrink_repair(const SymMatrix& x, Exec exec = Exec::Auto);

/// Gram factor of X with every row normalized to unit length, so that V V^T
/// is a correlation matrix.  Zero rows are replaced by the first standard
/// basis direction.
Matrix gram_normalize(const SymMatrix& x, double rank_tol = 1e-10,
                      Exec exec = Exec::Auto);

}  // namespace projopt
