#pragma once

#include <string>

#include "projopt/parallel.hpp"
#include "projopt/sym_matrix.hpp"
#include "projopt/vec.hpp"

namespace projopt {

/// Default feasibility tolerance for membership checks.
inline constexpr double kFeasTol = 1e-8;

/// Description of a supported closed convex set.  Points are flat vectors;
/// the elliptope uses row-major n*n storage of a symmetric matrix, so inner
/// products of flattened points are Frobenius inner products.
struct ConvexSetSpec {
  enum class Kind { Box, Ball, Simplex, L1Ball, Elliptope };

  Kind kind = Kind::Box;
  Vector lower, upper;   // Box
  Vector center;         // Ball
  double radius = 0.0;   // Ball / L1Ball
  int dim = 0;           // Simplex / L1Ball ambient dim, Elliptope matrix order

  static ConvexSetSpec box(Vector lower, Vector upper);
  static ConvexSetSpec ball(Vector center, double radius);
  static ConvexSetSpec simplex(int n);
  static ConvexSetSpec l1ball(int n, double radius);
  static ConvexSetSpec elliptope(int n);

  /// Length of the flat point representation.
  int ambient_dim() const;
  /// Matrix order for the elliptope, 0 otherwise.
  int matrix_order() const { return kind == Kind::Elliptope ? dim : 0; }
  std::string describe() const;
};

/// Parses the compact colon grammar produced by describe():
///   box:l1,...,ln:u1,...,un | ball:c1,...,cn:r | simplex:n |
///   l1ball:n:r | elliptope:n
ConvexSetSpec parse_set_spec(const std::string& text);

/// Linear-maximization oracle output.  `approximate` marks the elliptope
/// path, where the maximizer is reached by a single large-step projection
/// rather than in closed form.
struct LmoResult {
  Vector x;
  bool approximate = false;
};

/// Orthogonal projection onto the set (unique nearest point).
Vector project(const ConvexSetSpec& set, const Vector& y, Exec exec = Exec::Auto);

/// A maximizer of <c, x> over the set; among exact maximizers, the one
/// closest to `anchor`.  c = 0 returns the projection of the anchor.
LmoResult lmo(const ConvexSetSpec& set, const Vector& c, const Vector& anchor,
              Exec exec = Exec::Auto);

/// Stationarity residual sup_z <g, z - x> evaluated through the lmo with
/// anchor x.  Nonnegative up to lmo accuracy; zero exactly at first-order
/// stationary points.
double fw_gap(const ConvexSetSpec& set, const Vector& x, const Vector& g,
              Exec exec = Exec::Auto);

/// Exact diameter for Box/Ball/Simplex/L1Ball; the upper bound 2n for the
/// elliptope.
double diameter(const ConvexSetSpec& set);

/// 0 iff the point is in the set exactly; otherwise the violation magnitude.
double membership_residual(const ConvexSetSpec& set, const Vector& x,
                           Exec exec = Exec::Auto);

/// Sort-and-threshold projection onto {x >= 0, sum x = radius}; exposed for
/// reuse and direct testing against the brute-force oracle.
Vector simplex_project(const Vector& y, double radius = 1.0);

}  // namespace projopt
