#include "projopt/ncm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <vector>

#include "projopt/errors.hpp"
#include "projopt/kernels.hpp"

namespace projopt {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

SymMatrix unit_diag(const SymMatrix& a) { return with_diag(a, 1.0); }

// Divided-difference weights of the PSD-part map at eigenvalues lam:
// (lam_i^+ - lam_j^+)/(lam_i - lam_j), with the convention 1{lam > 0} on
// ties.  Entries lie in [0, 1].
Matrix lowner_weights(const Vector& lam) {
  const int n = static_cast<int>(lam.size());
  Matrix om(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double li = lam[i], lj = lam[j];
      om(i, j) = (li == lj) ? (li > 0.0 ? 1.0 : 0.0)
                            : (std::max(li, 0.0) - std::max(lj, 0.0)) / (li - lj);
    }
  return om;
}

struct JacobianScratch {
  std::vector<double> hq, b, t;
  void resize(int n) {
    const std::size_t m = static_cast<std::size_t>(n) * n;
    hq.resize(m);
    b.resize(m);
    t.resize(m);
  }
};

// out = diag(Q (Om .* (Q^T Diag(h) Q)) Q^T) + eps*h, the generalized
// Jacobian of the dual gradient applied to h.
void jacobian_apply(const Matrix& q, const Matrix& om, const Vector& h,
                    double eps, Vector& out, JacobianScratch& ws, Exec exec) {
  const int n = q.rows;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      ws.hq[static_cast<std::size_t>(i) * n + j] = h[i] * q(i, j);
  kern::mul_at(q.data(), ws.hq.data(), ws.b.data(), n, n, n, exec);
  for (std::size_t p = 0; p < ws.b.size(); ++p) ws.b[p] *= om.a[p];
  kern::mul(q.data(), ws.b.data(), ws.t.data(), n, n, n, exec);
  for (int i = 0; i < n; ++i) {
    double s = eps * h[i];
    for (int j = 0; j < n; ++j)
      s += ws.t[static_cast<std::size_t>(i) * n + j] * q(i, j);
    out[i] = s;
  }
}

// Conjugate gradients on the regularized Jacobian; returns the direction for
// right-hand side -g.  Sets ok=false on breakdown (nonpositive curvature
// with nothing accumulated yet).
Vector cg_direction(const Matrix& q, const Matrix& om, const Vector& g,
                    double eps, double rel_tol, int max_iter,
                    JacobianScratch& ws, Exec exec, bool& ok) {
  const int n = static_cast<int>(g.size());
  Vector d(n, 0.0), r = scaled(g, -1.0), p = r, vp(n);
  double rs = dot(r, r);
  const double target = rel_tol * std::sqrt(rs);
  ok = true;
  if (rs == 0.0) return d;
  for (int it = 0; it < max_iter; ++it) {
    jacobian_apply(q, om, p, eps, vp, ws, exec);
    const double pvp = dot(p, vp);
    if (pvp <= 0.0) {
      ok = it > 0;
      break;
    }
    const double alpha = rs / pvp;
    axpy(alpha, p, d);
    axpy(-alpha, vp, r);
    const double rs_new = dot(r, r);
    if (std::sqrt(rs_new) <= target) break;
    const double beta = rs_new / rs;
    for (int i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    rs = rs_new;
  }
  return d;
}

}  // namespace

NcmResult project_elliptope_dykstra(const SymMatrix& g, double tol,
                                    int max_iter, Exec exec) {
  const auto t0 = Clock::now();
  if (!(tol > 0.0)) throw ValidationError("dykstra: tol must be positive");
  if (max_iter < 1) throw ValidationError("dykstra: max_iter must be >= 1");
  require_finite(g.flat(), "dykstra input");

  const int n = g.n();
  SymMatrix y = g;
  SymMatrix corr(n);  // Dykstra correction for the PSD projection
  NcmResult res;

  int it = 0;
  while (it < max_iter) {
    ++it;
    SymMatrix r = y;
    r -= corr;
    SymMatrix x = psd_part(r, exec);
    corr = x;
    corr -= r;
    SymMatrix y_new = unit_diag(x);
    const double delta = frob_norm(y_new - y);
    y = y_new;
    if (delta < tol) {
      res.converged = true;
      break;
    }
  }

  res.x = y;
  res.iterations = it;
  res.residual = std::max(0.0, -min_eigenvalue(y, exec));
  res.wall_time_s = seconds_since(t0);
  return res;
}

DualEval ncm_dual_eval(const SymMatrix& g, const Vector& y, Exec exec) {
  const int n = g.n();
  if (static_cast<int>(y.size()) != n)
    throw DimensionError("ncm_dual_eval: y length does not match matrix");
  SymMatrix a = g;
  for (int i = 0; i < n; ++i) a.set(i, i, g(i, i) + y[i]);
  const EigenDecomposition ed = sym_eig(a, exec);

  DualEval out;
  out.grad.assign(n, -1.0);
  for (int k = 0; k < n; ++k) {
    const double lp = std::max(ed.eigenvalues[k], 0.0);
    out.theta += 0.5 * lp * lp;
    if (lp > 0.0)
      for (int i = 0; i < n; ++i) {
        const double qik = ed.eigenvectors(i, k);
        out.grad[i] += lp * qik * qik;
      }
  }
  for (int i = 0; i < n; ++i) out.theta -= y[i];
  return out;
}

NcmResult project_elliptope_newton(const SymMatrix& g, double tol,
                                   int max_outer, double cg_rel_tol,
                                   Exec exec) {
  const auto t0 = Clock::now();
  if (!(tol > 0.0)) throw ValidationError("newton: tol must be positive");
  if (max_outer < 1) throw ValidationError("newton: max_outer must be >= 1");
  require_finite(g.flat(), "newton input");

  const int n = g.n();
  const double scale = std::max(1.0, max_abs(g));
  SymMatrix gs = g;
  gs *= 1.0 / scale;
  const double target_diag = 1.0 / scale;

  // Scaled dual: theta_s(y) = 0.5*||(G/s + Diag(y))_+||^2 - (1/s)*sum(y).
  // Minimizers map to the original dual via y_orig = s*y, and the original
  // gradient is s times the scaled one, so the stopping test below is exact.
  Vector y(n);
  for (int i = 0; i < n; ++i) y[i] = target_diag - gs(i, i);

  Matrix q;
  Vector lam;
  double theta = 0.0;
  Vector grad(n);

  auto eval_full = [&](const Vector& yy) {
    SymMatrix a = gs;
    for (int i = 0; i < n; ++i) a.set(i, i, gs(i, i) + yy[i]);
    EigenDecomposition ed = sym_eig(a, exec);
    q = std::move(ed.eigenvectors);
    lam = std::move(ed.eigenvalues);
    theta = 0.0;
    std::fill(grad.begin(), grad.end(), -target_diag);
    for (int k = 0; k < n; ++k) {
      const double lp = std::max(lam[k], 0.0);
      theta += 0.5 * lp * lp;
      if (lp > 0.0)
        for (int i = 0; i < n; ++i) {
          const double qik = q(i, k);
          grad[i] += lp * qik * qik;
        }
    }
    for (int i = 0; i < n; ++i) theta -= target_diag * yy[i];
  };

  auto eval_theta_only = [&](const Vector& yy) {
    SymMatrix a = gs;
    for (int i = 0; i < n; ++i) a.set(i, i, gs(i, i) + yy[i]);
    const Vector l = sym_eigvals(a, exec);
    double th = 0.0;
    for (double lv : l) {
      const double lp = std::max(lv, 0.0);
      th += 0.5 * lp * lp;
    }
    for (int i = 0; i < n; ++i) th -= target_diag * yy[i];
    return th;
  };

  JacobianScratch ws;
  ws.resize(n);
  NcmResult res;
  res.prescale = scale;

  eval_full(y);
  int outer = 0;
  const int cg_cap = std::max(10, 2 * n);
  constexpr double kArmijoSigma = 1e-4;

  while (true) {
    const double grad_inf = scale * norm_inf(grad);
    if (grad_inf <= tol) {
      res.converged = true;
      break;
    }
    if (outer >= max_outer) break;
    ++outer;

    const Matrix om = lowner_weights(lam);
    const double eps = std::min(1e-6, 0.1 * norm2(grad)) + 1e-12;
    bool cg_ok = false;
    Vector d = cg_direction(q, om, grad, eps, cg_rel_tol, cg_cap, ws, exec, cg_ok);
    double gd = dot(grad, d);
    if (!cg_ok || !(gd < 0.0)) {
      d = scaled(grad, -1.0);
      gd = -dot(grad, grad);
    }

    // Near the minimum the true decrease drops below the roundoff in theta
    // itself; without this slack the line search rejects every step and the
    // quadratic tail never happens.
    const double theta_noise = 1e-14 * (1.0 + std::abs(theta));
    bool accepted = false;
    bool retried_gradient = false;
    for (;;) {
      double t = 1.0;
      for (int ls = 0; ls < 40; ++ls) {
        const Vector yt = add_scaled(y, t, d);
        if (eval_theta_only(yt) <= theta + kArmijoSigma * t * gd + theta_noise) {
          y = yt;
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (accepted || retried_gradient) break;
      // Newton direction failed the line search; one retry along -grad.
      retried_gradient = true;
      d = scaled(grad, -1.0);
      gd = -dot(grad, grad);
    }
    if (!accepted) break;
    eval_full(y);
  }

  // X = s * (G/s + Diag(y))_+ assembled from the last eigendecomposition;
  // positive scaling commutes with the eigenvalue clamp, so this equals
  // (G + Diag(s*y))_+ exactly.
  Vector lam_clamped(n);
  for (int k = 0; k < n; ++k) lam_clamped[k] = scale * std::max(lam[k], 0.0);
  std::vector<double> buf(static_cast<std::size_t>(n) * n);
  kern::sandwich_diag(q.data(), lam_clamped.data(), buf.data(), n, exec);
  res.x = SymMatrix::from_dense(n, buf);
  res.dual_y = scaled(y, scale);
  res.iterations = outer;
  // Diagonal deviation; eigenvalues are clamped, so PSD holds by
  // construction up to the reconstruction roundoff.
  res.residual = scale * norm_inf(grad);
  res.wall_time_s = seconds_since(t0);
  return res;
}

SymMatrix shrink_repair(const SymMatrix& x, Exec exec) {
  require_finite(x.flat(), "shrink_repair input");
  SymMatrix a = with_diag(x, 1.0);
  if (a.n() == 0) return a;
  const double lam = min_eigenvalue(a, exec);
  if (lam >= 0.0) return a;
  if (!(1.0 - lam > 0.0))
    throw ValidationError("shrink_repair: degenerate scaling, lambda >= 1");
  const double f = 1.0 / (1.0 - lam);
  SymMatrix out = SymMatrix::identity(a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = i + 1; j < a.n(); ++j) out.set(i, j, f * a(i, j));
  return out;
}

Matrix gram_normalize(const SymMatrix& x, double rank_tol, Exec exec) {
  Matrix v = gram_factor(x, rank_tol, exec);
  const int n = v.rows;
  if (v.cols == 0) v = Matrix(n, 1, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = 0; k < v.cols; ++k) s += v(i, k) * v(i, k);
    s = std::sqrt(s);
    if (s < 1e-10) {
      for (int k = 0; k < v.cols; ++k) v(i, k) = 0.0;
      v(i, 0) = 1.0;
    } else {
      for (int k = 0; k < v.cols; ++k) v(i, k) /= s;
    }
  }
  return v;
}

}  // namespace projopt
