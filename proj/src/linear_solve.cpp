#include "l0newt/linear_solve.hpp"

#include <Eigen/Cholesky>
#include <algorithm>

namespace l0newt {

namespace {
double scaled_residual(const Matrix& K, const Vector& x, const Vector& b) {
  return (K * x - b).norm() / std::max(1.0, b.norm());
}
}  // namespace

LinearSolveResult solve_shifted_dense(const Matrix& H, double mu, const Vector& b, double tol) {
  LinearSolveResult out;
  if (H.rows() == 0) {
    out.solution = Vector(0);
    out.ok = true;
    return out;
  }
  Matrix K = H;
  K.diagonal().array() += mu;
  Eigen::LLT<Matrix> llt(K);
  if (llt.info() != Eigen::Success) return out;
  out.solution = llt.solve(b);
  out.iterations = 1;
  out.relative_residual = scaled_residual(K, out.solution, b);
  if (out.relative_residual > tol) {
    out.solution += llt.solve(b - K * out.solution);
    out.iterations = 2;
    out.relative_residual = scaled_residual(K, out.solution, b);
  }
  out.ok = out.solution.allFinite() && out.relative_residual <= tol;
  return out;
}

LinearSolveResult solve_shifted_cg(const RestrictedHessian& H, double mu, const Vector& b,
                                   double tol, int max_iter) {
  LinearSolveResult out;
  const Index k = b.size();
  out.solution = Vector::Zero(k);
  const double scale = std::max(1.0, b.norm());
  Vector r = b;
  Vector p = r;
  double rr = r.squaredNorm();
  for (int it = 0; it < max_iter; ++it) {
    if (std::sqrt(rr) / scale <= tol) break;
    const Vector Kp = H.apply(p) + mu * p;
    const double curv = p.dot(Kp);
    if (!(curv > 0.0)) return out;
    const double step = rr / curv;
    out.solution += step * p;
    r -= step * Kp;
    const double rr_next = r.squaredNorm();
    p = r + (rr_next / rr) * p;
    rr = rr_next;
    out.iterations = it + 1;
  }
  // Recompute the true residual; the recursive one drifts.
  out.relative_residual = (H.apply(out.solution) + mu * out.solution - b).norm() / scale;
  out.ok = out.solution.allFinite() && out.relative_residual <= tol;
  return out;
}

}  // namespace l0newt
