#pragma once

#include "l0newt/oracles.hpp"

namespace l0newt {

struct LinearSolveResult {
  Vector solution;
  bool ok = false;
  double relative_residual = 0.0;  // ||(H + mu I) x - b|| / max(1, ||b||)
  int iterations = 0;
};

/// Solves (H + mu I) x = b by Cholesky. ok is false when the factorization
/// breaks down or the residual stays above tol after one refinement sweep.
LinearSolveResult solve_shifted_dense(const Matrix& H, double mu, const Vector& b, double tol);

/// Conjugate gradients on (H + mu I) x = b through H.apply(). ok is false on
/// non-positive curvature or when max_iter is exhausted above tol.
LinearSolveResult solve_shifted_cg(const RestrictedHessian& H, double mu, const Vector& b,
                                   double tol, int max_iter);

}  // namespace l0newt
