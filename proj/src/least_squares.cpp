#include "l0newt/oracles.hpp"

#include "dot.hpp"

namespace l0newt {

LeastSquaresOracle::LeastSquaresOracle(Matrix A, Vector y)
    : composed_(false), A_(std::move(A)), y_(std::move(y)), n_(A_.cols()) {
  if (A_.rows() != y_.size()) throw DimensionMismatch("LeastSquaresOracle: rows(A) != size(y)");
  if (!A_.allFinite()) throw InvalidInput("LeastSquaresOracle: non-finite matrix entry");
  require_finite(y_, "LeastSquaresOracle observation");
}

LeastSquaresOracle::LeastSquaresOracle(Matrix B, Matrix C, Vector y)
    : composed_(true), A_(std::move(B)), C_(std::move(C)), y_(std::move(y)), n_(C_.cols()) {
  if (A_.cols() != C_.rows()) throw DimensionMismatch("LeastSquaresOracle: cols(B) != rows(C)");
  if (A_.rows() != y_.size()) throw DimensionMismatch("LeastSquaresOracle: rows(B) != size(y)");
  if (!A_.allFinite() || !C_.allFinite()) {
    throw InvalidInput("LeastSquaresOracle: non-finite matrix entry");
  }
  require_finite(y_, "LeastSquaresOracle observation");
}

Vector LeastSquaresOracle::apply(const Vector& x) const {
  check_point(x);
  if (composed_) {
    Vector inner = C_ * x;
    return A_ * inner;
  }
  return A_ * x;
}

Vector LeastSquaresOracle::apply_transpose(const Vector& r) const {
  if (r.size() != rows()) throw DimensionMismatch("LeastSquaresOracle::apply_transpose");
  if (composed_) {
    Vector inner = A_.transpose() * r;
    return C_.transpose() * inner;
  }
  return A_.transpose() * r;
}

Matrix LeastSquaresOracle::columns(const IndexSet& T) const {
  check_set(T);
  if (composed_) {
    Matrix CT(C_.rows(), T.size());
    for (Index j = 0; j < T.size(); ++j) CT.col(j) = C_.col(T[j]);
    return A_ * CT;
  }
  Matrix AT(A_.rows(), T.size());
  for (Index j = 0; j < T.size(); ++j) AT.col(j) = A_.col(T[j]);
  return AT;
}

double LeastSquaresOracle::value(const Vector& x) const {
  return 0.5 * (apply(x) - y_).squaredNorm();
}

Vector LeastSquaresOracle::gradient(const Vector& x) const {
  return apply_transpose(apply(x) - y_);
}

std::pair<double, Vector> LeastSquaresOracle::value_and_gradient(const Vector& x) const {
  const Vector r = apply(x) - y_;
  return {0.5 * r.squaredNorm(), apply_transpose(r)};
}

RestrictedHessian LeastSquaresOracle::sub_hessian_dense(const Vector& x, const IndexSet& T) const {
  check_point(x);
  return RestrictedHessian(T, detail::fixed_gram(columns(T)));
}

RestrictedHessian LeastSquaresOracle::sub_hessian_operator(const Vector& x,
                                                           const IndexSet& T) const {
  check_point(x);
  check_set(T);
  return RestrictedHessian(T, [this, T](const Vector& v, Vector& out) {
    Vector full = Vector::Zero(n_);
    scatter(v, T, full);
    out = gather(apply_transpose(apply(full)), T);
  });
}

}  // namespace l0newt
