#include "l0newt/oracles.hpp"

namespace l0newt {

RestrictedHessian::RestrictedHessian(IndexSet T, Matrix dense)
    : T_(std::move(T)), dense_(std::move(dense)) {
  if (dense_->rows() != T_.size() || dense_->cols() != T_.size()) {
    throw DimensionMismatch("RestrictedHessian: dense block does not match |T|");
  }
}

RestrictedHessian::RestrictedHessian(IndexSet T, Apply apply)
    : T_(std::move(T)), apply_(std::move(apply)) {}

Vector RestrictedHessian::apply(const Vector& v) const {
  if (v.size() != dim()) throw DimensionMismatch("RestrictedHessian::apply");
  if (dense_) return (*dense_) * v;
  Vector out(dim());
  apply_(v, out);
  return out;
}

Matrix RestrictedHessian::dense() const {
  if (dense_) return *dense_;
  const Index k = dim();
  Matrix H(k, k);
  Vector e = Vector::Zero(k);
  Vector col(k);
  for (Index j = 0; j < k; ++j) {
    e[j] = 1.0;
    apply_(e, col);
    H.col(j) = col;
    e[j] = 0.0;
  }
  // Products formed through apply() agree with the transpose only up to
  // rounding; average so the realization is exactly symmetric.
  Matrix Hs = 0.5 * (H + H.transpose());
  return Hs;
}

RestrictedHessian ObjectiveOracle::sub_hessian(const Vector& x, const IndexSet& T) const {
  if (T.size() <= dense_cutoff_) return sub_hessian_dense(x, T);
  return sub_hessian_operator(x, T);
}

void ObjectiveOracle::check_point(const Vector& x) const {
  if (x.size() != dimension()) {
    throw DimensionMismatch("oracle: point has size " + std::to_string(x.size()) +
                            ", expected " + std::to_string(dimension()));
  }
}

void ObjectiveOracle::check_set(const IndexSet& T) const {
  if (T.ambient_n() != dimension()) {
    throw DimensionMismatch("oracle: index set ambient size " + std::to_string(T.ambient_n()) +
                            ", expected " + std::to_string(dimension()));
  }
}

}  // namespace l0newt
