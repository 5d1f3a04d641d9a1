#pragma once

#include "l0newt/core.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

namespace l0newt {

/// The T x T block of a Hessian, given either as a dense matrix or as a
/// matrix-vector product. Dense realization is always available but may be
/// expensive for the operator form.
class RestrictedHessian {
 public:
  using Apply = std::function<void(const Vector& v, Vector& out)>;

  RestrictedHessian(IndexSet T, Matrix dense);
  RestrictedHessian(IndexSet T, Apply apply);

  const IndexSet& index_set() const { return T_; }
  Index dim() const { return T_.size(); }
  bool has_dense() const { return dense_.has_value(); }

  Vector apply(const Vector& v) const;
  /// Dense T x T matrix; assembled column by column from apply() when the
  /// operator form was given.
  Matrix dense() const;

 private:
  IndexSet T_;
  std::optional<Matrix> dense_;
  Apply apply_;
};

/// Value, gradient and restricted-Hessian access to a twice differentiable f.
class ObjectiveOracle {
 public:
  virtual ~ObjectiveOracle() = default;

  virtual Index dimension() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual std::pair<double, Vector> value_and_gradient(const Vector& x) const {
    return {value(x), gradient(x)};
  }
  /// Dense form when |T| <= dense_cutoff(), operator form otherwise.
  RestrictedHessian sub_hessian(const Vector& x, const IndexSet& T) const;
  virtual RestrictedHessian sub_hessian_dense(const Vector& x, const IndexSet& T) const = 0;
  virtual RestrictedHessian sub_hessian_operator(const Vector& x, const IndexSet& T) const = 0;

  /// |T| above which sub_hessian returns the operator form.
  Index dense_cutoff() const { return dense_cutoff_; }
  void set_dense_cutoff(Index c) { dense_cutoff_ = c; }

 protected:
  void check_point(const Vector& x) const;
  void check_set(const IndexSet& T) const;

 private:
  Index dense_cutoff_ = 2000;
};

/// f(x) = 0.5 ||Ax - y||^2 with A dense (m x n) or the composed product B*C
/// (B: rows x inner, C: inner x n), never materialized in full.
class LeastSquaresOracle final : public ObjectiveOracle {
 public:
  LeastSquaresOracle(Matrix A, Vector y);
  LeastSquaresOracle(Matrix B, Matrix C, Vector y);

  bool composed() const { return composed_; }
  Index rows() const { return y_.size(); }
  const Vector& observation() const { return y_; }

  /// A x without materializing A in the composed form.
  Vector apply(const Vector& x) const;
  /// A^T r.
  Vector apply_transpose(const Vector& r) const;
  /// Columns A_{:,T}.
  Matrix columns(const IndexSet& T) const;

  Index dimension() const override { return n_; }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  std::pair<double, Vector> value_and_gradient(const Vector& x) const override;
  // A_{:,T}^T A_{:,T}; independent of x.
  RestrictedHessian sub_hessian_dense(const Vector& x, const IndexSet& T) const override;
  RestrictedHessian sub_hessian_operator(const Vector& x, const IndexSet& T) const override;

 private:
  bool composed_ = false;
  Matrix A_;  // dense form, or B in composed form
  Matrix C_;  // composed form only
  Vector y_;
  Index n_ = 0;
};

struct NcpDerivatives {
  double da = 0, db = 0, daa = 0, dab = 0, dbb = 0;
};

/// phi(a, b) = a_+^2 b_+^2 + (-a)_+^2 + (-b)_+^2.
double ncp_phi(double a, double b);
/// First and second partials of phi; second derivatives use the one-sided
/// convention (t_+^2)'' = 2 for t > 0 and 0 for t <= 0.
NcpDerivatives ncp_phi_derivs(double a, double b);

/// f(x) = sum_i phi(x_i, (Mx + q)_i) for the linear complementarity problem
/// x >= 0, Mx + q >= 0, <x, Mx + q> = 0.
class NcpLcpOracle final : public ObjectiveOracle {
 public:
  NcpLcpOracle(Matrix M, Vector q);

  const Matrix& M() const { return M_; }
  const Vector& q() const { return q_; }

  Index dimension() const override { return q_.size(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  std::pair<double, Vector> value_and_gradient(const Vector& x) const override;
  RestrictedHessian sub_hessian_dense(const Vector& x, const IndexSet& T) const override;
  RestrictedHessian sub_hessian_operator(const Vector& x, const IndexSet& T) const override;

 private:
  struct Partials {
    Vector da, db, daa, dab, dbb;
  };
  Partials partials(const Vector& x) const;

  Matrix M_;
  Vector q_;
};

struct LipschitzOptions {
  int iters = 50;
  std::uint64_t seed = 0x5eed;
  double floor = 1e-12;
};

/// Power-iteration estimate of the largest eigenvalue of the Hessian at
/// x_ref, using the full-space restricted Hessian. Returns a Rayleigh
/// quotient, so the estimate never exceeds the true value for PSD Hessians.
double estimate_lipschitz(const ObjectiveOracle& oracle, const Vector& x_ref,
                          const LipschitzOptions& opts = {});

}  // namespace l0newt
