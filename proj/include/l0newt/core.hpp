#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace l0newt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Error kinds raised by the library. All derive from std::runtime_error or
// std::invalid_argument so callers can catch broadly.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidParameters : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ConfigurationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DegenerateOrigin : std::domain_error {
  using std::domain_error::domain_error;
};

/// Throws InvalidInput if any entry of v is NaN or infinite.
void require_finite(const Vector& v, const char* what);

void require_same_size(const Vector& a, const Vector& b, const char* what);

/// Sorted, duplicate-free subset of {0, ..., ambient_n - 1}.
///
/// Indices are zero-based throughout the library. The text and JSON formats
/// emitted by the CLI are zero-based as well.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(Index ambient_n) : ambient_n_(ambient_n) {}
  /// Sorts and deduplicates; throws InvalidInput on out-of-range members.
  IndexSet(Index ambient_n, std::vector<Index> indices);
  IndexSet(Index ambient_n, std::initializer_list<Index> indices)
      : IndexSet(ambient_n, std::vector<Index>(indices)) {}

  static IndexSet full(Index ambient_n);

  Index ambient_n() const { return ambient_n_; }
  Index size() const { return static_cast<Index>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  const std::vector<Index>& indices() const { return indices_; }
  Index operator[](Index i) const { return indices_[static_cast<std::size_t>(i)]; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  bool contains(Index i) const;
  IndexSet complement() const;
  IndexSet set_difference(const IndexSet& other) const;
  bool is_subset_of(const IndexSet& other) const;

  /// Membership mask of length ambient_n.
  std::vector<char> mask() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  Index ambient_n_ = 0;
  std::vector<Index> indices_;
};

/// v restricted to the entries in T, in ascending index order.
Vector gather(const Vector& v, const IndexSet& T);
/// Writes values into out at the entries of T.
void scatter(const Vector& values, const IndexSet& T, Vector& out);

/// Step scale tau and penalty lambda of the l0 prox, with the derived
/// threshold sqrt(2 tau lambda).
class ThresholdParams {
 public:
  ThresholdParams(double tau, double lambda);

  double tau() const { return tau_; }
  double lambda() const { return lambda_; }
  double threshold() const { return threshold_; }

 private:
  double tau_;
  double lambda_;
  double threshold_;
};

/// Hard-thresholding prox of tau*lambda*||.||_0. Ties |z_i| == threshold
/// keep z_i.
Vector hard_threshold(const Vector& z, const ThresholdParams& p);

/// Exact nonzero pattern of x.
IndexSet support(const Vector& x);

/// {i : |x_i - tau g_i| >= sqrt(2 tau lambda)}.
IndexSet threshold_set(const Vector& x, const Vector& g, const ThresholdParams& p);

struct StationarityResidual {
  Vector stacked;  // [g_T ; x_Tbar], each block ascending
  double norm = 0.0;
};

StationarityResidual stationarity_residual(const Vector& x, const Vector& g, const IndexSet& T);

/// Norm of the residual only, without forming the stacked vector.
double stationarity_residual_norm(const Vector& x, const Vector& g, const IndexSet& T);

/// tau-stationarity test with absolute tolerance tol.
///
/// On supp(x): |g_i| <= tol and |x_i| >= sqrt(2 tau lambda) - tol.
/// Off supp(x): |g_i| <= sqrt(2 tau lambda) / tau + tol.
bool is_tau_stationary(const Vector& x, const Vector& g, const ThresholdParams& p, double tol);

}  // namespace l0newt
