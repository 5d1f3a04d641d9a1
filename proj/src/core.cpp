#include "l0newt/core.hpp"

#include <algorithm>
#include <cmath>

namespace l0newt {

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw InvalidInput(std::string(what) + ": non-finite entry");
  }
}

void require_same_size(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size()) {
    throw DimensionMismatch(std::string(what) + ": size " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  }
}

IndexSet::IndexSet(Index ambient_n, std::vector<Index> indices)
    : ambient_n_(ambient_n), indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  if (!indices_.empty() && (indices_.front() < 0 || indices_.back() >= ambient_n_)) {
    throw InvalidInput("IndexSet: index out of range [0, " + std::to_string(ambient_n_) + ")");
  }
}

IndexSet IndexSet::full(Index ambient_n) {
  IndexSet T(ambient_n);
  T.indices_.resize(static_cast<std::size_t>(ambient_n));
  for (Index i = 0; i < ambient_n; ++i) T.indices_[static_cast<std::size_t>(i)] = i;
  return T;
}

bool IndexSet::contains(Index i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

IndexSet IndexSet::complement() const {
  IndexSet out(ambient_n_);
  out.indices_.reserve(static_cast<std::size_t>(ambient_n_ - size()));
  auto it = indices_.begin();
  for (Index i = 0; i < ambient_n_; ++i) {
    if (it != indices_.end() && *it == i) {
      ++it;
    } else {
      out.indices_.push_back(i);
    }
  }
  return out;
}

IndexSet IndexSet::set_difference(const IndexSet& other) const {
  IndexSet out(ambient_n_);
  std::set_difference(indices_.begin(), indices_.end(), other.indices_.begin(),
                      other.indices_.end(), std::back_inserter(out.indices_));
  return out;
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
  return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(),
                       indices_.end());
}

std::vector<char> IndexSet::mask() const {
  std::vector<char> m(static_cast<std::size_t>(ambient_n_), 0);
  for (Index i : indices_) m[static_cast<std::size_t>(i)] = 1;
  return m;
}

Vector gather(const Vector& v, const IndexSet& T) {
  Vector out(T.size());
  for (Index j = 0; j < T.size(); ++j) out[j] = v[T[j]];
  return out;
}

void scatter(const Vector& values, const IndexSet& T, Vector& out) {
  for (Index j = 0; j < T.size(); ++j) out[T[j]] = values[j];
}

ThresholdParams::ThresholdParams(double tau, double lambda) : tau_(tau), lambda_(lambda) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidParameters("tau must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidParameters("lambda must be positive");
  threshold_ = std::sqrt(2.0 * tau_ * lambda_);
}

Vector hard_threshold(const Vector& z, const ThresholdParams& p) {
  require_finite(z, "hard_threshold");
  const double t = p.threshold();
  Vector out(z.size());
  for (Index i = 0; i < z.size(); ++i) out[i] = std::abs(z[i]) >= t ? z[i] : 0.0;
  return out;
}

IndexSet support(const Vector& x) {
  std::vector<Index> idx;
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) idx.push_back(i);
  }
  return IndexSet(x.size(), std::move(idx));
}

IndexSet threshold_set(const Vector& x, const Vector& g, const ThresholdParams& p) {
  require_same_size(x, g, "threshold_set");
  const double t = p.threshold();
  std::vector<Index> idx;
  for (Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i] - p.tau() * g[i]) >= t) idx.push_back(i);
  }
  return IndexSet(x.size(), std::move(idx));
}

StationarityResidual stationarity_residual(const Vector& x, const Vector& g, const IndexSet& T) {
  require_same_size(x, g, "stationarity_residual");
  if (T.ambient_n() != x.size()) throw DimensionMismatch("stationarity_residual: index set size");
  StationarityResidual r;
  r.stacked.resize(x.size());
  Index pos = 0;
  for (Index i : T) r.stacked[pos++] = g[i];
  for (Index i : T.complement()) r.stacked[pos++] = x[i];
  r.norm = r.stacked.norm();
  return r;
}

double stationarity_residual_norm(const Vector& x, const Vector& g, const IndexSet& T) {
  require_same_size(x, g, "stationarity_residual_norm");
  if (T.ambient_n() != x.size()) throw DimensionMismatch("stationarity_residual: index set size");
  const auto in_T = T.mask();
  double acc = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    const double v = in_T[static_cast<std::size_t>(i)] ? g[i] : x[i];
    acc += v * v;
  }
  return std::sqrt(acc);
}

bool is_tau_stationary(const Vector& x, const Vector& g, const ThresholdParams& p, double tol) {
  require_same_size(x, g, "is_tau_stationary");
  const double t = p.threshold();
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) {
      if (std::abs(g[i]) > tol || std::abs(x[i]) < t - tol) return false;
    } else if (std::abs(g[i]) > t / p.tau() + tol) {
      return false;
    }
  }
  return true;
}

}  // namespace l0newt
