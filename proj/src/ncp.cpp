#include "l0newt/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "dot.hpp"

namespace l0newt {

namespace {
inline double pos(double t) { return t > 0.0 ? t : 0.0; }
inline double ind(bool c) { return c ? 1.0 : 0.0; }
}  // namespace

double ncp_phi(double a, double b) {
  const double ap = pos(a), bp = pos(b), an = pos(-a), bn = pos(-b);
  return ap * ap * bp * bp + an * an + bn * bn;
}

NcpDerivatives ncp_phi_derivs(double a, double b) {
  const double ap = pos(a), bp = pos(b), an = pos(-a), bn = pos(-b);
  NcpDerivatives d;
  d.da = 2.0 * ap * bp * bp - 2.0 * an;
  d.db = 2.0 * ap * ap * bp - 2.0 * bn;
  d.daa = 2.0 * bp * bp * ind(a > 0.0) + 2.0 * ind(a < 0.0);
  d.dab = 4.0 * ap * bp;
  d.dbb = 2.0 * ap * ap * ind(b > 0.0) + 2.0 * ind(b < 0.0);
  return d;
}

NcpLcpOracle::NcpLcpOracle(Matrix M, Vector q) : M_(std::move(M)), q_(std::move(q)) {
  if (M_.rows() != M_.cols()) throw DimensionMismatch("NcpLcpOracle: M must be square");
  if (M_.rows() != q_.size()) throw DimensionMismatch("NcpLcpOracle: rows(M) != size(q)");
  if (!M_.allFinite()) throw InvalidInput("NcpLcpOracle: non-finite matrix entry");
  require_finite(q_, "NcpLcpOracle q");
}

double NcpLcpOracle::value(const Vector& x) const {
  check_point(x);
  const Vector b = M_ * x + q_;
  double s = 0.0;
  for (Index i = 0; i < x.size(); ++i) s += ncp_phi(x[i], b[i]);
  return s;
}

NcpLcpOracle::Partials NcpLcpOracle::partials(const Vector& x) const {
  check_point(x);
  const Index n = x.size();
  const Vector b = M_ * x + q_;
  Partials p{Vector(n), Vector(n), Vector(n), Vector(n), Vector(n)};
  for (Index i = 0; i < n; ++i) {
    const NcpDerivatives d = ncp_phi_derivs(x[i], b[i]);
    p.da[i] = d.da;
    p.db[i] = d.db;
    p.daa[i] = d.daa;
    p.dab[i] = d.dab;
    p.dbb[i] = d.dbb;
  }
  return p;
}

Vector NcpLcpOracle::gradient(const Vector& x) const { return value_and_gradient(x).second; }

std::pair<double, Vector> NcpLcpOracle::value_and_gradient(const Vector& x) const {
  check_point(x);
  const Index n = x.size();
  const Vector b = M_ * x + q_;
  Vector da(n), db(n);
  double s = 0.0;
  for (Index i = 0; i < n; ++i) {
    s += ncp_phi(x[i], b[i]);
    const NcpDerivatives d = ncp_phi_derivs(x[i], b[i]);
    da[i] = d.da;
    db[i] = d.db;
  }
  Vector g = da + M_.transpose() * db;
  return {s, std::move(g)};
}

// H_pq = daa_p [p == q] + dab_p M_pq + dab_q M_qp + sum_i dbb_i M_ip M_iq.
RestrictedHessian NcpLcpOracle::sub_hessian_dense(const Vector& x, const IndexSet& T) const {
  check_set(T);
  const Partials p = partials(x);
  const Index k = T.size();

  std::vector<Index> rows;
  for (Index i = 0; i < p.dbb.size(); ++i) {
    if (p.dbb[i] != 0.0) rows.push_back(i);
  }
  // Columns of diag(sqrt(dbb)) M_{R,T}, one contiguous column per member of T.
  Matrix W(static_cast<Index>(rows.size()), k);
  for (Index j = 0; j < k; ++j) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Index i = rows[r];
      W(static_cast<Index>(r), j) = std::sqrt(p.dbb[i]) * M_(i, T[j]);
    }
  }
  Matrix H = detail::fixed_gram(W);
  for (Index jq = 0; jq < k; ++jq) {
    const Index q = T[jq];
    for (Index jp = 0; jp <= jq; ++jp) {
      const Index pidx = T[jp];
      double v = p.dab[pidx] * M_(pidx, q) + p.dab[q] * M_(q, pidx);
      if (jp == jq) v += p.daa[q];
      H(jp, jq) += v;
      if (jp != jq) H(jq, jp) = H(jp, jq);
    }
  }
  return RestrictedHessian(T, std::move(H));
}

RestrictedHessian NcpLcpOracle::sub_hessian_operator(const Vector& x, const IndexSet& T) const {
  check_set(T);
  auto p = std::make_shared<Partials>(partials(x));
  return RestrictedHessian(T, [this, T, p](const Vector& v, Vector& out) {
    Vector w = Vector::Zero(q_.size());
    scatter(v, T, w);
    const Vector Mw = M_ * w;
    Vector full = p->daa.cwiseProduct(w) + p->dab.cwiseProduct(Mw) +
                  M_.transpose() * (p->dab.cwiseProduct(w) + p->dbb.cwiseProduct(Mw));
    out = gather(full, T);
  });
}

}  // namespace l0newt
