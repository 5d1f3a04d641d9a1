#include "l0newt/oracles.hpp"
#include "l0newt/rng.hpp"

#include <algorithm>

namespace l0newt {

double estimate_lipschitz(const ObjectiveOracle& oracle, const Vector& x_ref,
                          const LipschitzOptions& opts) {
  if (opts.iters < 1) throw InvalidParameters("estimate_lipschitz: iters must be >= 1");
  const Index n = oracle.dimension();
  const RestrictedHessian H = oracle.sub_hessian_operator(x_ref, IndexSet::full(n));

  Rng rng(opts.seed);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.normal();
  v.normalize();

  double estimate = 0.0;
  for (int it = 0; it < opts.iters; ++it) {
    Vector w = H.apply(v);
    estimate = v.dot(w);
    const double nw = w.norm();
    if (!(nw > 0.0)) return opts.floor;
    v = w / nw;
  }
  return std::max(estimate, opts.floor);
}

}  // namespace l0newt
