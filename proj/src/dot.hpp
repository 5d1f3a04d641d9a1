#pragma once

#include "l0newt/core.hpp"

namespace l0newt::detail {

// Fixed-order dot product. The summation order depends only on the length,
// so the same pair of columns gives a bitwise identical result wherever the
// columns live in memory.
inline double fixed_dot(const double* a, const double* b, Index n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  Index i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

// Gram matrix G^T G of the columns of G, exactly symmetric.
inline Matrix fixed_gram(const Matrix& G) {
  const Index k = G.cols();
  const Index m = G.rows();
  Matrix H(k, k);
  for (Index j = 0; j < k; ++j) {
    for (Index i = 0; i <= j; ++i) {
      const double v = fixed_dot(G.col(i).data(), G.col(j).data(), m);
      H(i, j) = v;
      H(j, i) = v;
    }
  }
  return H;
}

}  // namespace l0newt::detail
