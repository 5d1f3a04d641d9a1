#include "l0newt/bench.hpp"
#include "l0newt/rng.hpp"

#include <cctype>
#include <cmath>
#include <numeric>

namespace l0newt::bench {

namespace {
enum Stream : std::uint64_t { kMatrixA = 1, kSignal = 2, kNoise = 3, kMatrixB = 4, kMatrixC = 5 };

std::uint64_t stream_seed(std::uint64_t seed, Stream s) { return hash_seed({seed, s}); }

void require_shape(bool ok, const std::string& msg) {
  if (!ok) throw InvalidParameters("make_instance: " + msg);
}
}  // namespace

std::string_view to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::E1:
      return "E1";
    case ProblemKind::E2:
      return "E2";
    case ProblemKind::E3:
      return "E3";
    case ProblemKind::E4:
      return "E4";
    case ProblemKind::E6:
      return "E6";
  }
  return "?";
}

ProblemKind kind_from_string(std::string_view s) {
  std::string u(s);
  for (char& c : u) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (u == "E1") return ProblemKind::E1;
  if (u == "E2") return ProblemKind::E2;
  if (u == "E3") return ProblemKind::E3;
  if (u == "E4") return ProblemKind::E4;
  if (u == "E6") return ProblemKind::E6;
  throw InvalidParameters("unknown problem kind '" + std::string(s) + "'");
}

Matrix gen_gaussian(Index rows, Index cols, std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw InvalidParameters("gen_gaussian: rows and cols must be >= 1");
  Rng rng(seed);
  Matrix G(rows, cols);
  double* p = G.data();
  for (Index i = 0; i < rows * cols; ++i) p[i] = rng.normal();
  return G;
}

Vector gen_signal(Index n, Index s_star, std::uint64_t seed) {
  if (s_star < 1 || s_star > n) throw InvalidParameters("gen_signal: need 1 <= s_star <= n");
  Rng rng(seed);
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  // Partial Fisher-Yates: the first s_star slots form a uniform subset.
  for (Index i = 0; i < s_star; ++i) {
    const Index j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  Vector x = Vector::Zero(n);
  for (Index i = 0; i < s_star; ++i) {
    double v = 0.0;
    while (v == 0.0) v = rng.normal();
    x[perm[static_cast<std::size_t>(i)]] = v;
  }
  return x;
}

ProblemInstance make_instance(ProblemKind kind, Index n, Index m, Index s_star, double noise,
                              std::uint64_t seed) {
  require_shape(n >= 1, "n must be >= 1");
  require_shape(s_star >= 1 && s_star <= n, "need 1 <= s_star <= n");
  require_shape(noise >= 0.0, "noise must be >= 0");
  ProblemInstance inst;
  inst.kind = kind;
  inst.n = n;
  inst.m = m;
  inst.s_star = s_star;
  inst.seed = seed;
  inst.noise = (kind == ProblemKind::E3 || kind == ProblemKind::E4) ? noise : 0.0;

  switch (kind) {
    case ProblemKind::E1:
    case ProblemKind::E4: {
      require_shape(m >= 1 && m < n, "E1/E4 need 1 <= m < n");
      Matrix A = gen_gaussian(m, n, stream_seed(seed, kMatrixA)) / std::sqrt(double(m));
      inst.x_star = gen_signal(n, s_star, stream_seed(seed, kSignal));
      Vector y = A * inst.x_star;
      if (kind == ProblemKind::E4) {
        Rng rng(stream_seed(seed, kNoise));
        for (Index i = 0; i < m; ++i) y[i] += inst.noise * rng.normal();
      }
      inst.oracle = std::make_shared<LeastSquaresOracle>(std::move(A), std::move(y));
      break;
    }
    case ProblemKind::E2:
    case ProblemKind::E3: {
      require_shape(m >= 1 && m <= n, "E2/E3 need 1 <= m <= n");
      Matrix B = gen_gaussian(n, m, stream_seed(seed, kMatrixB)) / std::sqrt(double(n));
      Matrix C = gen_gaussian(m, n, stream_seed(seed, kMatrixC)) / std::sqrt(double(m));
      inst.x_star = gen_signal(n, s_star, stream_seed(seed, kSignal));
      Vector y = B * (C * inst.x_star);
      if (kind == ProblemKind::E3) {
        Rng rng(stream_seed(seed, kNoise));
        for (Index i = 0; i < n; ++i) y[i] += inst.noise * rng.normal();
      }
      inst.oracle =
          std::make_shared<LeastSquaresOracle>(std::move(B), std::move(C), std::move(y));
      break;
    }
    case ProblemKind::E6: {
      require_shape(m >= 1 && m <= n, "E6 needs 1 <= m <= n");
      Matrix Z = gen_gaussian(n, m, stream_seed(seed, kMatrixA));
      for (Index j = 0; j < m; ++j) Z.col(j).normalize();
      Matrix M = Matrix::Zero(n, n);
      M.selfadjointView<Eigen::Lower>().rankUpdate(Z);
      M.triangularView<Eigen::StrictlyUpper>() = M.transpose();
      inst.x_star = gen_signal(n, s_star, stream_seed(seed, kSignal)).cwiseAbs();
      const Vector Mx = M * inst.x_star;
      Vector q(n);
      for (Index i = 0; i < n; ++i) q[i] = inst.x_star[i] > 0.0 ? -Mx[i] : std::abs(Mx[i]);
      inst.oracle = std::make_shared<NcpLcpOracle>(std::move(M), std::move(q));
      break;
    }
  }
  return inst;
}

}  // namespace l0newt::bench
