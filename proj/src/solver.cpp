#include "l0newt/solver.hpp"

#include "l0newt/linear_solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace l0newt {

std::string_view to_string(DirectionKind k) {
  return k == DirectionKind::newton ? "newton" : "gradient";
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::residual:
      return "residual";
    case StopReason::max_iter:
      return "max_iter";
    case StopReason::line_search_fail:
      return "line_search_fail";
  }
  return "unknown";
}

std::string_view to_string(IndexRule r) {
  return r == IndexRule::shifted ? "shifted" : "two-step";
}

IndexRule index_rule_from_string(std::string_view s) {
  if (s == "shifted") return IndexRule::shifted;
  if (s == "two-step" || s == "two_step") return IndexRule::two_step;
  throw InvalidParameters("unknown index rule '" + std::string(s) + "'");
}

void SolverConfig::validate() const {
  auto fail = [](const std::string& msg) { throw InvalidParameters("SolverConfig: " + msg); };
  if (tau && !(*tau > 0.0)) fail("tau must be > 0");
  if (lambda && !(*lambda > 0.0)) fail("lambda must be > 0");
  if (!(delta > 0.0)) fail("delta must be > 0");
  if (!(sigma > 0.0 && sigma < 0.5)) fail("sigma must lie in (0, 1/2)");
  if (!(beta > 0.0 && beta < 1.0)) fail("beta must lie in (0, 1)");
  if (!(epsilon >= 0.0)) fail("epsilon must be >= 0");
  if (!(cap_D > 0.0)) fail("cap_D must be > 0");
  if (!(mu0 > 0.0)) fail("mu0 must be > 0");
  if (max_iter < 0) fail("max_iter must be >= 0");
  if (ls_max_backtracks < 1) fail("ls_max_backtracks must be >= 1");
  if (dense_cutoff < 0) fail("dense_cutoff must be >= 0");
  if (!(cg_tol > 0.0)) fail("cg_tol must be > 0");
  if (cg_max_iter < 0) fail("cg_max_iter must be >= 0");
  if (lipschitz_iters < 1) fail("lipschitz_iters must be >= 1");
  if (stagnation_window < 1) fail("stagnation_window must be >= 1");
}

IndexSelection select_index_set(const Vector& x, const Vector& g, const ThresholdParams& p,
                                const IndexSet& T_prev) {
  return select_index_set(x, g, p, T_prev, T_prev);
}

IndexSelection select_index_set(const Vector& x, const Vector& g, const ThresholdParams& p,
                                const IndexSet& T_prev, const IndexSet& fallback) {
  IndexSet fresh = threshold_set(x, g, p);
  const bool s_nonempty = !fresh.set_difference(T_prev).empty();
  if (s_nonempty) return {std::move(fresh), true};
  return {fallback, false};
}

double regularization(double residual_norm, double cap_D) {
  return std::min(residual_norm * residual_norm, cap_D);
}

std::optional<Vector> newton_direction(const ObjectiveOracle& oracle, const Vector& x,
                                       const Vector& g, const IndexSet& T, double mu,
                                       const DirectionOptions& opts) {
  require_same_size(x, g, "newton_direction");
  Vector d = -x;
  if (T.empty()) return d;
  const Vector rhs = -gather(g, T);
  LinearSolveResult sol;
  if (T.size() <= opts.dense_cutoff) {
    sol = solve_shifted_dense(oracle.sub_hessian_dense(x, T).dense(), mu, rhs, opts.cg_tol);
  } else {
    const int max_it =
        opts.cg_max_iter > 0 ? opts.cg_max_iter : static_cast<int>(10 * T.size());
    sol = solve_shifted_cg(oracle.sub_hessian_operator(x, T), mu, rhs, opts.cg_tol, max_it);
  }
  if (!sol.ok) return std::nullopt;
  scatter(sol.solution, T, d);
  return d;
}

bool descent_check(const Vector& g, const Vector& d, const Vector& x, const IndexSet& T,
                   double delta, double tau, double mu) {
  require_same_size(g, d, "descent_check");
  require_same_size(g, x, "descent_check");
  const auto in_T = T.mask();
  double gd_T = 0.0, dT2 = 0.0, d2 = 0.0, xTbar2 = 0.0;
  for (Index i = 0; i < g.size(); ++i) {
    d2 += d[i] * d[i];
    if (in_T[static_cast<std::size_t>(i)]) {
      gd_T += g[i] * d[i];
      dT2 += d[i] * d[i];
    } else {
      xTbar2 += x[i] * x[i];
    }
  }
  return gd_T <= -delta * d2 + xTbar2 / (4.0 * tau) - mu * dT2;
}

Vector gradient_direction(const Vector& g, const Vector& x, const IndexSet& T) {
  require_same_size(g, x, "gradient_direction");
  Vector d = -x;
  for (Index i : T) d[i] = -g[i];
  return d;
}

LineSearchResult line_search(const ObjectiveOracle& oracle, const Vector& x, double fval,
                             const Vector& g, const Vector& d, const IndexSet& T, double sigma,
                             double beta, int max_backtracks) {
  require_same_size(x, d, "line_search");
  require_same_size(x, g, "line_search");
  const double gd = g.dot(d);
  LineSearchResult out;
  Vector trial = Vector::Zero(x.size());
  double alpha = 1.0;
  for (int m = 0; m <= max_backtracks; ++m) {
    for (Index i : T) trial[i] = x[i] + alpha * d[i];
    const double f_trial = oracle.value(trial);
    const bool armijo = f_trial <= fval + sigma * alpha * gd;
    if (armijo && (gd < 0.0 || f_trial < fval)) {
      out.accepted = true;
      out.alpha = alpha;
      out.x_new = trial;
      out.f_new = f_trial;
      out.backtracks = m;
      return out;
    }
    alpha *= beta;
  }
  out.backtracks = max_backtracks;
  return out;
}

LambdaBounds lambda_bounds(const ObjectiveOracle& oracle, double tau) {
  if (!(tau > 0.0)) throw InvalidParameters("lambda_bounds: tau must be > 0");
  const Vector g0 = oracle.gradient(Vector::Zero(oracle.dimension()));
  LambdaBounds b;
  bool any = false;
  for (Index i = 0; i < g0.size(); ++i) {
    if (g0[i] == 0.0) continue;
    const double v = 0.5 * tau * g0[i] * g0[i];
    if (!any) {
      b.lower = b.upper = v;
      any = true;
    } else {
      b.lower = std::min(b.lower, v);
      b.upper = std::max(b.upper, v);
    }
  }
  if (!any) throw DegenerateOrigin("lambda_bounds: grad f(0) = 0, the origin is stationary");
  return b;
}

ResolvedParameters resolve_parameters(const ObjectiveOracle& oracle, const SolverConfig& cfg) {
  ResolvedParameters r;
  if (cfg.tau) {
    r.tau = *cfg.tau;
  } else {
    LipschitzOptions lo;
    lo.iters = cfg.lipschitz_iters;
    lo.seed = cfg.seed;
    r.lipschitz_estimate = estimate_lipschitz(oracle, Vector::Zero(oracle.dimension()), lo);
    r.tau = 1.0 / (4.0 * r.lipschitz_estimate);
  }
  try {
    const LambdaBounds b = lambda_bounds(oracle, r.tau);
    r.lambda_lower = b.lower;
    r.lambda_upper = b.upper;
  } catch (const DegenerateOrigin&) {
    if (!cfg.lambda) throw ConfigurationError(
        "lambda cannot be defaulted: grad f(0) = 0 so the lower lambda bound is undefined");
  }
  if (cfg.lambda) {
    r.lambda = *cfg.lambda;
    if (r.lambda_lower && r.lambda >= *r.lambda_lower) {
      std::ostringstream os;
      os << "lambda = " << r.lambda << " is not below the lower bound " << *r.lambda_lower;
      r.warnings.push_back(os.str());
    }
  } else {
    r.lambda = 0.1 * *r.lambda_lower;
  }
  return r;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

SolveReport solve(const ObjectiveOracle& oracle, const SolverConfig& cfg,
                  const std::optional<Vector>& x0) {
  cfg.validate();
  const Index n = oracle.dimension();
  Vector x = x0 ? *x0 : Vector::Zero(n);
  if (x.size() != n) throw DimensionMismatch("solve: x0 has the wrong size");
  require_finite(x, "solve x0");

  const ResolvedParameters params = resolve_parameters(oracle, cfg);
  const ThresholdParams tp(params.tau, params.lambda);

  SolveReport report;
  report.tau = params.tau;
  report.lambda = params.lambda;
  report.lipschitz_estimate = params.lipschitz_estimate;
  report.warnings = params.warnings;

  DirectionOptions dopts{cfg.dense_cutoff, cfg.cg_tol, cfg.cg_max_iter};

  const auto t0 = Clock::now();
  auto [fval, g] = oracle.value_and_gradient(x);
  IndexSet T_prev(n);        // T_{k-1}
  IndexSet T_prev_prev(n);   // T_{k-2}
  double last_residual = -1.0;
  int flat_count = 0;

  for (int k = 0;; ++k) {
    const IndexSet& fallback =
        (cfg.index_rule == IndexRule::two_step && !T_prev_prev.empty()) ? T_prev_prev
                                                                             : T_prev;
    IndexSelection sel = select_index_set(x, g, tp, T_prev, fallback);
    const IndexSet& T = sel.T;
    if (T.empty()) {
      throw ConfigurationError(
          "empty index set at the start point; lambda is too large (choose lambda below the "
          "lower bound " +
          (params.lambda_lower ? std::to_string(*params.lambda_lower) : std::string("n/a")) + ")");
    }
    const double res = stationarity_residual_norm(x, g, T);
    report.final_residual = res;
    report.final_index_set = T;

    if (res < cfg.epsilon) {
      report.converged = true;
      report.stop_reason = StopReason::residual;
      break;
    }
    if (last_residual >= 0.0) {
      const double rel = std::abs(res - last_residual) / std::max(last_residual, 1e-300);
      flat_count = rel < cfg.stagnation_rtol ? flat_count + 1 : 0;
      if (flat_count >= cfg.stagnation_window) {
        report.converged = true;
        report.stagnated = true;
        report.stop_reason = StopReason::residual;
        break;
      }
    }
    last_residual = res;
    if (k >= cfg.max_iter) {
      report.stop_reason = StopReason::max_iter;
      break;
    }

    const double mu = regularization(res, cfg.cap_D);
    DirectionKind kind = DirectionKind::newton;
    std::optional<Vector> d = newton_direction(oracle, x, g, T, mu, dopts);
    if (!d || !descent_check(g, *d, x, T, cfg.delta, params.tau, mu)) {
      d = gradient_direction(g, x, T);
      kind = DirectionKind::gradient;
    }

    LineSearchResult ls =
        line_search(oracle, x, fval, g, *d, T, cfg.sigma, cfg.beta, cfg.ls_max_backtracks);
    if (!ls.accepted) {
      report.stop_reason = StopReason::line_search_fail;
      break;
    }

    IterationRecord row;
    row.k = k;
    row.fval = fval;
    row.residual_norm = res;
    row.t_size = T.size();
    row.mu = mu;
    row.alpha = ls.alpha;
    row.direction_kind = kind;
    row.wall_time = seconds_since(t0);
    report.history.push_back(row);

    if (cfg.record_trace) {
      IterationTrace tr;
      tr.T = T;
      tr.x = x;
      tr.g = g;
      tr.d = *d;
      tr.directional_derivative = g.dot(*d);
      tr.f_new = ls.f_new;
      tr.new_indices = sel.s_nonempty;
      if (kind == DirectionKind::newton) {
        const Vector dT = gather(*d, T);
        tr.newton_residual =
            (oracle.sub_hessian(x, T).apply(dT) + mu * dT + gather(g, T)).norm();
      }
      report.trace.push_back(std::move(tr));
    }

    x = std::move(ls.x_new);
    std::tie(fval, g) = oracle.value_and_gradient(x);
    T_prev_prev = std::move(T_prev);
    T_prev = sel.T;
    report.iterations = k + 1;
  }

  report.x_final = std::move(x);
  report.final_fval = fval;
  return report;
}

SolveReport iht_baseline(const ObjectiveOracle& oracle, double tau, double lambda,
                         double epsilon, int max_iter, const std::optional<Vector>& x0) {
  const ThresholdParams tp(tau, lambda);
  const Index n = oracle.dimension();
  Vector x = x0 ? *x0 : Vector::Zero(n);
  if (x.size() != n) throw DimensionMismatch("iht_baseline: x0 has the wrong size");
  require_finite(x, "iht_baseline x0");

  SolveReport report;
  report.algorithm = "iht";
  report.tau = tau;
  report.lambda = lambda;
  const auto t0 = Clock::now();
  auto [fval, g] = oracle.value_and_gradient(x);

  for (int k = 0; k < max_iter; ++k) {
    const IndexSet T = threshold_set(x, g, tp);
    const double res = stationarity_residual_norm(x, g, T);
    Vector x_new = hard_threshold(x - tau * g, tp);
    const double step = (x_new - x).norm();

    IterationRecord row;
    row.k = k;
    row.fval = fval;
    row.residual_norm = res;
    row.t_size = T.size();
    row.mu = 0.0;
    row.alpha = 1.0;
    row.direction_kind = DirectionKind::gradient;
    row.wall_time = seconds_since(t0);
    report.history.push_back(row);

    x = std::move(x_new);
    std::tie(fval, g) = oracle.value_and_gradient(x);
    report.iterations = k + 1;
    if (step < epsilon) {
      report.converged = true;
      report.stop_reason = StopReason::residual;
      break;
    }
  }
  if (!report.converged) report.stop_reason = StopReason::max_iter;
  const IndexSet T = threshold_set(x, g, tp);
  report.final_index_set = T;
  report.final_residual = stationarity_residual_norm(x, g, T);
  report.final_fval = fval;
  report.x_final = std::move(x);
  return report;
}

}  // namespace l0newt
