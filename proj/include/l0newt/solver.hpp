#pragma once

#include "l0newt/core.hpp"
#include "l0newt/oracles.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace l0newt {

enum class DirectionKind { newton, gradient };
enum class StopReason { residual, max_iter, line_search_fail };

/// How T_k is chosen when the fresh threshold set brings no new index.
///   shifted:       T_k = T_{k-1}
///   two_step:      T_k = T_{k-2} (two-step lookback)
enum class IndexRule { shifted, two_step };

std::string_view to_string(DirectionKind k);
std::string_view to_string(StopReason r);
std::string_view to_string(IndexRule r);
IndexRule index_rule_from_string(std::string_view s);

struct SolverConfig {
  // Unset tau resolves to 1 / (4 L_hat); unset lambda to 0.1 * lambda_lower.
  std::optional<double> tau;
  std::optional<double> lambda;
  double delta = 1e-4;
  double sigma = 1e-4;
  double beta = 0.5;
  double epsilon = 1e-6;
  double cap_D = 0.1;
  double mu0 = 0.1;
  int max_iter = 2000;
  int ls_max_backtracks = 50;
  Index dense_cutoff = 2000;
  double cg_tol = 1e-10;
  int cg_max_iter = 0;  // 0 means 10 * |T|
  std::uint64_t seed = 0;
  IndexRule index_rule = IndexRule::shifted;
  int lipschitz_iters = 50;
  // Stop when ||F|| changes by less than stagnation_rtol (relative) for
  // stagnation_window consecutive iterations.
  int stagnation_window = 5;
  double stagnation_rtol = 1e-14;
  // Keep per-iteration (T_k, x^k, d^k, ...) in the report.
  bool record_trace = false;

  /// Throws InvalidParameters when a field is out of range.
  void validate() const;
};

/// One row of the per-iteration history. Row k describes the step taken
/// from x^k: fval = f(x^k), residual_norm = ||F_tau(x^k; T_k)||.
struct IterationRecord {
  int k = 0;
  double fval = 0.0;
  double residual_norm = 0.0;
  Index t_size = 0;
  double mu = 0.0;
  double alpha = 0.0;
  DirectionKind direction_kind = DirectionKind::newton;
  double wall_time = 0.0;  // seconds since the start of the solve
};

struct IterationTrace {
  IndexSet T;
  Vector x;  // x^k
  Vector g;  // gradient at x^k
  Vector d;  // accepted direction
  double directional_derivative = 0.0;  // <g, d>
  double f_new = 0.0;
  bool new_indices = false;  // S_k nonempty
  double newton_residual = 0.0;  // ||(H_T + mu I) d_T + g_T||, newton rows only
};

struct SolveReport {
  std::string algorithm = "mbnl0r";
  Vector x_final;
  bool converged = false;
  bool stagnated = false;
  int iterations = 0;
  StopReason stop_reason = StopReason::max_iter;
  std::vector<IterationRecord> history;
  double final_fval = 0.0;
  double final_residual = 0.0;
  IndexSet final_index_set;
  double tau = 0.0;
  double lambda = 0.0;
  double lipschitz_estimate = 0.0;
  std::vector<std::string> warnings;
  std::vector<IterationTrace> trace;  // filled only with record_trace
};

struct IndexSelection {
  IndexSet T;
  bool s_nonempty = false;
};

/// T~ = threshold_set(x, g, p), S = T~ \ T_prev; T = T~ if S is nonempty,
/// otherwise fallback (T_prev for the shifted rule).
IndexSelection select_index_set(const Vector& x, const Vector& g, const ThresholdParams& p,
                                const IndexSet& T_prev);
IndexSelection select_index_set(const Vector& x, const Vector& g, const ThresholdParams& p,
                                const IndexSet& T_prev, const IndexSet& fallback);

/// min(residual_norm^2, cap_D).
double regularization(double residual_norm, double cap_D);

struct DirectionOptions {
  Index dense_cutoff = 2000;
  double cg_tol = 1e-10;
  int cg_max_iter = 0;
};

/// Regularized restricted Newton direction:
///   (H_TT + mu I) d_T = -g_T,  d_Tbar = -x_Tbar.
/// Returns nullopt when the shifted system is not positive definite or the
/// solve misses its tolerance (the indefinite_system signal).
std::optional<Vector> newton_direction(const ObjectiveOracle& oracle, const Vector& x,
                                       const Vector& g, const IndexSet& T, double mu,
                                       const DirectionOptions& opts);

/// <g_T, d_T> <= -delta ||d||^2 + ||x_Tbar||^2 / (4 tau) - mu ||d_T||^2.
bool descent_check(const Vector& g, const Vector& d, const Vector& x, const IndexSet& T,
                   double delta, double tau, double mu);

/// d_T = -g_T, d_Tbar = -x_Tbar.
Vector gradient_direction(const Vector& g, const Vector& x, const IndexSet& T);

struct LineSearchResult {
  bool accepted = false;
  double alpha = 0.0;
  Vector x_new;
  double f_new = 0.0;
  int backtracks = 0;  // m
};

/// Backtracking on the T-block only; the T-complement of every trial point
/// is exactly zero. Accepts the smallest m in [0, max_backtracks] with
/// f(x(beta^m)) <= f(x) + sigma beta^m <g, d>, and, when <g, d> >= 0, also
/// f(x(beta^m)) < f(x).
LineSearchResult line_search(const ObjectiveOracle& oracle, const Vector& x, double fval,
                             const Vector& g, const Vector& d, const IndexSet& T, double sigma,
                             double beta, int max_backtracks);

/// tau and lambda after applying defaults, with the quantities they came from.
struct ResolvedParameters {
  double tau = 0.0;
  double lambda = 0.0;
  double lipschitz_estimate = 0.0;  // 0 when tau was user-set
  std::optional<double> lambda_lower;
  std::optional<double> lambda_upper;
  std::vector<std::string> warnings;
};

ResolvedParameters resolve_parameters(const ObjectiveOracle& oracle, const SolverConfig& cfg);

/// The modified block Newton method for min f(x) + lambda ||x||_0.
SolveReport solve(const ObjectiveOracle& oracle, const SolverConfig& cfg,
                  const std::optional<Vector>& x0 = std::nullopt);

/// Iterative hard thresholding x <- hard_threshold(x - tau grad f(x)); stops
/// when ||x_new - x|| < epsilon.
SolveReport iht_baseline(const ObjectiveOracle& oracle, double tau, double lambda,
                         double epsilon, int max_iter,
                         const std::optional<Vector>& x0 = std::nullopt);

struct LambdaBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// lower = min (tau/2) g_i(0)^2 over g_i(0) != 0; upper = max (tau/2) g_i(0)^2.
/// Throws DegenerateOrigin when grad f(0) = 0.
LambdaBounds lambda_bounds(const ObjectiveOracle& oracle, double tau);

struct TheoryConstants {
  double alpha_bar = 0.0;
  double tau_bar = 0.0;
  double rho = 0.0;
};

/// Step-size floor, admissible tau bound and descent modulus of the global
/// convergence analysis. rho is evaluated at the given tau.
TheoryConstants theory_constants(double L, double delta, double sigma, double beta, Index n,
                                 double nu, double cap_D, double tau);

/// Largest admissible nu for the given alpha_bar, beta and sigma.
double nu_upper_bound(double alpha_bar, double beta, double sigma);

}  // namespace l0newt
