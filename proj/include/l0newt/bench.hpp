#pragma once

#include "l0newt/core.hpp"
#include "l0newt/oracles.hpp"
#include "l0newt/solver.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace l0newt::bench {

enum class ProblemKind { E1, E2, E3, E4, E6 };

std::string_view to_string(ProblemKind k);
ProblemKind kind_from_string(std::string_view s);  // accepts "e1" / "E1"

/// rows x cols matrix of i.i.d. N(0, 1) draws from Rng(seed), filled
/// column-major.
Matrix gen_gaussian(Index rows, Index cols, std::uint64_t seed);

/// Exactly s_star nonzeros at a uniformly random subset, values N(0, 1).
Vector gen_signal(Index n, Index s_star, std::uint64_t seed);

struct ProblemInstance {
  ProblemKind kind = ProblemKind::E1;
  std::shared_ptr<const ObjectiveOracle> oracle;
  Vector x_star;
  Index n = 0;
  Index m = 0;
  Index s_star = 0;
  double noise = 0.0;
  std::uint64_t seed = 0;
};

/// Builds one benchmark problem.
///   E1: y = A x*, A (m x n) Gaussian scaled by 1/sqrt(m).
///   E2: y = B C x*, B (n x m) / sqrt(n), C (m x n) / sqrt(m).
///   E3: E2 plus noise * xi.
///   E4: E1 plus noise * xi.
///   E6: M = Z Z^T with Z (n x m) Gaussian, unit-norm columns; x* >= 0 with
///       |N(0,1)| values; q_i = -(M x*)_i on supp(x*), |(M x*)_i| elsewhere.
/// noise is ignored for E1, E2 and E6.
ProblemInstance make_instance(ProblemKind kind, Index n, Index m, Index s_star, double noise,
                              std::uint64_t seed);

struct ExperimentRecord {
  std::string algorithm;
  std::string kind;
  Index n = 0;
  Index m = 0;
  Index s = 0;
  int trial = 0;
  int iter = 0;
  double time_s = 0.0;
  double res = 0.0;
  double fval = 0.0;
  Index support_size = 0;
  bool converged = false;
  std::uint64_t seed = 0;

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

struct AverageRow {
  std::string algorithm;
  std::string kind;
  Index n = 0;
  int trials = 0;
  long iter = 0;  // mean rounded to the nearest integer
  double time_s = 0.0;
  double res = 0.0;
  double fval = 0.0;
  double support_size = 0.0;
  double converged_fraction = 0.0;
};

struct BenchOptions {
  double m_ratio = 0.25;        // m = round(m_ratio * n)
  double sparsity_ratio = 0.01; // s* = round(sparsity_ratio * n), at least 1
  double noise = 0.001;
  SolverConfig solver;
  // lambda = lambda_scale * lambda_upper when solver.lambda is unset; the
  // default scale depends on the problem kind (see default_lambda_scale).
  std::optional<double> lambda_scale;
  // tau = tau_scale / L_hat when solver.tau is unset.
  std::optional<double> tau_scale;
  std::optional<int> iht_max_iter;
  bool timing = false;  // measure wall time (one discarded warm-up solve)
};

double default_lambda_scale(ProblemKind kind);
double default_tau_scale(ProblemKind kind);
/// Default m for a kind: m_ratio * n for E1-E4, n / 2 for E6.
Index default_m(ProblemKind kind, Index n, double m_ratio);

/// Seed of one trial instance.
std::uint64_t trial_seed(std::uint64_t base_seed, ProblemKind kind, Index n, int trial);

/// Solver configuration used for one instance: fills tau and lambda from the
/// bench scaling rules unless the options pin them.
SolverConfig instance_config(const ProblemInstance& inst, const BenchOptions& opts);

/// Runs one algorithm ("mbnl0r" or "iht") on an instance.
SolveReport run_algorithm(const std::string& algorithm, const ProblemInstance& inst,
                          const SolverConfig& cfg, const BenchOptions& opts);

ExperimentRecord make_record(const std::string& algorithm, const ProblemInstance& inst, int trial,
                             const SolveReport& report, double time_s);

std::vector<ExperimentRecord> run_trials(ProblemKind kind, const std::vector<Index>& sizes,
                                         int trials, const std::vector<std::string>& algorithms,
                                         const BenchOptions& opts, std::uint64_t base_seed);

std::vector<AverageRow> averages(const std::vector<ExperimentRecord>& records);

/// Scientific notation with three significant digits, e.g. 9.14e-03.
std::string format_sci(double v);

std::string emit_csv(const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> parse_csv(const std::string& text);
std::string emit_json(const std::vector<ExperimentRecord>& records);

}  // namespace l0newt::bench
