#include "l0newt/bench.hpp"
#include "l0newt/rng.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <map>

namespace l0newt::bench {

// Picked by desk-scale sweeps (n = 1000-2000) as the scale with the smallest
// median recovery error. A fixed lambda from x0 = 0 cannot recover small
// entries, so these are compromises rather than recovery guarantees.
double default_lambda_scale(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::E1:
    case ProblemKind::E4:
      return 0.03;
    case ProblemKind::E2:
    case ProblemKind::E3:
      return 0.05;
    case ProblemKind::E6:
      return 0.02;
  }
  return 0.03;
}

// Same as the solver default tau = 1 / (4 L_hat).
double default_tau_scale(ProblemKind) { return 0.25; }

Index default_m(ProblemKind kind, Index n, double m_ratio) {
  if (kind == ProblemKind::E6) return std::max<Index>(1, n / 2);
  return std::max<Index>(1, static_cast<Index>(std::llround(m_ratio * double(n))));
}

std::uint64_t trial_seed(std::uint64_t base_seed, ProblemKind kind, Index n, int trial) {
  return hash_seed({base_seed, static_cast<std::uint64_t>(kind), static_cast<std::uint64_t>(n),
                    static_cast<std::uint64_t>(trial)});
}

SolverConfig instance_config(const ProblemInstance& inst, const BenchOptions& opts) {
  SolverConfig cfg = opts.solver;
  const ObjectiveOracle& f = *inst.oracle;
  if (!cfg.tau) {
    LipschitzOptions lo;
    lo.iters = cfg.lipschitz_iters;
    lo.seed = cfg.seed;
    const double L = estimate_lipschitz(f, Vector::Zero(f.dimension()), lo);
    cfg.tau = opts.tau_scale.value_or(default_tau_scale(inst.kind)) / L;
  }
  if (!cfg.lambda) {
    const LambdaBounds b = lambda_bounds(f, *cfg.tau);
    cfg.lambda = opts.lambda_scale.value_or(default_lambda_scale(inst.kind)) * b.upper;
  }
  return cfg;
}

SolveReport run_algorithm(const std::string& algorithm, const ProblemInstance& inst,
                          const SolverConfig& cfg, const BenchOptions& opts) {
  if (algorithm == "mbnl0r") return solve(*inst.oracle, cfg);
  if (algorithm == "iht") {
    return iht_baseline(*inst.oracle, cfg.tau.value(), cfg.lambda.value(), cfg.epsilon,
                        opts.iht_max_iter.value_or(cfg.max_iter));
  }
  throw InvalidParameters("unknown algorithm '" + algorithm + "'");
}

ExperimentRecord make_record(const std::string& algorithm, const ProblemInstance& inst, int trial,
                             const SolveReport& report, double time_s) {
  ExperimentRecord r;
  r.algorithm = algorithm;
  r.kind = std::string(to_string(inst.kind));
  r.n = inst.n;
  r.m = inst.m;
  r.s = inst.s_star;
  r.trial = trial;
  r.iter = report.iterations;
  r.time_s = time_s;
  r.res = (report.x_final - inst.x_star).norm();
  r.fval = report.final_fval;
  r.support_size = support(report.x_final).size();
  r.converged = report.converged;
  r.seed = inst.seed;
  return r;
}

std::vector<ExperimentRecord> run_trials(ProblemKind kind, const std::vector<Index>& sizes,
                                         int trials, const std::vector<std::string>& algorithms,
                                         const BenchOptions& opts, std::uint64_t base_seed) {
  if (trials < 1) throw InvalidParameters("run_trials: trials must be >= 1");
  using Clock = std::chrono::steady_clock;
  std::vector<ExperimentRecord> out;
  bool warmed_up = false;
  for (Index n : sizes) {
    const Index m = default_m(kind, n, opts.m_ratio);
    const Index s = std::max<Index>(1, static_cast<Index>(std::llround(opts.sparsity_ratio * n)));
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t seed = trial_seed(base_seed, kind, n, t);
      ProblemInstance inst = make_instance(kind, n, m, s, opts.noise, seed);
      for (const std::string& alg : algorithms) {
        ExperimentRecord rec;
        try {
          const SolverConfig cfg = instance_config(inst, opts);
          if (opts.timing && !warmed_up) {
            (void)run_algorithm(alg, inst, cfg, opts);
            warmed_up = true;
          }
          const auto t0 = Clock::now();
          const SolveReport report = run_algorithm(alg, inst, cfg, opts);
          const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
          rec = make_record(alg, inst, t, report, opts.timing ? elapsed : 0.0);
        } catch (const std::exception&) {
          rec.algorithm = alg;
          rec.kind = std::string(to_string(kind));
          rec.n = n;
          rec.m = m;
          rec.s = s;
          rec.trial = t;
          rec.res = std::numeric_limits<double>::quiet_NaN();
          rec.fval = std::numeric_limits<double>::quiet_NaN();
          rec.converged = false;
          rec.seed = seed;
        }
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

std::vector<AverageRow> averages(const std::vector<ExperimentRecord>& records) {
  std::vector<AverageRow> rows;
  std::map<std::pair<std::string, Index>, std::size_t> slot;
  std::vector<double> iter_sum;
  for (const auto& r : records) {
    auto key = std::make_pair(r.algorithm + "/" + r.kind, r.n);
    auto [it, inserted] = slot.emplace(key, rows.size());
    if (inserted) {
      AverageRow a;
      a.algorithm = r.algorithm;
      a.kind = r.kind;
      a.n = r.n;
      rows.push_back(a);
      iter_sum.push_back(0.0);
    }
    AverageRow& a = rows[it->second];
    a.trials += 1;
    iter_sum[it->second] += r.iter;
    a.time_s += r.time_s;
    a.res += r.res;
    a.fval += r.fval;
    a.support_size += double(r.support_size);
    a.converged_fraction += r.converged ? 1.0 : 0.0;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    AverageRow& a = rows[i];
    const double t = a.trials;
    a.iter = std::lround(iter_sum[i] / t);
    a.time_s /= t;
    a.res /= t;
    a.fval /= t;
    a.support_size /= t;
    a.converged_fraction /= t;
  }
  return rows;
}

}  // namespace l0newt::bench
