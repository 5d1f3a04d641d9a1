// l0newt command line: solve a single problem or run a benchmark sweep.

#include "l0newt/bench.hpp"
#include "l0newt/io.hpp"
#include "l0newt/oracles.hpp"
#include "l0newt/solver.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kConfigError = 2;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw l0newt::ConfigurationError("cannot write '" + path + "'");
  out << text;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse l0-regularized minimization by a modified block Newton method"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve one least-squares or LCP problem");
  std::string objective = "ls", matrix_path, rhs_path, x0_path, report_path, index_rule = "shifted";
  l0newt::SolverConfig cfg;
  double tau = 0.0, lambda = 0.0;
  solve_cmd->add_option("--objective", objective, "ls or lcp")
      ->check(CLI::IsMember({"ls", "lcp"}));
  solve_cmd->add_option("--matrix", matrix_path, "Matrix Market file (A or M)")->required();
  solve_cmd->add_option("--rhs", rhs_path, "Vector file (y or q)")->required();
  solve_cmd->add_option("--x0", x0_path, "Starting point vector file");
  auto* tau_opt = solve_cmd->add_option("--tau", tau);
  auto* lambda_opt = solve_cmd->add_option("--lambda", lambda);
  solve_cmd->add_option("--delta", cfg.delta);
  solve_cmd->add_option("--sigma", cfg.sigma);
  solve_cmd->add_option("--beta", cfg.beta);
  solve_cmd->add_option("--eps", cfg.epsilon);
  solve_cmd->add_option("--cap-d", cfg.cap_D);
  solve_cmd->add_option("--max-iter", cfg.max_iter);
  solve_cmd->add_option("--seed", cfg.seed);
  solve_cmd->add_option("--index-rule", index_rule, "shifted or two-step")
      ->check(CLI::IsMember({"shifted", "two-step"}));
  solve_cmd->add_option("--report", report_path, "Output JSON report")->required();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run randomized benchmark trials");
  std::string kind_name, sizes_arg, algorithms_arg = "mbnl0r,iht", out_path, json_path;
  int trials = 20;
  std::uint64_t base_seed = 42;
  l0newt::bench::BenchOptions bopts;
  double m_ratio = bopts.m_ratio;
  bench_cmd->add_option("--kind", kind_name, "e1|e2|e3|e4|e6")->required();
  bench_cmd->add_option("--n", sizes_arg, "Comma-separated problem sizes")->required();
  bench_cmd->add_option("--m-ratio", m_ratio);
  bench_cmd->add_option("--sparsity-ratio", bopts.sparsity_ratio);
  bench_cmd->add_option("--noise", bopts.noise);
  bench_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--algorithms", algorithms_arg);
  bench_cmd->add_option("--seed", base_seed);
  bench_cmd->add_option("--out", out_path, "CSV output")->required();
  bench_cmd->add_option("--json", json_path, "Optional JSON output");
  bench_cmd->add_flag("--timing", bopts.timing, "Measure wall time (breaks byte-identical output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  try {
    if (*solve_cmd) {
      if (*tau_opt) cfg.tau = tau;
      if (*lambda_opt) cfg.lambda = lambda;
      cfg.index_rule = l0newt::index_rule_from_string(index_rule);
      cfg.validate();

      const l0newt::Matrix A = l0newt::io::read_matrix_market_file(matrix_path);
      const l0newt::Vector b = l0newt::io::read_vector_file(rhs_path);
      std::unique_ptr<l0newt::ObjectiveOracle> oracle;
      if (objective == "ls") {
        oracle = std::make_unique<l0newt::LeastSquaresOracle>(A, b);
      } else {
        oracle = std::make_unique<l0newt::NcpLcpOracle>(A, b);
      }
      std::optional<l0newt::Vector> x0;
      if (!x0_path.empty()) x0 = l0newt::io::read_vector_file(x0_path);

      const auto report = l0newt::solve(*oracle, cfg, x0);
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
      write_file(report_path, l0newt::io::report_to_json(report, cfg));
      std::cout << "stop_reason=" << l0newt::to_string(report.stop_reason)
                << " iterations=" << report.iterations
                << " residual=" << report.final_residual
                << " support=" << l0newt::support(report.x_final).size() << '\n';
      return 0;
    }

    namespace bench = l0newt::bench;
    const auto kind = bench::kind_from_string(kind_name);
    std::vector<l0newt::Index> sizes;
    for (const auto& s : split_csv(sizes_arg)) {
      std::size_t pos = 0;
      long long v = std::stoll(s, &pos);
      if (pos != s.size() || v <= 0) throw l0newt::ConfigurationError("bad --n entry '" + s + "'");
      sizes.push_back(v);
    }
    if (sizes.empty()) throw l0newt::ConfigurationError("--n is empty");
    const auto algorithms = split_csv(algorithms_arg);
    for (const auto& a : algorithms) {
      if (a != "mbnl0r" && a != "iht") {
        throw l0newt::ConfigurationError("unknown algorithm '" + a + "'");
      }
    }
    if (algorithms.empty()) throw l0newt::ConfigurationError("--algorithms is empty");
    bopts.m_ratio = m_ratio;  // E6 always uses m = n/2
    bopts.solver.validate();

    const auto records = bench::run_trials(kind, sizes, trials, algorithms, bopts, base_seed);
    write_file(out_path, bench::emit_csv(records));
    if (!json_path.empty()) write_file(json_path, bench::emit_json(records));

    for (const auto& row : bench::averages(records)) {
      std::cout << row.algorithm << ' ' << row.kind << " n=" << row.n << " iter=" << row.iter
                << " res=" << bench::format_sci(row.res)
                << " converged=" << row.converged_fraction << '\n';
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
