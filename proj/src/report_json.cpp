#include "l0newt/io.hpp"

#include <json.hpp>

#include <cmath>

namespace l0newt::io {

namespace {
nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}
}  // namespace

std::string report_to_json(const SolveReport& report, const SolverConfig& cfg) {
  using nlohmann::json;
  json config = {{"algorithm", report.algorithm},
                 {"tau", report.tau},
                 {"lambda", report.lambda},
                 {"delta", cfg.delta},
                 {"sigma", cfg.sigma},
                 {"beta", cfg.beta},
                 {"epsilon", cfg.epsilon},
                 {"cap_D", cfg.cap_D},
                 {"mu0", cfg.mu0},
                 {"max_iter", cfg.max_iter},
                 {"ls_max_backtracks", cfg.ls_max_backtracks},
                 {"dense_cutoff", cfg.dense_cutoff},
                 {"cg_tol", cfg.cg_tol},
                 {"cg_max_iter", cfg.cg_max_iter},
                 {"seed", cfg.seed},
                 {"index_rule", std::string(to_string(cfg.index_rule))},
                 {"lipschitz_estimate", report.lipschitz_estimate}};

  json history = json::array();
  for (const auto& r : report.history) {
    history.push_back({{"k", r.k},
                       {"fval", finite_or_null(r.fval)},
                       {"residual_norm", finite_or_null(r.residual_norm)},
                       {"t_size", r.t_size},
                       {"mu", r.mu},
                       {"alpha", r.alpha},
                       {"direction_kind", std::string(to_string(r.direction_kind))},
                       {"wall_time", r.wall_time}});
  }
  json x = json::array();
  for (Index i = 0; i < report.x_final.size(); ++i) x.push_back(report.x_final[i]);

  json doc = {{"config", config},
              {"stop_reason", std::string(to_string(report.stop_reason))},
              {"converged", report.converged},
              {"stagnated", report.stagnated},
              {"iterations", report.iterations},
              {"final_fval", finite_or_null(report.final_fval)},
              {"final_residual", finite_or_null(report.final_residual)},
              {"x_final", x},
              {"history", history},
              {"warnings", report.warnings}};
  return doc.dump(2) + "\n";
}

}  // namespace l0newt::io
