#include "l0newt/bench.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace l0newt::bench {

namespace {
constexpr const char* kHeader =
    "algorithm,kind,n,m,s,trial,iter,time_s,res,fval,support_size,converged,seed";

std::string format_fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}
}  // namespace

std::string format_sci(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string emit_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream os;
  os << kHeader << '\n';
  for (const auto& r : records) {
    os << r.algorithm << ',' << r.kind << ',' << r.n << ',' << r.m << ',' << r.s << ','
       << r.trial << ',' << r.iter << ',' << format_fixed(r.time_s) << ',' << format_sci(r.res)
       << ',' << format_sci(r.fval) << ',' << r.support_size << ',' << (r.converged ? 1 : 0)
       << ',' << r.seed << '\n';
  }
  return os.str();
}

std::vector<ExperimentRecord> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kHeader) {
    throw InvalidInput("parse_csv: missing or unexpected header");
  }
  std::vector<ExperimentRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 13) throw InvalidInput("parse_csv: expected 13 fields, got " +
                                           std::to_string(f.size()));
    ExperimentRecord r;
    r.algorithm = f[0];
    r.kind = f[1];
    r.n = std::stoll(f[2]);
    r.m = std::stoll(f[3]);
    r.s = std::stoll(f[4]);
    r.trial = std::stoi(f[5]);
    r.iter = std::stoi(f[6]);
    r.time_s = std::stod(f[7]);
    r.res = std::stod(f[8]);
    r.fval = std::stod(f[9]);
    r.support_size = std::stoll(f[10]);
    r.converged = f[11] == "1";
    r.seed = std::stoull(f[12]);
    out.push_back(std::move(r));
  }
  return out;
}

std::string emit_json(const std::vector<ExperimentRecord>& records) {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records) {
    recs.push_back({{"algorithm", r.algorithm},
                    {"kind", r.kind},
                    {"n", r.n},
                    {"m", r.m},
                    {"s", r.s},
                    {"trial", r.trial},
                    {"iter", r.iter},
                    {"time_s", r.time_s},
                    {"res", number_or_null(r.res)},
                    {"fval", number_or_null(r.fval)},
                    {"support_size", r.support_size},
                    {"converged", r.converged},
                    {"seed", r.seed}});
  }
  nlohmann::json avg = nlohmann::json::array();
  for (const auto& a : averages(records)) {
    avg.push_back({{"algorithm", a.algorithm},
                   {"kind", a.kind},
                   {"n", a.n},
                   {"trials", a.trials},
                   {"iter", a.iter},
                   {"time_s", a.time_s},
                   {"res", number_or_null(a.res)},
                   {"res_text", format_sci(a.res)},
                   {"fval", number_or_null(a.fval)},
                   {"support_size", a.support_size},
                   {"converged_fraction", a.converged_fraction}});
  }
  nlohmann::json doc = {{"records", recs}, {"averages", avg}};
  return doc.dump(2) + "\n";
}

}  // namespace l0newt::bench
