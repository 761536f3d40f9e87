#include "detmax/report.hpp"

#include "json_out.hpp"

namespace detmax {
namespace {

std::string int_list(const std::vector<int>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

}  // namespace

RunReport make_report(const Solution& sol, const Certificate& cert,
                      const std::optional<OptReport>& oracle,
                      double wall_seconds) {
  RunReport rep;
  rep.selected = sol.selected;
  rep.log_det = 2.0 * sol.log_vol;
  rep.iterations = sol.iterations;
  rep.history = sol.history;
  rep.certificate = cert;
  rep.oracle = oracle;
  rep.wall_seconds = wall_seconds;
  return rep;
}

std::string render_report(const RunReport& rep, bool include_timing) {
  using jsonout::number;
  std::string out = "{\n";
  out += "  \"schema_version\": " + std::to_string(kSchemaVersion) + ",\n";
  out += "  \"selected\": " + int_list(rep.selected) + ",\n";
  out += "  \"log_det\": " + number(rep.log_det) + ",\n";
  out += "  \"iterations\": " + std::to_string(rep.iterations) + ",\n";
  out += "  \"exchange_history\": [";
  for (size_t i = 0; i < rep.history.size(); ++i) {
    const ExchangeRecord& r = rep.history[i];
    out += i ? ",\n    " : "\n    ";
    out += "{\"stage\": " + std::to_string(r.stage) +
           ", \"hops\": " + std::to_string(r.hops) +
           ", \"pre_log_vol\": " + number(r.pre_log_vol) +
           ", \"post_log_vol\": " + number(r.post_log_vol) + "}";
  }
  out += rep.history.empty() ? "],\n" : "\n  ],\n";
  out += "  \"certificate\": {\"certified\": ";
  out += rep.certificate.certified ? "true" : "false";
  out += ", \"log_bound\": " + number(rep.certificate.log_bound) + "}";
  if (rep.oracle) {
    out += ",\n  \"oracle\": {\"opt_set\": " + int_list(rep.oracle->opt_set) +
           ", \"opt_log_vol\": " +
           (rep.oracle->opt_log_vol == kNegInf
                ? std::string("null")
                : number(rep.oracle->opt_log_vol)) +
           ", \"basis_count\": " + std::to_string(rep.oracle->basis_count) +
           "}";
  }
  if (include_timing)
    out += ",\n  \"timing\": {\"wall_seconds\": " + number(rep.wall_seconds) +
           "}";
  out += "\n}\n";
  return out;
}

}  // namespace detmax
