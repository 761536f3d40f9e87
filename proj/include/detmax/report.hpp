// Run report assembly and serialization. Rendering is fully deterministic:
// fixed field order and 17-significant-digit doubles, so two identical runs
// produce byte-identical text once the timing section is excluded.
#pragma once

#include "detmax/oracle.hpp"
#include "detmax/solver.hpp"

#include <optional>
#include <string>

namespace detmax {

struct RunReport {
  std::vector<int> selected;
  double log_det = 0.0;  // 2 * log_vol of the selection
  int iterations = 0;
  std::vector<ExchangeRecord> history;
  Certificate certificate;
  std::optional<OptReport> oracle;
  double wall_seconds = 0.0;
};

RunReport make_report(const Solution& sol, const Certificate& cert,
                      const std::optional<OptReport>& oracle,
                      double wall_seconds);

std::string render_report(const RunReport& rep, bool include_timing = true);

}  // namespace detmax
