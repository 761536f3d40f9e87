// Local search: repeatedly exchange along a violating cycle until none
// remains. Each accepted exchange must multiply the selected volume by at
// least 2; termination therefore needs at most logarithmically many steps,
// and a final graph with no violating cycle certifies the volume guarantee.
#pragma once

#include "detmax/cycles.hpp"
#include "detmax/instance.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace detmax {

// No basis of the matroid has positive volume.
class infeasible_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal guarantee failed (broken exchange, lost independence, ...).
class invariant_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every accepted exchange must gain at least log 2 - kDoublingSlack.
inline constexpr double kDoublingSlack = 1e-9;

struct ExchangeRecord {
  int stage = 0;  // 1 = standard graph, 2 = augmented graph
  int hops = 0;
  double pre_log_vol = 0.0;
  double post_log_vol = 0.0;
  std::vector<int> removed;  // ground ids leaving the selection, ascending
  std::vector<int> added;    // ground ids entering, ascending
  std::vector<NodeFlavor> added_flavors;  // aligned with added
};

struct Solution {
  std::vector<int> selected;  // ascending
  double log_vol = 0.0;
  int iterations = 0;  // executed exchanges
  bool capped = false;
  std::vector<int> initial;  // starting basis, ascending
  std::vector<ExchangeRecord> history;
};

struct SolverConfig {
  // 0 selects the default cap: 64 * bit-length of the serialized instance,
  // far beyond what volume doubling allows, so it only trips on bugs.
  int max_iterations = 0;
  double eps_rank = kDefaultEpsRank;
  bool trace = false;                  // "iter=K stage=S hops=H dlogvol=X"
  std::ostream* trace_out = nullptr;   // stderr when null
  std::optional<std::vector<int>> start_basis;
};

// Requires matroid_rank(m) == vs.dim(); single-stage search on the
// standard graph.
Solution solve_rank_d(const VectorSet& vs, const MatroidSpec& m,
                      const SolverConfig& cfg = {});

// General rank: stage 1 searches the standard graph, stage 2 the augmented
// graph; the first stage that finds a violating cycle drives the exchange.
Solution solve_rank_r(const VectorSet& vs, const MatroidSpec& m,
                      const SolverConfig& cfg = {});

// Applies the ground projection of cycle c to s. Throws invariant_error
// when the swap is malformed, breaks matroid independence, or fails the
// volume-doubling guarantee.
std::vector<int> exchange_step(const VectorSet& vs, const MatroidSpec& m,
                               std::span<const int> s, const XGraph& g,
                               const Cycle& c,
                               double eps_rank = kDefaultEpsRank);

struct Certificate {
  bool certified = false;
  double log_bound = 0.0;  // log of the guaranteed vol(OPT)/vol(S) factor
};

// log of the worst-case vol(OPT)/vol(selected) factor at termination:
// 5 d log d at full rank, 2 r log r + log ftilde(r) below it.
double guarantee_log_bound(int r, int d);

// Rebuilds the exchange graphs at sol.selected and re-runs the cycle
// search; certified means no violating cycle remains (and the run was not
// iteration-capped).
Certificate certify(const VectorSet& vs, const MatroidSpec& m,
                    const Solution& sol, double eps_rank = kDefaultEpsRank);

}  // namespace detmax
