// Violating-cycle search on an exchange graph.
//
// A cycle C (alternating forward/backward arcs, 2y hops) violates the
// schedule when w0(C) < -log f(y). The staged finder runs source-by-source
// hop-bounded Bellman-Ford under the stage-shifted weights; because
// log f(i)/i is nondecreasing, the first stage that sees a negative closed
// walk yields a violating simple cycle with no violating strict-subset
// cycle (all shorter cycles were cleared by earlier stages).
#pragma once

#include "detmax/xgraph.hpp"

#include <optional>
#include <span>
#include <vector>

namespace detmax {

struct Cycle {
  // Closed alternating vertex sequence, rotated to start at the smallest
  // left node id; nodes[k] -> nodes[k+1] and nodes.back() -> nodes.front()
  // are arcs of the graph.
  std::vector<int> nodes;
  double w0 = 0.0;  // sum of arc w0 along the cycle

  int hops() const { return static_cast<int>(nodes.size()); }
};

// Sum of arc w0 along the closed sequence; +infinity when any arc is absent.
double cycle_w0(const XGraph& g, std::span<const int> nodes);

// First-closed simple cycle of a closed walk (walk.front() == source, the
// closing arc back to front is implicit). Scans forward and cuts at the
// first vertex repetition; the tail outside the cycle is discarded.
std::vector<int> extract_simple_cycle(std::span<const int> walk);

// Staged search. Stage i in 1..ell_max relaxes the stage-i weights for
// exactly 2i synchronous rounds from every source (ascending node id;
// among equal-distance relaxations the lower-id predecessor wins). On a
// negative self-distance the negative closed walk is reconstructed from
// round-indexed predecessors and decomposed in first-closed order; the
// first subcycle that violates the schedule is returned, rotated to
// canonical form. Returns nullopt when no stage finds a violation.
std::optional<Cycle> find_minimal_violating(const XGraph& g,
                                            const FSchedule& sched);

// Exhaustive oracle: every simple alternating cycle with at most max_hops
// hops that violates the schedule, each listed once in canonical rotation,
// in lexicographic discovery order. Exponential; test-scale graphs only.
std::vector<Cycle> enumerate_violating(const XGraph& g,
                                       const FSchedule& sched, int max_hops);

}  // namespace detmax
