#include "detmax/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>

namespace detmax {
namespace {

struct GroundSwap {
  std::vector<int> removed;
  std::vector<int> added;
  std::vector<NodeFlavor> added_flavors;
};

GroundSwap project_cycle(const XGraph& g, const Cycle& c) {
  GroundSwap out;
  std::vector<std::pair<int, NodeFlavor>> in;
  for (int id : c.nodes) {
    const XNode& nd = g.nodes.at(id);
    if (nd.left)
      in.emplace_back(nd.element, nd.flavor);
    else
      out.removed.push_back(nd.element);
  }
  std::sort(in.begin(), in.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::sort(out.removed.begin(), out.removed.end());
  for (const auto& [e, fl] : in) {
    out.added.push_back(e);
    out.added_flavors.push_back(fl);
  }
  return out;
}

int default_iteration_cap(const VectorSet& vs, const MatroidSpec& m) {
  const Instance probe{vs, m, std::nullopt};
  const auto bits = 8 * serialize_instance(probe).size();
  return static_cast<int>(
      std::min<size_t>(64 * bits, std::numeric_limits<int>::max() / 2));
}

Solution solve_core(const VectorSet& vs, const MatroidSpec& m,
                    const SolverConfig& cfg, bool two_stage) {
  m.validate();
  if (vs.count() != m.ground_size)
    throw std::invalid_argument("solve: ground size mismatch");
  const int r = matroid_rank(m);
  if (r < 1) throw std::invalid_argument("solve: matroid rank must be >= 1");
  if (r > vs.dim())
    throw std::invalid_argument("solve: matroid rank exceeds dimension");

  std::vector<int> s;
  if (cfg.start_basis) {
    s = *cfg.start_basis;
    std::sort(s.begin(), s.end());
    if (static_cast<int>(s.size()) != r || !is_independent(m, s) ||
        log_volume(vs, s, cfg.eps_rank) == kNegInf)
      throw std::invalid_argument(
          "solve: start basis must be an independent basis with positive "
          "volume");
  } else {
    auto found = find_common_basis(m, vs, cfg.eps_rank);
    if (!found)
      throw infeasible_error(
          "no independent basis spans a positive volume");
    s = std::move(*found);
  }

  const int cap =
      cfg.max_iterations > 0 ? cfg.max_iterations : default_iteration_cap(vs, m);
  const FSchedule f_std = FSchedule::standard(r);
  const FSchedule f_aug = FSchedule::augmented(r);
  std::ostream* tr =
      cfg.trace ? (cfg.trace_out ? cfg.trace_out : &std::cerr) : nullptr;

  Solution sol;
  sol.initial = s;
  for (;;) {
    XGraph g = build_standard(vs, m, s, cfg.eps_rank);
    std::optional<Cycle> c = find_minimal_violating(g, f_std);
    int stage = 1;
    if (!c && two_stage) {
      g = build_augmented(vs, m, s, cfg.eps_rank);
      c = find_minimal_violating(g, f_aug);
      stage = 2;
    }
    if (!c) break;
    if (sol.iterations >= cap) {
      sol.capped = true;
      break;
    }
    const double pre = log_volume(vs, s, cfg.eps_rank);
    std::vector<int> next = exchange_step(vs, m, s, g, *c, cfg.eps_rank);
    const double post = log_volume(vs, next, cfg.eps_rank);

    ExchangeRecord rec;
    rec.stage = stage;
    rec.hops = c->hops();
    rec.pre_log_vol = pre;
    rec.post_log_vol = post;
    GroundSwap swap = project_cycle(g, *c);
    rec.removed = std::move(swap.removed);
    rec.added = std::move(swap.added);
    rec.added_flavors = std::move(swap.added_flavors);
    sol.history.push_back(std::move(rec));
    ++sol.iterations;
    if (tr) {
      char line[128];
      std::snprintf(line, sizeof(line), "iter=%d stage=%d hops=%d dlogvol=%.9g",
                    sol.iterations, stage, c->hops(), post - pre);
      *tr << line << "\n";
    }
    s = std::move(next);
  }
  sol.selected = s;
  sol.log_vol = log_volume(vs, s, cfg.eps_rank);
  return sol;
}

}  // namespace

std::vector<int> exchange_step(const VectorSet& vs, const MatroidSpec& m,
                               std::span<const int> s, const XGraph& g,
                               const Cycle& c, double eps_rank) {
  const GroundSwap swap = project_cycle(g, c);
  if (swap.added.size() != swap.removed.size())
    throw invariant_error("exchange: in/out sizes differ");
  for (size_t i = 1; i < swap.added.size(); ++i)
    if (swap.added[i] == swap.added[i - 1])
      throw invariant_error("exchange: candidate enters twice");

  std::vector<int> next(s.begin(), s.end());
  for (int e : swap.removed) {
    const auto it = std::find(next.begin(), next.end(), e);
    if (it == next.end())
      throw invariant_error("exchange: removed element not selected");
    next.erase(it);
  }
  for (int e : swap.added) {
    if (std::find(next.begin(), next.end(), e) != next.end())
      throw invariant_error("exchange: added element already selected");
    next.push_back(e);
  }
  std::sort(next.begin(), next.end());

  if (!is_independent(m, next))
    throw invariant_error("exchange: result not independent");
  const double pre = log_volume(vs, s, eps_rank);
  const double post = log_volume(vs, next, eps_rank);
  if (!(post - pre >= std::log(2.0) - kDoublingSlack))
    throw invariant_error("exchange: volume gain below the doubling bound");
  return next;
}

Solution solve_rank_d(const VectorSet& vs, const MatroidSpec& m,
                      const SolverConfig& cfg) {
  if (matroid_rank(m) != vs.dim())
    throw std::invalid_argument(
        "solve_rank_d: matroid rank must equal the dimension");
  return solve_core(vs, m, cfg, false);
}

Solution solve_rank_r(const VectorSet& vs, const MatroidSpec& m,
                      const SolverConfig& cfg) {
  return solve_core(vs, m, cfg, true);
}

double guarantee_log_bound(int r, int d) {
  if (r == d) return 5.0 * d * std::log(static_cast<double>(d));
  const double log_ftilde =
      r == 1 ? std::log(2.0) : 11.0 * std::lgamma(r + 1.0);
  return 2.0 * r * std::log(static_cast<double>(r)) + log_ftilde;
}

Certificate certify(const VectorSet& vs, const MatroidSpec& m,
                    const Solution& sol, double eps_rank) {
  const int r = static_cast<int>(sol.selected.size());
  Certificate cert;
  cert.log_bound = guarantee_log_bound(r, vs.dim());
  if (sol.capped || r == 0) return cert;

  XGraph g = build_standard(vs, m, sol.selected, eps_rank);
  bool clean = !find_minimal_violating(g, FSchedule::standard(r));
  if (clean && r < vs.dim()) {
    XGraph ga = build_augmented(vs, m, sol.selected, eps_rank);
    clean = !find_minimal_violating(ga, FSchedule::augmented(r));
  }
  cert.certified = clean;
  return cert;
}

}  // namespace detmax
