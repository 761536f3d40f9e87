#include "detmax/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace detmax {
namespace {

// Splits a closed walk (implicit closing arc back to walk.front()) into
// simple cycles, in the order each one closes. Every walk arc lands in
// exactly one piece.
std::vector<std::vector<int>> decompose_walk(std::span<const int> walk) {
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  std::vector<int> pos_of;  // node id -> stack position, -1 when absent
  int max_id = 0;
  for (int v : walk) max_id = std::max(max_id, v);
  pos_of.assign(max_id + 1, -1);

  for (int v : walk) {
    const int p = pos_of[v];
    if (p >= 0) {
      out.emplace_back(stack.begin() + p, stack.end());
      while (static_cast<int>(stack.size()) > p + 1) {
        pos_of[stack.back()] = -1;
        stack.pop_back();
      }
    } else {
      pos_of[v] = static_cast<int>(stack.size());
      stack.push_back(v);
    }
  }
  if (!stack.empty()) out.push_back(std::move(stack));
  return out;
}

// Rotate so the smallest left node id leads. Left nodes get the lowest ids
// at construction, so the smallest id on the cycle is a left node.
std::vector<int> canonical_rotation(const XGraph& g, std::vector<int> nodes) {
  const auto it = std::min_element(nodes.begin(), nodes.end());
  if (!g.nodes.at(*it).left)
    throw std::logic_error("cycle: smallest node is not a left vertex");
  std::rotate(nodes.begin(), nodes.begin() + (it - nodes.begin()),
              nodes.end());
  return nodes;
}

bool violates(const FSchedule& sched, int hops, double w0) {
  if (hops < 2 || hops % 2 != 0) return false;
  const int ell = hops / 2;
  if (ell > sched.ell_max()) return false;
  return w0 < -sched.log_f(ell);
}

}  // namespace

double cycle_w0(const XGraph& g, std::span<const int> nodes) {
  double acc = 0.0;
  for (size_t k = 0; k < nodes.size(); ++k) {
    const double w = g.arc_w0(nodes[k], nodes[(k + 1) % nodes.size()]);
    if (w == kPosInf) return kPosInf;
    acc += w;
  }
  return acc;
}

std::vector<int> extract_simple_cycle(std::span<const int> walk) {
  if (walk.empty()) throw std::invalid_argument("extract: empty walk");
  return decompose_walk(walk).front();
}

std::optional<Cycle> find_minimal_violating(const XGraph& g,
                                            const FSchedule& sched) {
  const int n = g.node_count();
  const int stages = std::min(g.ell_max, sched.ell_max());
  std::vector<double> w(g.arcs.size());

  for (int stage = 1; stage <= stages; ++stage) {
    for (size_t a = 0; a < g.arcs.size(); ++a)
      w[a] = shifted_weight(sched, stage, g.arcs[a]);
    const int rounds = 2 * stage;

    for (int src = 0; src < n; ++src) {
      // dist[k][v]: cheapest walk src -> v using at most k arcs; parent[k][v]
      // is the arc that realized it, or -1 for "carry the k-1 value". Ties
      // keep the carried value first, then the lowest-id predecessor (the
      // in-lists are sorted by arc source).
      std::vector<std::vector<double>> dist(
          rounds + 1, std::vector<double>(n, kPosInf));
      std::vector<std::vector<int>> parent(rounds + 1,
                                           std::vector<int>(n, -1));
      dist[0][src] = 0.0;
      for (int k = 1; k <= rounds; ++k) {
        for (int v = 0; v < n; ++v) {
          double best = dist[k - 1][v];
          int best_arc = -1;
          for (int id : g.in_arcs[v]) {
            const Arc& arc = g.arcs[id];
            if (dist[k - 1][arc.from] == kPosInf) continue;
            const double cand = dist[k - 1][arc.from] + w[id];
            if (cand < best) {
              best = cand;
              best_arc = id;
            }
          }
          dist[k][v] = best;
          parent[k][v] = best_arc;
        }
      }
      if (!(dist[rounds][src] < 0.0)) continue;

      // Negative closed walk: rebuild it exactly from the round-indexed
      // parents, then return its first violating simple piece.
      std::vector<int> rev{src};
      int cur = src;
      for (int k = rounds; k > 0;) {
        const int id = parent[k][cur];
        --k;
        if (id == -1) continue;
        cur = g.arcs[id].from;
        rev.push_back(cur);
      }
      std::vector<int> walk(rev.rbegin(), rev.rend());
      walk.pop_back();  // drop the duplicated source; closing arc implicit
      for (auto& piece : decompose_walk(walk)) {
        auto nodes = canonical_rotation(g, std::move(piece));
        const double w0 = cycle_w0(g, nodes);
        if (violates(sched, static_cast<int>(nodes.size()), w0))
          return Cycle{std::move(nodes), w0};
      }
    }
  }
  return std::nullopt;
}

std::vector<Cycle> enumerate_violating(const XGraph& g,
                                       const FSchedule& sched, int max_hops) {
  const int n = g.node_count();
  const int max_ell =
      std::min({max_hops / 2, g.ell_max, sched.ell_max()});
  std::vector<std::vector<int>> out_arcs(n);
  for (const Arc& a : g.arcs) out_arcs[a.from].push_back(a.to);

  std::vector<Cycle> found;
  std::vector<int> path;
  std::vector<bool> on_path(n, false);

  // Each directed cycle is listed once: it is grown from its smallest left
  // vertex and may only visit larger left vertices afterwards.
  auto grow = [&](auto&& self, int node, int root) -> void {
    const bool at_left = g.nodes[node].left;
    for (int to : out_arcs[node]) {
      if (at_left) {
        if (!on_path[to]) {
          path.push_back(to);
          on_path[to] = true;
          self(self, to, root);
          on_path[to] = false;
          path.pop_back();
        }
      } else {
        if (to == root) {
          const double w0 = cycle_w0(g, path);
          if (violates(sched, static_cast<int>(path.size()), w0))
            found.push_back(Cycle{path, w0});
        } else if (to > root && !on_path[to] &&
                   static_cast<int>(path.size()) / 2 < max_ell) {
          path.push_back(to);
          on_path[to] = true;
          self(self, to, root);
          on_path[to] = false;
          path.pop_back();
        }
      }
    }
  };

  for (int u0 = 0; u0 < n; ++u0) {
    if (!g.nodes[u0].left) continue;
    path.assign(1, u0);
    on_path.assign(n, false);
    on_path[u0] = true;
    grow(grow, u0, u0);
  }
  return found;
}

}  // namespace detmax
