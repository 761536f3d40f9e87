#include "detmax/matroid.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

namespace detmax {
namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Returns false when x and y are already connected.
  bool unite(int x, int y) {
    const int a = find(x), b = find(y);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

std::vector<int> block_of(const MatroidSpec& m) {
  std::vector<int> owner(m.ground_size, -1);
  for (size_t b = 0; b < m.blocks.size(); ++b)
    for (int e : m.blocks[b]) owner[e] = static_cast<int>(b);
  return owner;
}

void check_set(const MatroidSpec& m, std::span<const int> s) {
  std::vector<bool> seen(m.ground_size, false);
  for (int e : s) {
    if (e < 0 || e >= m.ground_size)
      throw std::invalid_argument("matroid: element out of range");
    if (seen[e]) throw std::invalid_argument("matroid: duplicate element");
    seen[e] = true;
  }
}

}  // namespace

MatroidSpec MatroidSpec::make_partition(int ground_size,
                                        std::vector<std::vector<int>> blocks) {
  MatroidSpec m;
  m.kind = MatroidKind::partition;
  m.ground_size = ground_size;
  m.blocks = std::move(blocks);
  m.validate();
  return m;
}

MatroidSpec MatroidSpec::make_uniform(int ground_size, int rank) {
  MatroidSpec m;
  m.kind = MatroidKind::uniform;
  m.ground_size = ground_size;
  m.uniform_rank = rank;
  m.validate();
  return m;
}

MatroidSpec MatroidSpec::make_graphic(int num_vertices,
                                      std::vector<std::pair<int, int>> edges) {
  MatroidSpec m;
  m.kind = MatroidKind::graphic;
  m.ground_size = static_cast<int>(edges.size());
  m.num_vertices = num_vertices;
  m.edges = std::move(edges);
  m.validate();
  return m;
}

MatroidSpec MatroidSpec::make_linear(VectorSet representation) {
  MatroidSpec m;
  m.kind = MatroidKind::linear;
  m.ground_size = representation.count();
  m.representation = std::move(representation);
  m.validate();
  return m;
}

void MatroidSpec::validate() const {
  if (ground_size <= 0)
    throw std::invalid_argument("matroid: empty ground set");
  switch (kind) {
    case MatroidKind::partition: {
      std::vector<int> owner(ground_size, -1);
      for (size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty())
          throw std::invalid_argument("matroid: empty partition block");
        for (int e : blocks[b]) {
          if (e < 0 || e >= ground_size)
            throw std::invalid_argument("matroid: block element out of range");
          if (owner[e] != -1)
            throw std::invalid_argument("matroid: overlapping blocks");
          owner[e] = static_cast<int>(b);
        }
      }
      for (int e = 0; e < ground_size; ++e)
        if (owner[e] == -1)
          throw std::invalid_argument(
              "matroid: blocks do not cover element " + std::to_string(e));
      break;
    }
    case MatroidKind::uniform:
      if (uniform_rank < 1 || uniform_rank > ground_size)
        throw std::invalid_argument("matroid: uniform rank out of range");
      break;
    case MatroidKind::graphic:
      if (num_vertices < 1)
        throw std::invalid_argument("matroid: graphic needs vertices");
      if (static_cast<int>(edges.size()) != ground_size)
        throw std::invalid_argument("matroid: one edge per ground element");
      for (const auto& [a, b] : edges)
        if (a < 0 || a >= num_vertices || b < 0 || b >= num_vertices)
          throw std::invalid_argument("matroid: edge endpoint out of range");
      break;
    case MatroidKind::linear:
      if (representation.count() != ground_size)
        throw std::invalid_argument(
            "matroid: one representation column per ground element");
      break;
  }
}

bool is_independent(const MatroidSpec& m, std::span<const int> s) {
  check_set(m, s);
  switch (m.kind) {
    case MatroidKind::partition: {
      const auto owner = block_of(m);
      std::vector<int> used(m.blocks.size(), 0);
      for (int e : s)
        if (++used[owner[e]] > 1) return false;
      return true;
    }
    case MatroidKind::uniform:
      return static_cast<int>(s.size()) <= m.uniform_rank;
    case MatroidKind::graphic: {
      UnionFind uf(m.num_vertices);
      for (int e : s) {
        const auto& [a, b] = m.edges[e];
        if (a == b || !uf.unite(a, b)) return false;
      }
      return true;
    }
    case MatroidKind::linear:
      return log_volume(m.representation, s) != kNegInf;
  }
  return false;
}

int matroid_rank(const MatroidSpec& m) {
  switch (m.kind) {
    case MatroidKind::partition:
      return static_cast<int>(m.blocks.size());
    case MatroidKind::uniform:
      return m.uniform_rank;
    case MatroidKind::graphic: {
      UnionFind uf(m.num_vertices);
      int forest = 0;
      for (const auto& [a, b] : m.edges)
        if (a != b && uf.unite(a, b)) ++forest;
      return forest;
    }
    case MatroidKind::linear: {
      std::vector<int> all(m.ground_size);
      std::iota(all.begin(), all.end(), 0);
      // Greedy matroid rank: grow an independent prefix-respecting subset.
      std::vector<int> indep;
      for (int e : all) {
        indep.push_back(e);
        if (!is_independent(m, indep)) indep.pop_back();
      }
      return static_cast<int>(indep.size());
    }
  }
  return 0;
}

bool backward_arc_exists(const MatroidSpec& m, std::span<const int> s, int v,
                         int u) {
  check_set(m, s);
  if (std::find(s.begin(), s.end(), v) == s.end())
    throw std::invalid_argument("backward_arc_exists: v not in s");
  if (std::find(s.begin(), s.end(), u) != s.end())
    throw std::invalid_argument("backward_arc_exists: u in s");
  switch (m.kind) {
    case MatroidKind::partition: {
      const auto owner = block_of(m);
      if (owner[u] == owner[v]) return true;
      for (int e : s)
        if (e != v && owner[e] == owner[u]) return false;
      return true;
    }
    case MatroidKind::uniform:
      return true;
    default: {
      std::vector<int> swapped(s.begin(), s.end());
      *std::find(swapped.begin(), swapped.end(), v) = u;
      return is_independent(m, swapped);
    }
  }
}

// Cardinality matroid intersection between m and the linear matroid of vs.
// Exchange digraph on the ground set, relative to the current common
// independent set S:
//   x in S  -> y not in S   when S - x + y stays independent in m,
//   y not in S -> x in S    when S - x + y keeps positive volume.
// A shortest path from {y : S + y independent in m} to {y : S + y has
// positive volume} flips to a common independent set one larger; no path
// means S is maximum.
std::optional<std::vector<int>> find_common_basis(const MatroidSpec& m,
                                                  const VectorSet& vs,
                                                  double eps_rank) {
  if (vs.count() != m.ground_size)
    throw std::invalid_argument("find_common_basis: ground size mismatch");
  const int n = m.ground_size;
  const int target = matroid_rank(m);

  std::vector<int> s;  // kept sorted ascending
  auto in_s = [&](int e) {
    return std::binary_search(s.begin(), s.end(), e);
  };
  auto indep_vol = [&](const std::vector<int>& t) {
    return log_volume(vs, t, eps_rank) != kNegInf;
  };
  auto with = [&](int e) {
    std::vector<int> t(s);
    t.insert(std::lower_bound(t.begin(), t.end(), e), e);
    return t;
  };
  auto swap_xy = [&](int x, int y) {
    std::vector<int> t(s);
    t.erase(std::find(t.begin(), t.end(), x));
    t.insert(std::lower_bound(t.begin(), t.end(), y), y);
    return t;
  };

  while (static_cast<int>(s.size()) < target) {
    std::vector<int> parent(n, -1), state(n, 0);  // state: 0 new, 1 queued
    std::deque<int> queue;
    for (int y = 0; y < n; ++y)
      if (!in_s(y) && is_independent(m, with(y))) {
        state[y] = 1;
        queue.push_back(y);
      }
    int sink = -1;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      if (!in_s(x) && indep_vol(with(x))) {
        sink = x;
        break;
      }
      for (int y = 0; y < n; ++y) {
        if (state[y] || y == x) continue;
        bool arc;
        if (in_s(x))
          arc = !in_s(y) && is_independent(m, swap_xy(x, y));
        else
          arc = in_s(y) && indep_vol(swap_xy(y, x));
        if (arc) {
          state[y] = 1;
          parent[y] = x;
          queue.push_back(y);
        }
      }
    }
    if (sink == -1) return std::nullopt;
    for (int x = sink; x != -1; x = parent[x]) {
      if (in_s(x))
        s.erase(std::find(s.begin(), s.end(), x));
      else
        s.insert(std::lower_bound(s.begin(), s.end(), x), x);
    }
  }
  return s;
}

}  // namespace detmax
