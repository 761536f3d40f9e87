// Matroid constraint oracles over a ground set {0..n-1} of vector indexes.
#pragma once

#include "detmax/linalg.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace detmax {

enum class MatroidKind { partition, uniform, graphic, linear };

// Tagged union of the supported matroid families. Only the fields of the
// active kind are meaningful; validate() checks structural well-formedness.
struct MatroidSpec {
  MatroidKind kind = MatroidKind::uniform;
  int ground_size = 0;

  // partition: disjoint blocks covering the ground set, capacity one each.
  std::vector<std::vector<int>> blocks;

  // uniform: independent iff |s| <= uniform_rank.
  int uniform_rank = 0;

  // graphic: element i is the edge edges[i]; independent iff acyclic.
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;

  // linear: element i is represented by column i; independent iff the
  // selected representation columns have full numerical rank.
  VectorSet representation;

  static MatroidSpec make_partition(int ground_size,
                                    std::vector<std::vector<int>> blocks);
  static MatroidSpec make_uniform(int ground_size, int rank);
  static MatroidSpec make_graphic(int num_vertices,
                                  std::vector<std::pair<int, int>> edges);
  static MatroidSpec make_linear(VectorSet representation);

  // Throws std::invalid_argument on malformed structure (non-covering or
  // overlapping blocks, edge endpoints out of range, bad rank bounds, ...).
  void validate() const;
};

bool is_independent(const MatroidSpec& m, std::span<const int> s);

int matroid_rank(const MatroidSpec& m);

// True iff s - v + u is independent, for v in s, u not in s. Partition and
// uniform kinds take closed-form shortcuts; the generic path delegates to
// is_independent (the two must agree, which tests pin on small instances).
bool backward_arc_exists(const MatroidSpec& m, std::span<const int> s, int v,
                         int u);

// Maximum common independent set of m and the linear matroid of vs, by
// shortest augmenting paths (breadth-first, lowest element id first, so the
// result is deterministic). Returns a basis of m with positive volume, or
// nullopt when no common independent set reaches rank(m).
std::optional<std::vector<int>> find_common_basis(
    const MatroidSpec& m, const VectorSet& vs,
    double eps_rank = kDefaultEpsRank);

}  // namespace detmax
