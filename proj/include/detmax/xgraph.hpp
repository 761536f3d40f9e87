// Exchange graph over a frozen independent set S: left vertices are
// candidates outside S (split into parallel/perpendicular flavors in the
// augmented variant), right vertices are the members of S. Forward arcs
// (left -> right) carry -log of a coefficient magnitude; backward arcs
// (right -> left) exist exactly when the one-for-one swap keeps the
// constraint matroid independent, and weigh zero.
#pragma once

#include "detmax/linalg.hpp"
#include "detmax/matroid.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace detmax {

enum class NodeFlavor { plain, parallel, perpendicular };

struct XNode {
  bool left = false;
  int element = -1;  // ground id
  NodeFlavor flavor = NodeFlavor::plain;
};

struct Arc {
  int from = -1;
  int to = -1;
  double w0 = 0.0;  // base weight; backward arcs are always 0
  bool forward = false;
};

struct XGraph {
  std::vector<XNode> nodes;  // left nodes first (ascending element, parallel
                             // before perpendicular), then right nodes
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> in_arcs;  // per node, arc ids sorted by from
  std::vector<int> basis;                 // frozen S, ascending
  bool augmented = false;
  int ell_max = 0;  // |basis|; simple cycles have at most 2*ell_max hops

  int node_count() const { return static_cast<int>(nodes.size()); }
  // w0 of the arc from -> to, or +infinity when absent.
  double arc_w0(int from, int to) const;
  std::string node_label(int id) const;

 private:
  friend XGraph build_standard(const VectorSet&, const MatroidSpec&,
                               std::span<const int>, double);
  friend XGraph build_augmented(const VectorSet&, const MatroidSpec&,
                                std::span<const int>, double);
  std::unordered_map<long long, double> weight_by_pair_;
};

// Stage-indexed violation thresholds, held as log f(i). The standard
// schedule is log f(i) = log 2 + 3 log(i!); the augmented one is log 2 at
// i = 1 and 11 log(i!) beyond. Construction asserts log f(i) / i is
// nondecreasing, which the staged cycle search depends on.
class FSchedule {
 public:
  static FSchedule standard(int ell_max);
  static FSchedule augmented(int ell_max);

  int ell_max() const { return static_cast<int>(log_f_.size()); }
  bool is_augmented() const { return augmented_; }
  double log_f(int i) const;           // i in [1, ell_max]
  double shift(int i) const;           // log f(i) / i
 private:
  FSchedule(std::vector<double> log_f, bool augmented);
  std::vector<double> log_f_;
  bool augmented_ = false;
};

// Graph over basis s (independent in m, positive volume). Forward arc
// u -> v_j weighs -log |a_{u j}| where a are the least-squares coefficients
// of u over s; numerically zero coefficients yield no arc.
XGraph build_standard(const VectorSet& vs, const MatroidSpec& m,
                      std::span<const int> s,
                      double eps_rank = kDefaultEpsRank);

// Augmented variant: each u outside s contributes a parallel vertex (arcs
// weighted by coefficient magnitudes) and a perpendicular vertex (arcs
// weighted by -log(|residual of u| / |leave-one-out residual of v_j|)).
// Candidates inside span(s) get no perpendicular arcs.
XGraph build_augmented(const VectorSet& vs, const MatroidSpec& m,
                       std::span<const int> s,
                       double eps_rank = kDefaultEpsRank);

// Stage-ell arc weight: forward arcs are shifted by log f(ell) / ell,
// backward arcs stay at zero.
double shifted_weight(const FSchedule& sched, int ell, const Arc& arc);

// Adjacency listing ("u3 -> v7 : <w0>"), for debugging.
void dump(const XGraph& g, std::ostream& os);

}  // namespace detmax
