#include "detmax/xgraph.hpp"

#include "json_out.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace detmax {
namespace {

long long pair_key(int from, int to, int n) {
  return static_cast<long long>(from) * n + to;
}

std::vector<int> sorted_basis(const VectorSet& vs, const MatroidSpec& m,
                              std::span<const int> s, double eps_rank) {
  if (s.empty()) throw std::invalid_argument("exchange graph: empty basis");
  if (vs.count() != m.ground_size)
    throw std::invalid_argument("exchange graph: ground size mismatch");
  if (!is_independent(m, s))
    throw std::domain_error("exchange graph: basis not independent");
  if (log_volume(vs, s, eps_rank) == kNegInf)
    throw std::domain_error("exchange graph: basis has zero volume");
  std::vector<int> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> complement(int n, const std::vector<int>& s) {
  std::vector<int> out;
  for (int e = 0, j = 0; e < n; ++e) {
    if (j < static_cast<int>(s.size()) && s[j] == e)
      ++j;
    else
      out.push_back(e);
  }
  return out;
}

void finish(XGraph& g) {
  g.in_arcs.assign(g.node_count(), {});
  for (size_t i = 0; i < g.arcs.size(); ++i)
    g.in_arcs[g.arcs[i].to].push_back(static_cast<int>(i));
  // Arcs are emitted with ascending from-id per target, so each in-list is
  // already sorted the way the deterministic relaxation wants it.
}

}  // namespace

double XGraph::arc_w0(int from, int to) const {
  const auto it = weight_by_pair_.find(pair_key(from, to, node_count()));
  return it == weight_by_pair_.end() ? kPosInf : it->second;
}

std::string XGraph::node_label(int id) const {
  const XNode& nd = nodes.at(id);
  if (!nd.left) return "v" + std::to_string(nd.element);
  std::string base = "u" + std::to_string(nd.element);
  if (nd.flavor == NodeFlavor::parallel) base += ".par";
  if (nd.flavor == NodeFlavor::perpendicular) base += ".perp";
  return base;
}

FSchedule::FSchedule(std::vector<double> log_f, bool augmented)
    : log_f_(std::move(log_f)), augmented_(augmented) {
  for (size_t i = 1; i < log_f_.size(); ++i) {
    const double prev = log_f_[i - 1] / static_cast<double>(i);
    const double next = log_f_[i] / static_cast<double>(i + 1);
    if (next < prev)
      throw std::logic_error("FSchedule: log f(i)/i must be nondecreasing");
  }
}

FSchedule FSchedule::standard(int ell_max) {
  std::vector<double> v;
  for (int i = 1; i <= ell_max; ++i)
    v.push_back(std::log(2.0) + 3.0 * std::lgamma(i + 1.0));
  return FSchedule(std::move(v), false);
}

FSchedule FSchedule::augmented(int ell_max) {
  std::vector<double> v;
  for (int i = 1; i <= ell_max; ++i)
    v.push_back(i == 1 ? std::log(2.0) : 11.0 * std::lgamma(i + 1.0));
  return FSchedule(std::move(v), true);
}

double FSchedule::log_f(int i) const {
  if (i < 1 || i > ell_max())
    throw std::invalid_argument("FSchedule: stage out of range");
  return log_f_[i - 1];
}

double FSchedule::shift(int i) const { return log_f(i) / i; }

XGraph build_standard(const VectorSet& vs, const MatroidSpec& m,
                      std::span<const int> s, double eps_rank) {
  XGraph g;
  g.basis = sorted_basis(vs, m, s, eps_rank);
  g.ell_max = static_cast<int>(g.basis.size());
  const std::vector<int> outside = complement(vs.count(), g.basis);
  const int r = g.ell_max;

  for (int u : outside) g.nodes.push_back({true, u, NodeFlavor::plain});
  for (int v : g.basis) g.nodes.push_back({false, v, NodeFlavor::plain});
  const int right_base = static_cast<int>(outside.size());

  const Decomposition dec = decompose(vs, g.basis, outside, eps_rank);
  // Numerically zero coefficients carry no arc (conceptual weight +inf).
  const double coeff_cut =
      eps_rank * std::max(1.0, dec.coefficients.size()
                                   ? dec.coefficients.cwiseAbs().maxCoeff()
                                   : 0.0);
  for (size_t i = 0; i < outside.size(); ++i)
    for (int j = 0; j < r; ++j) {
      const double a = std::abs(dec.coefficients(i, j));
      if (a <= coeff_cut) continue;
      g.arcs.push_back({static_cast<int>(i), right_base + j, -std::log(a),
                        true});
    }
  for (int j = 0; j < r; ++j)
    for (size_t i = 0; i < outside.size(); ++i)
      if (backward_arc_exists(m, g.basis, g.basis[j], outside[i]))
        g.arcs.push_back({right_base + j, static_cast<int>(i), 0.0, false});

  for (const Arc& a : g.arcs)
    g.weight_by_pair_[pair_key(a.from, a.to, g.node_count())] = a.w0;
  finish(g);
  return g;
}

XGraph build_augmented(const VectorSet& vs, const MatroidSpec& m,
                       std::span<const int> s, double eps_rank) {
  XGraph g;
  g.augmented = true;
  g.basis = sorted_basis(vs, m, s, eps_rank);
  g.ell_max = static_cast<int>(g.basis.size());
  const std::vector<int> outside = complement(vs.count(), g.basis);
  const int r = g.ell_max;

  for (int u : outside) {
    g.nodes.push_back({true, u, NodeFlavor::parallel});
    g.nodes.push_back({true, u, NodeFlavor::perpendicular});
  }
  for (int v : g.basis) g.nodes.push_back({false, v, NodeFlavor::plain});
  const int right_base = 2 * static_cast<int>(outside.size());

  const Decomposition dec = decompose(vs, g.basis, outside, eps_rank);
  const double coeff_cut =
      eps_rank * std::max(1.0, dec.coefficients.size()
                                   ? dec.coefficients.cwiseAbs().maxCoeff()
                                   : 0.0);
  // A candidate whose residual vanishes lies in span(S); its perpendicular
  // vertex keeps no forward arcs.
  const double resid_cut = eps_rank * vs.max_column_norm();
  for (size_t i = 0; i < outside.size(); ++i) {
    const int par = 2 * static_cast<int>(i);
    const int perp = par + 1;
    for (int j = 0; j < r; ++j) {
      const double a = std::abs(dec.coefficients(i, j));
      if (a > coeff_cut)
        g.arcs.push_back({par, right_base + j, -std::log(a), true});
    }
    const double resid = dec.residual_norms(i);
    if (resid > resid_cut)
      for (int j = 0; j < r; ++j)
        g.arcs.push_back({perp, right_base + j,
                          -std::log(resid / dec.basis_residual_norms(j)),
                          true});
  }
  for (int j = 0; j < r; ++j)
    for (size_t i = 0; i < outside.size(); ++i)
      if (backward_arc_exists(m, g.basis, g.basis[j], outside[i])) {
        g.arcs.push_back({right_base + j, 2 * static_cast<int>(i), 0.0,
                          false});
        g.arcs.push_back({right_base + j, 2 * static_cast<int>(i) + 1, 0.0,
                          false});
      }

  for (const Arc& a : g.arcs)
    g.weight_by_pair_[pair_key(a.from, a.to, g.node_count())] = a.w0;
  finish(g);
  return g;
}

double shifted_weight(const FSchedule& sched, int ell, const Arc& arc) {
  return arc.forward ? arc.w0 + sched.shift(ell) : 0.0;
}

void dump(const XGraph& g, std::ostream& os) {
  for (const Arc& a : g.arcs)
    os << g.node_label(a.from) << " -> " << g.node_label(a.to) << " : "
       << jsonout::number(a.w0) << "\n";
}

}  // namespace detmax
