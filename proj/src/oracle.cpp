#include "detmax/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace detmax {
namespace {

double cofactor_det(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  double acc = 0.0;
  double sign = 1.0;
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXd minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r)
      for (int c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    acc += sign * a(0, j) * cofactor_det(minor);
    sign = -sign;
  }
  return acc;
}

// Relative floor under which a Jacobi eigenvalue counts as zero.
constexpr double kEigZeroCut = 1e-10;

double log_elementary_symmetric(const std::vector<double>& eig, int r) {
  // e_r over all eigenvalues; zero-cut eigenvalues participate as zero.
  const double lmax = eig.empty() ? 0.0 : std::abs(eig.front());
  std::vector<double> e(r + 1, 0.0);
  e[0] = 1.0;
  for (double lam : eig) {
    if (std::abs(lam) <= kEigZeroCut * lmax) lam = 0.0;
    for (int k = std::min<int>(r, 1000); k >= 1; --k)
      e[k] += lam * e[k - 1];
  }
  return e[r] > 0.0 ? std::log(e[r]) : kNegInf;
}

struct ReplayContext {
  AuditReport* report;
  void add(const std::string& name, bool ok, const std::string& detail) {
    report->checks.push_back({name, ok, detail});
    if (!ok) report->all_ok = false;
  }
};

std::string join_ints(std::span<const int> v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// Weight identities at one basis: at full rank every finite coefficient
// magnitude must match the one-for-one swap ratio; below full rank the
// parallel and perpendicular components must combine into it.
void check_arc_weights(const VectorSet& vs, const MatroidSpec& m,
                       const std::vector<int>& s, double eps_rank,
                       const std::string& tag, ReplayContext& ctx) {
  (void)m;
  const int d = vs.dim();
  const int r = static_cast<int>(s.size());
  std::vector<int> outside;
  for (int e = 0; e < vs.count(); ++e)
    if (!std::binary_search(s.begin(), s.end(), e)) outside.push_back(e);
  if (outside.empty()) {
    ctx.add("arc-weights" + tag, true, "no outside candidates");
    return;
  }
  const Decomposition dec = decompose(vs, s, outside, eps_rank);
  double worst = 0.0;
  bool ok = true;
  for (size_t i = 0; i < outside.size(); ++i) {
    for (int j = 0; j < r; ++j) {
      const double ratio = swap_log_ratio(vs, s, s[j], outside[i], eps_rank);
      double predicted;
      if (r == d) {
        const double a = std::abs(dec.coefficients(i, j));
        if (a < 1e-9 || ratio == kNegInf) continue;  // both near zero volume
        predicted = std::log(a);
      } else {
        const double a = std::abs(dec.coefficients(i, j));
        const double perp =
            dec.residual_norms(i) / dec.basis_residual_norms(j);
        if (ratio == kNegInf) continue;
        predicted = 0.5 * std::log(a * a + perp * perp);
      }
      worst = std::max(worst, std::abs(predicted - ratio));
      if (std::abs(predicted - ratio) > 1e-7) ok = false;
    }
  }
  std::ostringstream os;
  os << "max deviation " << worst;
  ctx.add("arc-weights" + tag, ok, os.str());
}

}  // namespace

double reference_log_volume(const VectorSet& vs, std::span<const int> s) {
  const int k = static_cast<int>(s.size());
  if (k == 0) return 0.0;
  const Eigen::MatrixXd b = vs.submatrix(s);
  const Eigen::MatrixXd gram = b.transpose() * b;
  if (k <= 4) {
    const double det = cofactor_det(gram);
    return det > 0.0 ? 0.5 * std::log(det) : kNegInf;
  }
  const std::vector<double> eig = jacobi_eigenvalues(gram);
  const double lmax = std::abs(eig.front());
  double acc = 0.0;
  for (double lam : eig) {
    if (lam <= kEigZeroCut * lmax) return kNegInf;
    acc += std::log(lam);
  }
  return 0.5 * acc;
}

double reference_log_sym_r(const VectorSet& vs, std::span<const int> s) {
  const int d = vs.dim();
  Eigen::MatrixXd frame = Eigen::MatrixXd::Zero(d, d);
  for (int e : s) {
    const Eigen::VectorXd v = vs.column(e);
    frame += v * v.transpose();
  }
  return log_elementary_symmetric(jacobi_eigenvalues(frame),
                                  static_cast<int>(s.size()));
}

std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a) {
  const int n = static_cast<int>(a.rows());
  if (n != a.cols() || !a.isApprox(a.transpose(), 1e-9))
    throw std::invalid_argument("jacobi: symmetric matrix required");
  const double scale = std::max(1e-300, a.cwiseAbs().maxCoeff());
  for (int sweep = 0; sweep < 128; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= 1e-15 * scale * n) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(n, n);
        rot(p, p) = c;
        rot(q, q) = c;
        rot(p, q) = s;
        rot(q, p) = -s;
        a = rot.transpose() * a * rot;
      }
    }
  }
  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

OptReport brute_force_opt(const VectorSet& vs, const MatroidSpec& m,
                          std::int64_t max_bases) {
  m.validate();
  if (vs.count() != m.ground_size)
    throw std::invalid_argument("brute_force_opt: ground size mismatch");
  const int n = m.ground_size;
  const int r = matroid_rank(m);
  OptReport rep;
  std::vector<int> partial;

  std::function<void(int)> grow = [&](int next) {
    if (static_cast<int>(partial.size()) == r) {
      if (++rep.basis_count > max_bases)
        throw cap_error("brute force: basis cap exceeded");
      const double val = reference_log_volume(vs, partial);
      if (val != kNegInf && val > rep.opt_log_vol) {
        rep.opt_log_vol = val;
        rep.opt_set = partial;
      }
      return;
    }
    const int missing = r - static_cast<int>(partial.size());
    for (int e = next; e + missing <= n; ++e) {
      partial.push_back(e);
      if (is_independent(m, partial)) grow(e + 1);
      partial.pop_back();
    }
  };
  grow(0);
  return rep;
}

AuditReport audit_run(const VectorSet& vs, const MatroidSpec& m,
                              const Solution& sol, double eps_rank) {
  AuditReport report;
  report.all_ok = true;
  ReplayContext ctx{&report};
  const int d = vs.dim();
  const int r = matroid_rank(m);

  const bool init_ok = static_cast<int>(sol.initial.size()) == r &&
                       is_independent(m, sol.initial) &&
                       log_volume(vs, sol.initial, eps_rank) != kNegInf;
  ctx.add("initial-basis", init_ok, "size " + std::to_string(sol.initial.size()));

  std::vector<int> s = sol.initial;
  check_arc_weights(vs, m, s, eps_rank, "@start", ctx);

  for (size_t k = 0; k < sol.history.size(); ++k) {
    const ExchangeRecord& rec = sol.history[k];
    const std::string step = "#" + std::to_string(k + 1);

    std::vector<int> next = s;
    bool shape_ok = rec.removed.size() == rec.added.size() &&
                    2 * rec.removed.size() == static_cast<size_t>(rec.hops);
    for (int e : rec.removed) {
      const auto it = std::find(next.begin(), next.end(), e);
      if (it == next.end()) {
        shape_ok = false;
        break;
      }
      next.erase(it);
    }
    for (int e : rec.added) {
      if (std::find(next.begin(), next.end(), e) != next.end()) shape_ok = false;
      next.push_back(e);
    }
    std::sort(next.begin(), next.end());
    ctx.add("exchange-shape" + step, shape_ok,
            "-{" + join_ints(rec.removed) + "} +{" + join_ints(rec.added) + "}");
    if (!shape_ok) return report;

    const bool indep = is_independent(m, next) &&
                       static_cast<int>(next.size()) == r;
    ctx.add("independence" + step, indep, "");

    const double pre = log_volume(vs, s, eps_rank);
    const double post = log_volume(vs, next, eps_rank);
    const bool vols_ok = std::abs(pre - rec.pre_log_vol) <= 1e-7 &&
                         std::abs(post - rec.post_log_vol) <= 1e-7;
    ctx.add("recorded-volumes" + step, vols_ok, "");

    const bool doubling = post - pre >= std::log(2.0) - 1e-9;
    {
      std::ostringstream os;
      os << "gain " << post - pre;
      ctx.add("doubling" + step, doubling, os.str());
    }

    const double ed =
        exchange_determinant(vs, s, rec.removed, rec.added, eps_rank);
    bool det_ok;
    std::ostringstream os;
    if (r == d) {
      det_ok = std::isfinite(ed) && std::abs((post - pre) - ed) <= 1e-7;
      os << "gain " << post - pre << " vs log|det| " << ed;
    } else {
      det_ok = (post - pre) - ed >= -1e-7;  // ed may be -inf
      os << "gain " << post - pre << " >= log|det| " << ed;
    }
    ctx.add("exchange-determinant" + step, det_ok, os.str());

    s = std::move(next);
  }

  const bool final_match = s == sol.selected;
  ctx.add("replay-final", final_match, "replayed {" + join_ints(s) + "}");
  check_arc_weights(vs, m, s, eps_rank, "@end", ctx);

  if (!sol.capped) {
    const Certificate cert = certify(vs, m, sol, eps_rank);
    ctx.add("certified", cert.certified, "");
    try {
      const OptReport opt = brute_force_opt(vs, m);
      const double gap = opt.opt_log_vol - sol.log_vol;
      std::ostringstream os;
      os << "log gap " << gap << " bound " << cert.log_bound;
      ctx.add("termination-bound", gap <= cert.log_bound + 1e-9, os.str());
    } catch (const cap_error&) {
      ctx.add("termination-bound", true, "skipped: basis cap exceeded");
    }
  }
  return report;
}

Instance hadamard_fixture(int k) {
  if (k < 0 || k > 6)
    throw std::invalid_argument("hadamard_fixture: k in [0, 6]");
  const int d = 1 << k;
  Eigen::MatrixXd h(1, 1);
  h(0, 0) = 1.0;
  for (int s = 1; s < d; s *= 2) {
    Eigen::MatrixXd next(2 * s, 2 * s);
    next.topLeftCorner(s, s) = h;
    next.topRightCorner(s, s) = h;
    next.bottomLeftCorner(s, s) = h;
    next.bottomRightCorner(s, s) = -h;
    h = next;
  }
  Eigen::MatrixXd cols(d, 2 * d);
  cols.leftCols(d) = Eigen::MatrixXd::Identity(d, d);
  cols.rightCols(d) = h;

  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < d; ++i) blocks.push_back({i, d + i});
  std::vector<int> start(d);
  for (int i = 0; i < d; ++i) start[i] = i;
  return Instance{VectorSet(std::move(cols)),
                  MatroidSpec::make_partition(2 * d, std::move(blocks)),
                  start};
}

}  // namespace detmax
