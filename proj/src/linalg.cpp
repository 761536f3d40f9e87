#include "detmax/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace detmax {
namespace {

void check_indexes(std::span<const int> idx, int count, bool distinct,
                   const char* what) {
  std::vector<bool> seen(distinct ? count : 0, false);
  for (int i : idx) {
    if (i < 0 || i >= count)
      throw std::invalid_argument(std::string(what) + ": index out of range");
    if (distinct) {
      if (seen[i])
        throw std::invalid_argument(std::string(what) + ": duplicate index");
      seen[i] = true;
    }
  }
}

// log prod |R_ii| of the column-pivoted QR of m. Returns kNegInf when m has
// fewer rows than columns or when the smallest diagonal falls below
// eps_rank * (largest column norm of m), i.e. m is numerically rank-deficient.
double log_abs_qr_det(const Eigen::MatrixXd& m, double eps_rank) {
  const int k = static_cast<int>(m.cols());
  if (k == 0) return 0.0;
  if (m.rows() < k) return kNegInf;
  const double scale = m.colwise().norm().maxCoeff();
  if (scale <= 0.0) return kNegInf;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  const auto diag = qr.matrixQR().diagonal().head(k);
  double acc = 0.0;
  for (int i = 0; i < k; ++i) {
    const double a = std::abs(diag(i));
    if (a <= eps_rank * scale) return kNegInf;
    acc += std::log(a);
  }
  return acc;
}

}  // namespace

VectorSet::VectorSet(Eigen::MatrixXd columns) : cols_(std::move(columns)) {
  if (!cols_.allFinite())
    throw std::invalid_argument("VectorSet: entries must be finite");
}

VectorSet VectorSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("VectorSet: no vectors");
  const auto d = rows.front().size();
  if (d == 0) throw std::invalid_argument("VectorSet: zero dimension");
  Eigen::MatrixXd m(d, rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d)
      throw std::invalid_argument("VectorSet: ragged vector list");
    for (size_t j = 0; j < d; ++j) m(j, i) = rows[i][j];
  }
  return VectorSet(std::move(m));
}

Eigen::VectorXd VectorSet::column(int i) const {
  if (i < 0 || i >= count())
    throw std::invalid_argument("VectorSet: index out of range");
  return cols_.col(i);
}

double VectorSet::max_column_norm() const {
  if (count() == 0) return 0.0;
  return cols_.colwise().norm().maxCoeff();
}

Eigen::MatrixXd VectorSet::submatrix(std::span<const int> idx) const {
  check_indexes(idx, count(), false, "VectorSet::submatrix");
  Eigen::MatrixXd m(dim(), idx.size());
  for (size_t j = 0; j < idx.size(); ++j) m.col(j) = cols_.col(idx[j]);
  return m;
}

double log_volume(const VectorSet& vs, std::span<const int> s,
                  double eps_rank) {
  check_indexes(s, vs.count(), true, "log_volume");
  if (s.empty()) return 0.0;
  return log_abs_qr_det(vs.submatrix(s), eps_rank);
}

Decomposition decompose(const VectorSet& vs, std::span<const int> basis,
                        std::span<const int> others, double eps_rank) {
  check_indexes(basis, vs.count(), true, "decompose basis");
  check_indexes(others, vs.count(), false, "decompose others");
  const int r = static_cast<int>(basis.size());
  const int m = static_cast<int>(others.size());
  const Eigen::MatrixXd b = vs.submatrix(basis);
  if (log_abs_qr_det(b, eps_rank) == kNegInf)
    throw std::domain_error("decompose: rank-deficient basis");

  Decomposition out;
  out.coefficients.resize(m, r);
  out.residual_norms.resize(m);
  out.basis_residual_norms.resize(r);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(b);
  for (int i = 0; i < m; ++i) {
    const Eigen::VectorXd u = vs.column(others[i]);
    if (r == 0) {
      out.residual_norms(i) = u.norm();
      continue;
    }
    const Eigen::VectorXd a = qr.solve(u);
    out.coefficients.row(i) = a.transpose();
    out.residual_norms(i) = (u - b * a).norm();
  }

  // Leave-one-out residuals of the basis itself.
  for (int j = 0; j < r; ++j) {
    const Eigen::VectorXd v = b.col(j);
    if (r == 1) {
      out.basis_residual_norms(j) = v.norm();
      continue;
    }
    Eigen::MatrixXd rest(b.rows(), r - 1);
    for (int k = 0, c = 0; k < r; ++k)
      if (k != j) rest.col(c++) = b.col(k);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_rest(rest);
    const Eigen::VectorXd a = qr_rest.solve(v);
    out.basis_residual_norms(j) = (v - rest * a).norm();
  }
  return out;
}

double swap_log_ratio(const VectorSet& vs, std::span<const int> s, int out,
                      int in, double eps_rank) {
  check_indexes(s, vs.count(), true, "swap_log_ratio");
  if (std::find(s.begin(), s.end(), out) == s.end())
    throw std::invalid_argument("swap_log_ratio: out not in set");
  if (std::find(s.begin(), s.end(), in) != s.end())
    throw std::invalid_argument("swap_log_ratio: in already in set");
  const double base = log_volume(vs, s, eps_rank);
  if (base == kNegInf)
    throw std::domain_error("swap_log_ratio: zero-volume set");
  std::vector<int> swapped(s.begin(), s.end());
  *std::find(swapped.begin(), swapped.end(), out) = in;
  const double next = log_volume(vs, swapped, eps_rank);
  return next == kNegInf ? kNegInf : next - base;
}

double log_sym_r(const VectorSet& vs, std::span<const int> s,
                 double eps_rank) {
  const double lv = log_volume(vs, s, eps_rank);
  return lv == kNegInf ? kNegInf : 2.0 * lv;
}

double exchange_determinant(const VectorSet& vs, std::span<const int> s,
                            std::span<const int> cyc_out,
                            std::span<const int> cyc_in, double eps_rank) {
  if (cyc_out.size() != cyc_in.size())
    throw std::invalid_argument("exchange_determinant: size mismatch");
  check_indexes(cyc_out, vs.count(), true, "exchange_determinant out");
  check_indexes(cyc_in, vs.count(), true, "exchange_determinant in");
  std::vector<int> positions;
  for (int e : cyc_out) {
    const auto it = std::find(s.begin(), s.end(), e);
    if (it == s.end())
      throw std::invalid_argument("exchange_determinant: out element not in s");
    positions.push_back(static_cast<int>(it - s.begin()));
  }
  for (int e : cyc_in)
    if (std::find(s.begin(), s.end(), e) != s.end())
      throw std::invalid_argument("exchange_determinant: in element already in s");

  const Decomposition dec = decompose(vs, s, cyc_in, eps_rank);
  const int l = static_cast<int>(cyc_in.size());
  Eigen::MatrixXd a_c(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) a_c(i, j) = dec.coefficients(i, positions[j]);
  return log_abs_qr_det(a_c, eps_rank);
}

}  // namespace detmax
