// Dense log-domain volume kernels on small column sets.
//
// All quantities that can underflow to zero volume are carried as logarithms;
// zero volume is the sentinel -infinity, which IEEE addition and comparison
// already propagate the way the callers need (x + -inf == -inf).
#pragma once

#include <Eigen/Dense>

#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace detmax {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// Relative rank cutoff: a factorization diagonal below
// kDefaultEpsRank * (largest column norm of the factored set) is treated as zero.
inline constexpr double kDefaultEpsRank = 1e-10;

// Immutable column collection; column i is the vector of ground element i.
class VectorSet {
 public:
  VectorSet() = default;
  explicit VectorSet(Eigen::MatrixXd columns);

  // rows: one row per ground element, each of length dim.
  static VectorSet from_rows(const std::vector<std::vector<double>>& rows);

  int dim() const { return static_cast<int>(cols_.rows()); }
  int count() const { return static_cast<int>(cols_.cols()); }
  Eigen::VectorXd column(int i) const;
  const Eigen::MatrixXd& matrix() const { return cols_; }

  // Largest Euclidean column norm over the whole set (0 for an empty set).
  double max_column_norm() const;

  // d x |idx| matrix of the selected columns, in idx order.
  Eigen::MatrixXd submatrix(std::span<const int> idx) const;

 private:
  Eigen::MatrixXd cols_;  // dim x count
};

// Least-squares split of each "other" vector over a fixed independent basis:
//   u = sum_j coefficients(u_row, j) * basis[j] + residual(u),
// residual(u) orthogonal to span(basis).
struct Decomposition {
  Eigen::MatrixXd coefficients;    // |others| x |basis|
  Eigen::VectorXd residual_norms;  // |others|
  // For basis element j: norm of its component orthogonal to the span of the
  // other basis elements. Strictly positive for an independent basis.
  Eigen::VectorXd basis_residual_norms;  // |basis|
};

// log of the |s|-dimensional volume of the parallelepiped spanned by the
// selected columns: 0.5 * log det Gram(s). Empty set -> 0. Rank-deficient
// selection (smallest pivoted-QR diagonal below eps_rank * largest selected
// column norm) -> -infinity.
double log_volume(const VectorSet& vs, std::span<const int> s,
                  double eps_rank = kDefaultEpsRank);

// Throws std::domain_error if basis is rank-deficient at eps_rank,
// std::invalid_argument on out-of-range or duplicate indexes.
Decomposition decompose(const VectorSet& vs, std::span<const int> basis,
                        std::span<const int> others,
                        double eps_rank = kDefaultEpsRank);

// log( vol(s - out + in) / vol(s) ), evaluated as a difference of two
// independent log_volume factorizations (deliberately not via decompose; this
// is the cross-check path for exchange-graph arc weights).
double swap_log_ratio(const VectorSet& vs, std::span<const int> s, int out,
                      int in, double eps_rank = kDefaultEpsRank);

// log sym_r of the frame operator sum_{i in s} v_i v_i^T with r = |s|;
// equals 2 * log_volume(vs, s).
double log_sym_r(const VectorSet& vs, std::span<const int> s,
                 double eps_rank = kDefaultEpsRank);

// log |det A_C| for the square coefficient block of a multi-element swap:
// row per element of cyc_in (decomposed over the basis s), restricted to the
// columns of the basis positions named by cyc_out. Singular block -> -infinity.
// Requires |cyc_out| == |cyc_in|, cyc_out within s, cyc_in disjoint from s.
double exchange_determinant(const VectorSet& vs, std::span<const int> s,
                            std::span<const int> cyc_out,
                            std::span<const int> cyc_in,
                            double eps_rank = kDefaultEpsRank);

}  // namespace detmax
