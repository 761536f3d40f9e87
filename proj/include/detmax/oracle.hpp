// Reference implementations used to cross-check the solver: an exhaustive
// optimum, a determinant route that avoids the factorization kernel
// (cofactor expansion on small Grams, hand-rolled Jacobi eigenvalues
// otherwise), and a replay checker for solver traces.
#pragma once

#include "detmax/instance.hpp"
#include "detmax/solver.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace detmax {

// Basis enumeration exceeded its configured cap.
class cap_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptReport {
  // Lexicographically smallest maximizer; empty when every basis of the
  // matroid spans zero volume (opt_log_vol is then -infinity).
  std::vector<int> opt_set;
  double opt_log_vol = kNegInf;
  std::int64_t basis_count = 0;  // bases of the matroid, volume or not
};

// Enumerates every basis of m (lexicographic, with independence pruning)
// and evaluates each through the reference determinant route. Throws
// cap_error beyond max_bases.
OptReport brute_force_opt(const VectorSet& vs, const MatroidSpec& m,
                          std::int64_t max_bases = 1000000);

// 0.5 * log det Gram(s) evaluated without the factorization kernel.
double reference_log_volume(const VectorSet& vs, std::span<const int> s);

// log sym_{|s|} of the frame operator sum_{i in s} v_i v_i^T, from Jacobi
// eigenvalues; agrees with log_sym_r up to numerics.
double reference_log_sym_r(const VectorSet& vs, std::span<const int> s);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
// descending. Deterministic; intended for small test matrices.
std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a);

struct AuditCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct AuditReport {
  bool all_ok = false;
  std::vector<AuditCheck> checks;
};

// Replays a solver trace from its initial basis and re-verifies, step by
// step: set sizes and independence, the recorded volumes, the doubling
// gain, and the coefficient-determinant identity of every exchange
// (equality at full rank, lower bound below it); per-arc weight identities
// at the first and final basis; and, at termination, the certified bound
// against the brute-force optimum.
AuditReport audit_run(const VectorSet& vs, const MatroidSpec& m,
                              const Solution& sol,
                              double eps_rank = kDefaultEpsRank);

// d = 2^k standard basis vectors paired with the d columns of the Sylvester
// orthogonal {-1,1} design; block i holds {e_i, h_i} and the start basis is
// the standard one. The optimum improves on the start by exactly
// (d/2) log d in log-volume, yet no exchange fires.
Instance hadamard_fixture(int k);

}  // namespace detmax
