// Shared deterministic helpers for the unit suites. All randomness flows
// through mt19937_64 with fixed seeds and raw-stream sampling, so every run
// of the suite sees identical instances.
#pragma once

#include "detmax/instance.hpp"
#include "detmax/linalg.hpp"
#include "detmax/matroid.hpp"

#include <initializer_list>
#include <random>
#include <vector>

namespace testutil {

// span<const int> parameters do not take brace literals; ids({0, 2}) does.
inline std::vector<int> ids(std::initializer_list<int> l) { return {l}; }

inline int bounded(std::mt19937_64& rng, int lo, int hi) {
  const auto range = static_cast<unsigned long long>(hi - lo + 1);
  const auto limit = ~0ULL - ~0ULL % range;
  unsigned long long x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<int>(x % range);
}

// Uniform in [-1, 1), 53-bit resolution.
inline double unit_real(std::mt19937_64& rng) {
  return (rng() >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

inline detmax::VectorSet random_integer_vectors(std::mt19937_64& rng, int d,
                                                int n, int mag = 5) {
  Eigen::MatrixXd m(d, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) m(k, i) = bounded(rng, -mag, mag);
  return detmax::VectorSet(std::move(m));
}

inline detmax::VectorSet random_real_vectors(std::mt19937_64& rng, int d,
                                             int n) {
  Eigen::MatrixXd m(d, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) m(k, i) = unit_real(rng);
  return detmax::VectorSet(std::move(m));
}

// First r ids form the basis; redraws until it is well conditioned, so
// identity checks are not polluted by near-singular draws.
inline detmax::VectorSet conditioned_vectors(std::mt19937_64& rng, int d,
                                             int n, int r,
                                             double min_log_vol = -6.0) {
  for (;;) {
    detmax::VectorSet vs = random_real_vectors(rng, d, n);
    std::vector<int> basis(r);
    for (int i = 0; i < r; ++i) basis[i] = i;
    const double lv = detmax::log_volume(vs, basis);
    if (lv != detmax::kNegInf && lv > min_log_vol) return vs;
  }
}

inline std::vector<int> iota_ids(int r) {
  std::vector<int> s(r);
  for (int i = 0; i < r; ++i) s[i] = i;
  return s;
}

// The three-vector one-swap fixture: blocks {0,1} and {2}, optimum {1,2}.
inline detmax::Instance line_fixture() {
  return detmax::Instance{
      detmax::VectorSet::from_rows({{1, 0}, {3, 0}, {0, 1}}),
      detmax::MatroidSpec::make_partition(3, {{0, 1}, {2}}), std::nullopt};
}

}  // namespace testutil
