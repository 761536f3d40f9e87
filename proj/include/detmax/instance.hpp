// Problem instance schema: a vector set, a matroid constraint, and an
// optional starting basis, with a stable JSON file format.
#pragma once

#include "detmax/linalg.hpp"
#include "detmax/matroid.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace detmax {

inline constexpr int kSchemaVersion = 1;

struct Instance {
  VectorSet vectors;
  MatroidSpec matroid;
  std::optional<std::vector<int>> start_basis;
};

// Raised for malformed instance text or schema violations.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws parse_error on syntax or schema problems.
Instance parse_instance(const std::string& json_text);

Instance load_instance(const std::string& path);

// Deterministic serialization: fixed field order, 17 significant digits.
// parse_instance(serialize_instance(i)) reproduces i exactly.
std::string serialize_instance(const Instance& inst);

// Human-readable diagnostics; empty means the instance is well-formed
// (schema, matroid structure, rank bounds, start-basis sanity).
std::vector<std::string> validate_instance_text(const std::string& json_text);

}  // namespace detmax
