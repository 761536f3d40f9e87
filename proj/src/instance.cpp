#include "detmax/instance.hpp"

#include "json_out.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace detmax {
namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const char* where, std::vector<std::string>& diags) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok)
      diags.push_back(std::string(where) + ": unknown key \"" + key + "\"");
  }
}

std::optional<std::vector<int>> read_int_list(const json& j, const char* where,
                                              std::vector<std::string>& diags) {
  if (!j.is_array()) {
    diags.push_back(std::string(where) + ": expected an array");
    return std::nullopt;
  }
  std::vector<int> out;
  for (const auto& e : j) {
    if (!e.is_number_integer()) {
      diags.push_back(std::string(where) + ": expected integers");
      return std::nullopt;
    }
    out.push_back(e.get<int>());
  }
  return out;
}

std::optional<Instance> build(const json& j, std::vector<std::string>& diags) {
  if (!j.is_object()) {
    diags.push_back("top level: expected an object");
    return std::nullopt;
  }
  check_keys(j, {"schema_version", "dimension", "vectors", "matroid",
                 "start_basis"},
             "top level", diags);
  if (!j.contains("schema_version") ||
      !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != kSchemaVersion) {
    diags.push_back("schema_version: must be the integer " +
                    std::to_string(kSchemaVersion));
    return std::nullopt;
  }
  if (!j.contains("dimension") || !j["dimension"].is_number_integer() ||
      j["dimension"].get<int>() < 1) {
    diags.push_back("dimension: must be a positive integer");
    return std::nullopt;
  }
  const int d = j["dimension"].get<int>();

  if (!j.contains("vectors") || !j["vectors"].is_array() ||
      j["vectors"].empty()) {
    diags.push_back("vectors: must be a non-empty array of rows");
    return std::nullopt;
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : j["vectors"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      diags.push_back("vectors: every row must have exactly " +
                      std::to_string(d) + " entries");
      return std::nullopt;
    }
    std::vector<double> r;
    for (const auto& e : row) {
      if (!e.is_number()) {
        diags.push_back("vectors: entries must be numbers");
        return std::nullopt;
      }
      const double x = e.get<double>();
      if (!std::isfinite(x)) {
        diags.push_back("vectors: entries must be finite");
        return std::nullopt;
      }
      r.push_back(x);
    }
    rows.push_back(std::move(r));
  }
  const int n = static_cast<int>(rows.size());

  if (!j.contains("matroid") || !j["matroid"].is_object() ||
      !j["matroid"].contains("kind") || !j["matroid"]["kind"].is_string()) {
    diags.push_back("matroid: must be an object with a \"kind\" string");
    return std::nullopt;
  }
  const json& mj = j["matroid"];
  const std::string kind = mj["kind"].get<std::string>();
  MatroidSpec m;
  try {
    if (kind == "partition") {
      check_keys(mj, {"kind", "blocks"}, "matroid", diags);
      if (!mj.contains("blocks") || !mj["blocks"].is_array()) {
        diags.push_back("matroid: partition needs a \"blocks\" array");
        return std::nullopt;
      }
      std::vector<std::vector<int>> blocks;
      for (const auto& b : mj["blocks"]) {
        auto ids = read_int_list(b, "matroid.blocks", diags);
        if (!ids) return std::nullopt;
        blocks.push_back(std::move(*ids));
      }
      m = MatroidSpec::make_partition(n, std::move(blocks));
    } else if (kind == "uniform") {
      check_keys(mj, {"kind", "rank"}, "matroid", diags);
      if (!mj.contains("rank") || !mj["rank"].is_number_integer()) {
        diags.push_back("matroid: uniform needs an integer \"rank\"");
        return std::nullopt;
      }
      m = MatroidSpec::make_uniform(n, mj["rank"].get<int>());
    } else if (kind == "graphic") {
      check_keys(mj, {"kind", "num_vertices", "edges"}, "matroid", diags);
      if (!mj.contains("num_vertices") ||
          !mj["num_vertices"].is_number_integer() ||
          !mj.contains("edges") || !mj["edges"].is_array()) {
        diags.push_back(
            "matroid: graphic needs \"num_vertices\" and an \"edges\" array");
        return std::nullopt;
      }
      std::vector<std::pair<int, int>> edges;
      for (const auto& e : mj["edges"]) {
        auto ends = read_int_list(e, "matroid.edges", diags);
        if (!ends) return std::nullopt;
        if (ends->size() != 2) {
          diags.push_back("matroid.edges: every edge needs two endpoints");
          return std::nullopt;
        }
        edges.emplace_back((*ends)[0], (*ends)[1]);
      }
      if (static_cast<int>(edges.size()) != n) {
        diags.push_back("matroid.edges: need one edge per vector");
        return std::nullopt;
      }
      m = MatroidSpec::make_graphic(mj["num_vertices"].get<int>(),
                                    std::move(edges));
    } else if (kind == "linear") {
      check_keys(mj, {"kind", "representation"}, "matroid", diags);
      if (!mj.contains("representation") || !mj["representation"].is_array()) {
        diags.push_back("matroid: linear needs a \"representation\" array");
        return std::nullopt;
      }
      std::vector<std::vector<double>> rep;
      for (const auto& row : mj["representation"]) {
        if (!row.is_array() || row.empty()) {
          diags.push_back("matroid.representation: rows must be non-empty");
          return std::nullopt;
        }
        std::vector<double> r;
        for (const auto& e : row) {
          if (!e.is_number()) {
            diags.push_back("matroid.representation: entries must be numbers");
            return std::nullopt;
          }
          r.push_back(e.get<double>());
        }
        rep.push_back(std::move(r));
      }
      if (static_cast<int>(rep.size()) != n) {
        diags.push_back("matroid.representation: need one row per vector");
        return std::nullopt;
      }
      m = MatroidSpec::make_linear(VectorSet::from_rows(rep));
    } else {
      diags.push_back("matroid: unknown kind \"" + kind + "\"");
      return std::nullopt;
    }
  } catch (const std::invalid_argument& e) {
    diags.push_back(std::string("matroid: ") + e.what());
    return std::nullopt;
  }

  const int r = matroid_rank(m);
  if (r < 1) diags.push_back("matroid: rank must be at least 1");
  if (r > d)
    diags.push_back("matroid: rank " + std::to_string(r) +
                    " exceeds dimension " + std::to_string(d));

  Instance inst{VectorSet::from_rows(rows), std::move(m), std::nullopt};

  if (j.contains("start_basis")) {
    auto sb = read_int_list(j["start_basis"], "start_basis", diags);
    if (!sb) return std::nullopt;
    std::vector<bool> seen(n, false);
    for (int e : *sb) {
      if (e < 0 || e >= n) {
        diags.push_back("start_basis: index out of range");
        return std::nullopt;
      }
      if (seen[e]) {
        diags.push_back("start_basis: duplicate index");
        return std::nullopt;
      }
      seen[e] = true;
    }
    if (static_cast<int>(sb->size()) != r)
      diags.push_back("start_basis: size must equal the matroid rank " +
                      std::to_string(r));
    inst.start_basis = std::move(*sb);
  }
  if (!diags.empty()) return std::nullopt;
  return inst;
}

void append_rows(std::string& out, const Eigen::MatrixXd& cols,
                 const std::string& indent) {
  for (int i = 0; i < cols.cols(); ++i) {
    out += indent + "[";
    for (int k = 0; k < cols.rows(); ++k) {
      if (k) out += ", ";
      out += jsonout::number(cols(k, i));
    }
    out += i + 1 < cols.cols() ? "],\n" : "]\n";
  }
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  std::vector<std::string> diags;
  auto inst = build(j, diags);
  if (!inst) throw parse_error(diags.empty() ? "invalid instance" : diags[0]);
  return std::move(*inst);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const Instance& inst) {
  const auto& m = inst.matroid;
  std::string out = "{\n";
  out += "  \"schema_version\": " + std::to_string(kSchemaVersion) + ",\n";
  out += "  \"dimension\": " + std::to_string(inst.vectors.dim()) + ",\n";
  out += "  \"vectors\": [\n";
  append_rows(out, inst.vectors.matrix(), "    ");
  out += "  ],\n";
  out += "  \"matroid\": {";
  switch (m.kind) {
    case MatroidKind::partition: {
      out += "\"kind\": \"partition\", \"blocks\": [";
      for (size_t b = 0; b < m.blocks.size(); ++b) {
        if (b) out += ", ";
        out += "[";
        for (size_t i = 0; i < m.blocks[b].size(); ++i) {
          if (i) out += ", ";
          out += std::to_string(m.blocks[b][i]);
        }
        out += "]";
      }
      out += "]";
      break;
    }
    case MatroidKind::uniform:
      out += "\"kind\": \"uniform\", \"rank\": " +
             std::to_string(m.uniform_rank);
      break;
    case MatroidKind::graphic: {
      out += "\"kind\": \"graphic\", \"num_vertices\": " +
             std::to_string(m.num_vertices) + ", \"edges\": [";
      for (size_t i = 0; i < m.edges.size(); ++i) {
        if (i) out += ", ";
        out += "[" + std::to_string(m.edges[i].first) + ", " +
               std::to_string(m.edges[i].second) + "]";
      }
      out += "]";
      break;
    }
    case MatroidKind::linear:
      out += "\"kind\": \"linear\", \"representation\": [\n";
      append_rows(out, m.representation.matrix(), "    ");
      out += "  ]";
      break;
  }
  out += "}";
  if (inst.start_basis) {
    out += ",\n  \"start_basis\": [";
    for (size_t i = 0; i < inst.start_basis->size(); ++i) {
      if (i) out += ", ";
      out += std::to_string((*inst.start_basis)[i]);
    }
    out += "]";
  }
  out += "\n}\n";
  return out;
}

std::vector<std::string> validate_instance_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    return {std::string("invalid JSON: ") + e.what()};
  }
  std::vector<std::string> diags;
  auto inst = build(j, diags);
  if (inst && inst->start_basis) {
    // Structural checks passed; confirm the start basis is usable.
    if (!is_independent(inst->matroid, *inst->start_basis))
      diags.push_back("start_basis: not independent in the matroid");
    else if (log_volume(inst->vectors, *inst->start_basis) == kNegInf)
      diags.push_back("start_basis: selected vectors have zero volume");
  }
  return diags;
}

}  // namespace detmax
