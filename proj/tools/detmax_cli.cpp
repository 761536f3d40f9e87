// detmax: volume-maximizing subset selection under a matroid constraint.
//
//   detmax run      --instance FILE [--out FILE] [--brute-force] [--trace]
//                   [--max-iters N] [--eps-rank X] [--start-basis "i,j,..."]
//   detmax validate --instance FILE
//   detmax gen      {hadamard|random-partition|random-uniform|graphic} ...
//
// Exit codes: 0 success, 2 parse/validation error, 3 infeasible instance,
// 4 iteration or enumeration cap exceeded, 5 internal invariant violation.

#include "detmax/instance.hpp"
#include "detmax/oracle.hpp"
#include "detmax/report.hpp"
#include "detmax/solver.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace detmax;

// Seed-stable integer draw: rejection sampling over the raw mt19937_64
// stream, so generated instances are byte-identical across platforms.
int bounded(std::mt19937_64& rng, int lo, int hi) {
  const auto range = static_cast<unsigned long long>(hi - lo + 1);
  const auto limit = ~0ULL - ~0ULL % range;
  unsigned long long x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<int>(x % range);
}

Eigen::MatrixXd random_columns(std::mt19937_64& rng, int d, int n) {
  Eigen::MatrixXd m(d, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) m(k, i) = bounded(rng, -5, 5);
  return m;
}

int write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return 2;
  }
  return 0;
}

bool env_log_enabled() {
  const char* v = std::getenv("DETMAX_LOG");
  return v && *v && std::string(v) != "0";
}

int cmd_run(const std::string& instance_path, const std::string& out_path,
            bool brute_force, bool trace, int max_iters, double eps_rank,
            const std::string& start_basis_csv) {
  Instance inst;
  try {
    inst = load_instance(instance_path);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  SolverConfig cfg;
  cfg.max_iterations = max_iters;
  cfg.eps_rank = eps_rank;
  cfg.trace = trace || env_log_enabled();
  if (!start_basis_csv.empty()) {
    std::vector<int> basis;
    std::stringstream ss(start_basis_csv);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        basis.push_back(std::stoi(part));
      } catch (const std::exception&) {
        std::cerr << "error: --start-basis expects comma-separated integers\n";
        return 2;
      }
    }
    cfg.start_basis = std::move(basis);
  } else if (inst.start_basis) {
    cfg.start_basis = inst.start_basis;
  }

  const auto t0 = std::chrono::steady_clock::now();
  Solution sol;
  try {
    const int r = matroid_rank(inst.matroid);
    sol = r == inst.vectors.dim() ? solve_rank_d(inst.vectors, inst.matroid, cfg)
                                  : solve_rank_r(inst.vectors, inst.matroid, cfg);
  } catch (const infeasible_error& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const invariant_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const Certificate cert = certify(inst.vectors, inst.matroid, sol, eps_rank);

  std::optional<OptReport> oracle;
  if (brute_force) {
    try {
      oracle = brute_force_opt(inst.vectors, inst.matroid);
    } catch (const cap_error& e) {
      std::cerr << "cap exceeded: " << e.what() << "\n";
      return 4;
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  const std::string text =
      render_report(make_report(sol, cert, oracle, seconds));
  if (out_path.empty()) {
    std::cout << text;
  } else {
    if (int rc = write_text(out_path, text)) return rc;
  }
  if (sol.capped) {
    std::cerr << "cap exceeded: stopped after " << sol.iterations
              << " exchanges\n";
    return 4;
  }
  return 0;
}

int cmd_validate(const std::string& instance_path) {
  std::ifstream in(instance_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << instance_path << "\n";
    return 2;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto diags = validate_instance_text(buf.str());
  if (diags.empty()) {
    const Instance inst = parse_instance(buf.str());
    std::cout << "ok: " << inst.vectors.count() << " vectors in dimension "
              << inst.vectors.dim() << ", matroid rank "
              << matroid_rank(inst.matroid) << "\n";
    return 0;
  }
  for (const auto& d : diags) std::cout << "invalid: " << d << "\n";
  return 2;
}

Instance gen_random_partition(int d, int num_blocks, int per_block,
                              unsigned long long seed) {
  std::mt19937_64 rng(seed);
  const int n = num_blocks * per_block;
  std::vector<std::vector<int>> blocks(num_blocks);
  for (int b = 0; b < num_blocks; ++b)
    for (int i = 0; i < per_block; ++i) blocks[b].push_back(b * per_block + i);
  return Instance{VectorSet(random_columns(rng, d, n)),
                  MatroidSpec::make_partition(n, std::move(blocks)),
                  std::nullopt};
}

Instance gen_random_uniform(int d, int n, int r, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  return Instance{VectorSet(random_columns(rng, d, n)),
                  MatroidSpec::make_uniform(n, r), std::nullopt};
}

Instance gen_graphic(int vertices, int extra_edges, int dim,
                     unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < vertices; ++v)
    edges.emplace_back(bounded(rng, 0, v - 1), v);  // random spanning tree
  for (int i = 0; i < extra_edges; ++i) {
    int a = bounded(rng, 0, vertices - 1);
    int b = bounded(rng, 0, vertices - 1);
    while (b == a) b = bounded(rng, 0, vertices - 1);
    edges.emplace_back(a, b);
  }
  const int rank = vertices - 1;
  const int d = dim > 0 ? dim : rank;
  return Instance{
      VectorSet(random_columns(rng, d, static_cast<int>(edges.size()))),
      MatroidSpec::make_graphic(vertices, std::move(edges)), std::nullopt};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"volume-maximizing subset selection under matroid constraints"};
  app.require_subcommand(1);

  std::string instance_path, out_path, start_basis_csv;
  bool brute_force = false, trace = false;
  int max_iters = 0;
  double eps_rank = kDefaultEpsRank;

  CLI::App* run = app.add_subcommand("run", "solve an instance file");
  run->add_option("--instance", instance_path, "instance JSON path")
      ->required();
  run->add_option("--out", out_path, "write the report here (default stdout)");
  run->add_flag("--brute-force", brute_force,
                "attach the exhaustive optimum to the report");
  run->add_flag("--trace", trace, "line-per-exchange progress on stderr");
  run->add_option("--max-iters", max_iters, "exchange cap (0 = automatic)");
  run->add_option("--eps-rank", eps_rank, "relative rank cutoff");
  run->add_option("--start-basis", start_basis_csv,
                  "comma-separated ground ids overriding the instance");

  CLI::App* validate = app.add_subcommand("validate", "check an instance file");
  validate->add_option("--instance", instance_path, "instance JSON path")
      ->required();

  CLI::App* gen = app.add_subcommand("gen", "emit a generated instance");
  gen->require_subcommand(1);
  std::string gen_out;
  unsigned long long seed = 0;
  int g_k = 2, g_dim = 3, g_blocks = 3, g_per_block = 2, g_count = 6,
      g_rank = 2, g_vertices = 4, g_extra = 0, g_gdim = 0;
  CLI::App* g_had = gen->add_subcommand("hadamard", "orthogonal-pair fixture");
  g_had->add_option("--k", g_k, "dimension exponent (d = 2^k)");
  CLI::App* g_part =
      gen->add_subcommand("random-partition", "full-rank partition instance");
  g_part->add_option("--dim", g_dim, "ambient dimension");
  g_part->add_option("--blocks", g_blocks, "number of blocks");
  g_part->add_option("--per-block", g_per_block, "elements per block");
  g_part->add_option("--seed", seed, "generator seed");
  CLI::App* g_uni =
      gen->add_subcommand("random-uniform", "cardinality-capped instance");
  g_uni->add_option("--dim", g_dim, "ambient dimension");
  g_uni->add_option("--count", g_count, "number of vectors");
  g_uni->add_option("--rank", g_rank, "cardinality cap");
  g_uni->add_option("--seed", seed, "generator seed");
  CLI::App* g_gra = gen->add_subcommand("graphic", "spanning-tree instance");
  g_gra->add_option("--vertices", g_vertices, "graph vertices");
  g_gra->add_option("--extra-edges", g_extra, "edges beyond the tree");
  g_gra->add_option("--dim", g_gdim, "dimension (default: graph rank)");
  g_gra->add_option("--seed", seed, "generator seed");
  for (CLI::App* sub : {g_had, g_part, g_uni, g_gra})
    sub->add_option("--out", gen_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (run->parsed())
      return cmd_run(instance_path, out_path, brute_force, trace, max_iters,
                     eps_rank, start_basis_csv);
    if (validate->parsed()) return cmd_validate(instance_path);

    Instance inst;
    if (g_had->parsed())
      inst = hadamard_fixture(g_k);
    else if (g_part->parsed())
      inst = gen_random_partition(g_dim, g_blocks, g_per_block, seed);
    else if (g_uni->parsed())
      inst = gen_random_uniform(g_dim, g_count, g_rank, seed);
    else
      inst = gen_graphic(g_vertices, g_extra, g_gdim, seed);
    const std::string text = serialize_instance(inst);
    if (gen_out.empty()) {
      std::cout << text;
      return 0;
    }
    return write_text(gen_out, text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
