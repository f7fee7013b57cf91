#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "expgraph/eval.hpp"
#include "expgraph/gen.hpp"
#include "expgraph/graph.hpp"
#include "expgraph/io.hpp"
#include "expgraph/oracle.hpp"
#include "expgraph/solvers.hpp"
#include "expgraph/taylor.hpp"

namespace expgraph::cli {

namespace {

// Thrown for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kReferenceEps = 1e-10;

struct GraphArgs {
  std::string path;
  std::string format = "auto";
  bool undirected = false;
};

void add_graph_options(CLI::App* cmd, GraphArgs& g) {
  cmd->add_option("--graph", g.path, "Graph file (smat, mtx or edge list)")->required();
  cmd->add_option("--format", g.format, "auto|smat|mtx|edgelist")
      ->check(CLI::IsMember({"auto", "smat", "mtx", "edgelist"}));
  cmd->add_flag("--undirected", g.undirected, "Add the reverse of every arc");
}

CscGraph load_graph(const GraphArgs& a) {
  ReadOptions opts;
  opts.format = parse_graph_format(a.format);
  opts.undirected = a.undirected;
  return read_graph(a.path, opts);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  GraphArgs graph;
  node_t col = 0;
  std::string alg;
  double eps = 1e-4;
  std::size_t z = 0;
  int degree = 0;
  std::string out;
  bool laplacian = false;
  std::string rule = "strict";
};

ThresholdRule parse_rule(const std::string& s) {
  return s == "pseudocode" ? ThresholdRule::kPseudocode : ThresholdRule::kStrict;
}

int do_solve(const SolveArgs& a, std::ostream& out) {
  const CscGraph g = normalize_to_stochastic(load_graph(a.graph));
  SolveOptions opts;
  opts.rule = parse_rule(a.rule);
  SolveReport rep;
  double param = a.eps;
  if (a.alg == "gexpm") {
    rep = gexpm(g, a.col, a.eps, opts);
  } else if (a.alg == "gexpmq") {
    rep = gexpmq(g, a.col, a.eps, opts);
  } else {
    if (a.z == 0) throw UsageError("expmimv requires --z");
    const int degree = a.degree > 0 ? a.degree : make_taylor_params(a.eps).degree;
    rep = expmimv(g, a.col, degree, a.z, opts);
    param = static_cast<double>(a.z);
  }

  SparseVector x = a.laplacian ? laplacian_column_from_exp_column(rep.x, g.out_degree(), a.col)
                               : std::move(rep.x);
  SolutionMeta meta;
  meta.graph = std::filesystem::path(a.graph.path).filename().string();
  meta.algorithm = a.laplacian ? a.alg + "+laplacian" : a.alg;
  meta.param = param;
  meta.degree = rep.degree;
  meta.seed = a.col;
  write_solution(x, meta, a.out);

  out << "algorithm=" << a.alg << (a.alg == "expmimv" ? " z=" : " eps=") << fmt(param)
      << " N=" << rep.degree << " steps=" << rep.steps << " edge_touches=" << rep.edge_touches
      << " effective_matvecs=" << fmt(rep.effective_matvecs) << " wallclock=" << fmt(rep.wallclock)
      << " final_tracker=" << fmt(rep.final_tracker) << '\n';
  return kOk;
}

// ---- oracle ---------------------------------------------------------------

struct OracleArgs {
  GraphArgs graph;
  node_t col = 0;
  int degree = kOracleDegree;
  std::string method = "taylor";
  std::string out;
};

int do_oracle(const OracleArgs& a, std::ostream& out) {
  const CscGraph g = normalize_to_stochastic(load_graph(a.graph));
  const DenseVector v =
      a.method == "horner" ? horner_full(g, a.col, a.degree) : dense_taylor_oracle(g, a.col, a.degree);
  SolutionMeta meta;
  meta.graph = std::filesystem::path(a.graph.path).filename().string();
  meta.algorithm = "oracle-" + a.method;
  meta.param = 0.0;
  meta.degree = a.degree;
  meta.seed = a.col;
  write_solution(SparseVector::from_dense(v), meta, a.out);
  out << "oracle method=" << a.method << " N=" << a.degree << " n=" << g.num_nodes() << '\n';
  return kOk;
}

// ---- gen ------------------------------------------------------------------

struct GenArgs {
  std::string model = "forest-fire";
  std::size_t n = 1000;
  double p = 0.4;
  std::size_t degree = 4;
  std::uint64_t rng = 0;
  std::string out;
};

int do_gen(const GenArgs& a, std::ostream& out) {
  CscGraph g;
  if (a.model == "regular") {
    g = random_regular(a.n, a.degree, a.rng);
  } else {
    ForestFireConfig cfg;
    cfg.n_target = a.n;
    cfg.p_burn = a.p;
    cfg.rng_seed = a.rng;
    g = forest_fire(cfg);
  }
  write_smat(g, a.out);
  const auto s = degree_stats(g);
  out << "model=" << a.model << " n=" << g.num_nodes() << " nnz=" << g.nnz() << " d_max=" << s.d_max
      << " d_min=" << s.d_min << " density=" << fmt(s.edge_density) << '\n';
  return kOk;
}

// ---- sweep / bench --------------------------------------------------------

struct SweepArgs {
  GraphArgs graph;
  std::string name;
  std::vector<std::string> algs{"gexpmq"};
  std::vector<double> eps_list{1e-4};
  std::vector<std::size_t> z_list{1000};
  int degree = 8;
  std::size_t seeds = 100;
  std::uint64_t rng = 0;
  std::vector<std::size_t> k_list{100};
  std::string exclude = "seed+neighbors";
  std::string out;
  bool timing = false;
  bool truth = true;
};

std::vector<node_t> pick_seeds(std::size_t n, std::size_t count, std::uint64_t rng_seed) {
  std::vector<node_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<node_t>(i);
  if (count >= n) return all;
  std::mt19937_64 rng(rng_seed);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t r = std::uniform_int_distribution<std::size_t>(k, n - 1)(rng);
    std::swap(all[k], all[r]);
  }
  all.resize(count);
  return all;
}

std::size_t thread_count(std::size_t trials) {
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("EXPGRAPH_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) threads = std::min(threads, static_cast<std::size_t>(v));
  }
  return std::max<std::size_t>(1, std::min(threads, trials));
}

std::vector<MetricRow> run_trial(const CscGraph& g, node_t seed, const SweepArgs& a,
                                 ExcludePolicy exclude) {
  std::vector<MetricRow> rows;
  SparseVector truth;
  if (a.truth) {
    truth = g.num_nodes() <= kOracleMaxNodes
                ? SparseVector::from_dense(dense_taylor_oracle(g, seed, kOracleDegree))
                : gexpmq(g, seed, kReferenceEps).x;
  }
  auto emit = [&](const std::string& alg, double param, const std::string& metric, double value) {
    rows.push_back({a.name, seed, alg, param, metric, value});
  };
  auto record = [&](const std::string& alg, double param, const SolveReport& rep) {
    if (a.truth) {
      for (std::size_t k : a.k_list) {
        const auto pr = precision_at_k(rep.x, truth, k, exclude, g, seed);
        emit(alg, param, "precision@" + std::to_string(k), pr.precision);
      }
      emit(alg, param, "one_norm_error", one_norm_error(rep.x, truth));
    }
    emit(alg, param, "effective_matvecs", work_accounting(rep, g));
    emit(alg, param, "steps", static_cast<double>(rep.steps));
    emit(alg, param, "nnz", static_cast<double>(rep.x.nnz()));
    if (a.timing) emit(alg, param, "wallclock", rep.wallclock);
  };
  for (const auto& alg : a.algs) {
    if (alg == "expmimv") {
      for (std::size_t z : a.z_list) record(alg, static_cast<double>(z), expmimv(g, seed, a.degree, z));
    } else {
      for (double eps : a.eps_list) {
        record(alg, eps, alg == "gexpm" ? gexpm(g, seed, eps) : gexpmq(g, seed, eps));
      }
    }
  }
  return rows;
}

int do_sweep(SweepArgs a, std::ostream& out) {
  for (const auto& alg : a.algs) {
    if (alg != "gexpm" && alg != "gexpmq" && alg != "expmimv") {
      throw UsageError("unknown algorithm '" + alg + "'");
    }
  }
  if (a.k_list.empty() || std::find(a.k_list.begin(), a.k_list.end(), 0u) != a.k_list.end()) {
    throw UsageError("--k-list entries must be >= 1");
  }
  const ExcludePolicy exclude = parse_exclude_policy(a.exclude);
  const CscGraph g = normalize_to_stochastic(load_graph(a.graph));
  if (a.name.empty()) a.name = std::filesystem::path(a.graph.path).stem().string();
  const auto seeds = pick_seeds(g.num_nodes(), a.seeds, a.rng);

  std::vector<std::vector<MetricRow>> per_trial(seeds.size());
  std::vector<std::string> failures(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < seeds.size(); t = next++) {
      try {
        per_trial[t] = run_trial(g, seeds[t], a, exclude);
      } catch (const std::exception& e) {
        failures[t] = e.what();
      }
    }
  };
  const std::size_t nthreads = thread_count(seeds.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (std::size_t t = 0; t < seeds.size(); ++t) {
    if (!failures[t].empty()) {
      throw std::runtime_error("trial for seed " + std::to_string(seeds[t]) + ": " + failures[t]);
    }
  }

  std::ofstream csv(a.out, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write '" + a.out + "'");
  write_csv_header(csv);
  std::size_t count = 0;
  for (const auto& rows : per_trial) {
    for (const auto& row : rows) write_csv_row(csv, row);
    count += rows.size();
  }
  out << "trials=" << seeds.size() << " rows=" << count << " out=" << a.out << '\n';
  return kOk;
}

void add_sweep_options(CLI::App* cmd, SweepArgs& a) {
  add_graph_options(cmd, a.graph);
  cmd->add_option("--name", a.name, "Graph id written to the CSV (default: file stem)");
  cmd->add_option("--algs", a.algs, "Algorithms: gexpm, gexpmq, expmimv")->delimiter(',');
  cmd->add_option("--eps-list", a.eps_list, "Tolerances for gexpm/gexpmq")->delimiter(',');
  cmd->add_option("--z-list", a.z_list, "Heap sizes for expmimv")->delimiter(',');
  cmd->add_option("--N", a.degree, "Taylor degree for expmimv")->check(CLI::PositiveNumber);
  cmd->add_option("--seeds", a.seeds, "Number of random seed nodes")->check(CLI::PositiveNumber);
  cmd->add_option("--rng", a.rng, "Random seed for seed-node selection");
  cmd->add_option("--out", a.out, "CSV output path")->required();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local algorithms for columns of the matrix exponential of graph matrices"};
  app.name(args.empty() ? "expgraph" : std::filesystem::path(args[0]).filename().string());
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute one column of exp(P)");
  add_graph_options(solve_cmd, solve.graph);
  solve_cmd->add_option("--col", solve.col, "Seed node (0-based)")->required();
  solve_cmd->add_option("--alg", solve.alg, "gexpm|gexpmq|expmimv")
      ->required()
      ->check(CLI::IsMember({"gexpm", "gexpmq", "expmimv"}));
  solve_cmd->add_option("--eps", solve.eps, "1-norm tolerance")->check(CLI::Range(0.0, 1.0));
  solve_cmd->add_option("--z", solve.z, "expmimv: entries kept per product")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--N", solve.degree, "expmimv: Taylor degree")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", solve.out, "Solution file")->required();
  solve_cmd->add_flag("--laplacian", solve.laplacian, "Write the column of exp(-L) instead");
  solve_cmd->add_option("--threshold-rule", solve.rule, "strict|pseudocode")
      ->check(CLI::IsMember({"strict", "pseudocode"}));

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Dense reference column T_N(P) e_c");
  add_graph_options(oracle_cmd, oracle.graph);
  oracle_cmd->add_option("--col", oracle.col, "Seed node (0-based)")->required();
  oracle_cmd->add_option("--N", oracle.degree, "Taylor degree")->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--method", oracle.method, "taylor|horner")
      ->check(CLI::IsMember({"taylor", "horner"}));
  oracle_cmd->add_option("--out", oracle.out, "Solution file")->required();

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic graph as SMAT");
  gen_cmd->add_option("--model", gen.model, "forest-fire|regular")
      ->check(CLI::IsMember({"forest-fire", "regular"}));
  gen_cmd->add_option("--n", gen.n, "Node count")->required();
  gen_cmd->add_option("--p", gen.p, "Burning probability");
  gen_cmd->add_option("--degree", gen.degree, "Degree for the regular model");
  gen_cmd->add_option("--rng", gen.rng, "Random seed");
  gen_cmd->add_option("--out", gen.out, "SMAT output path")->required();

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Accuracy/work grid over seeds, emitted as CSV");
  add_sweep_options(sweep_cmd, sweep);
  sweep_cmd->add_option("--k-list", sweep.k_list, "Top-k set sizes")->delimiter(',');
  sweep_cmd->add_option("--exclude", sweep.exclude, "none|seed+neighbors")
      ->check(CLI::IsMember({"none", "seed+neighbors"}));
  sweep_cmd->add_flag("--timing", sweep.timing, "Also emit wallclock rows (not deterministic)");

  SweepArgs bench;
  bench.truth = false;
  bench.timing = true;
  auto* bench_cmd = app.add_subcommand("bench", "Runtime and work per seed, emitted as CSV");
  add_sweep_options(bench_cmd, bench);

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kUsageError;
  }

  try {
    if (solve_cmd->parsed()) return do_solve(solve, out);
    if (oracle_cmd->parsed()) return do_oracle(oracle, out);
    if (gen_cmd->parsed()) return do_gen(gen, out);
    if (sweep_cmd->parsed()) return do_sweep(sweep, out);
    if (bench_cmd->parsed()) return do_sweep(bench, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace expgraph::cli
