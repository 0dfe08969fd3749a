// nga: command-line front end for the MCES solver.
//
// Exit codes: 0 success, 1 usage error, 2 input validation, 3 budget
// exceeded.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nga/acg.h"
#include "nga/error.h"
#include "nga/generator.h"
#include "nga/graph_io.h"
#include "nga/json_io.h"
#include "nga/metrics.h"
#include "nga/nga.h"
#include "nga/oracle.h"
#include "nga/rng.h"

#ifndef NGA_VERSION
#define NGA_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kInput = 2, kBudget = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("write failed: " + path.string());
}

// Ids become file names; anything outside [A-Za-z0-9._-] turns into '_'.
std::string file_stem(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    if (!ok) c = '_';
  }
  return out.empty() ? "_" : out;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Runs work(i) for i in [0, count) on up to `jobs` threads. If several
// items fail, the exception of the lowest index is rethrown so the reported
// error does not depend on scheduling.
template <typename F>
void run_parallel(int count, int jobs, F&& work) {
  std::atomic<int> next{0};
  std::mutex mu;
  std::exception_ptr failure;
  int failed_at = INT_MAX;
  auto worker = [&] {
    for (;;) {
      const int i = next++;
      if (i >= count) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  const int n = std::max(1, std::min(jobs, count));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// Solver flags shared by every subcommand that runs the solver. Each one
// overrides the config file only when given.
struct SolverFlags {
  std::string config;
  std::uint64_t seed = 0;
  int m = 0, d = 0, sinkhorn_iters = 0, gumbel_samples = 0, epochs = 0;
  double lr = 0.0, time_budget_s = 0.0;
  std::string variant, init;
  CLI::Option *seed_opt = nullptr, *m_opt = nullptr, *d_opt = nullptr,
              *sinkhorn_opt = nullptr, *gumbel_opt = nullptr, *epochs_opt = nullptr,
              *lr_opt = nullptr, *budget_opt = nullptr, *variant_opt = nullptr,
              *init_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "SolverConfig JSON file");
    seed_opt = app->add_option("--seed", seed, "Base seed for every random draw");
    m_opt = app->add_option("--m", m, "Number of layers");
    d_opt = app->add_option("--d", d, "Hidden dimension of the temperature vectors");
    sinkhorn_opt = app->add_option("--sinkhorn-iters", sinkhorn_iters);
    gumbel_opt = app->add_option("--gumbel-samples", gumbel_samples);
    lr_opt = app->add_option("--lr", lr, "Adam learning rate");
    epochs_opt = app->add_option("--epochs", epochs);
    budget_opt = app->add_option("--time-budget-s", time_budget_s, "Wall-clock training budget");
    epochs_opt->excludes(budget_opt);
    variant_opt = app->add_option("--variant", variant)->check(
        CLI::IsMember({"product", "scalar", "positive", "manual_schedule", "classic_ga",
                       "ga_gumbel"}));
    init_opt = app->add_option("--init", init)->check(CLI::IsMember({"uniform", "random"}));
  }

  nga::SolverConfig build() const {
    nga::SolverConfig cfg;
    if (!config.empty()) cfg = nga::parse_config(read_file(config));
    if (seed_opt->count()) cfg.seed = seed;
    if (m_opt->count()) cfg.m = m;
    if (d_opt->count()) cfg.d = d;
    if (sinkhorn_opt->count()) cfg.sinkhorn_iters = sinkhorn_iters;
    if (gumbel_opt->count()) cfg.gumbel_samples = gumbel_samples;
    if (lr_opt->count()) cfg.learning_rate = lr;
    if (epochs_opt->count()) {
      cfg.epochs = epochs;
      cfg.time_budget_s.reset();
    }
    if (budget_opt->count()) cfg.time_budget_s = time_budget_s;
    if (variant_opt->count()) cfg.variant = nga::parse_variant(variant);
    if (init_opt->count()) cfg.init = nga::parse_init(init);
    cfg.validate();
    return cfg;
  }
};

struct OracleFlags {
  int max_nodes = 10;
  double time_limit_ms = 0.0;
  bool force = false;
  std::string method = "bnb";

  void attach(CLI::App* app) {
    app->add_option("--max-nodes", max_nodes, "Refuse pairs whose smaller graph is larger")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--time-limit-ms", time_limit_ms, "0 means unlimited")
        ->check(CLI::NonNegativeNumber);
    app->add_flag("--force", force, "Ignore --max-nodes");
    app->add_option("--method", method)->check(CLI::IsMember({"bnb", "exhaustive"}));
  }

  nga::OracleBudget budget() const { return {max_nodes, time_limit_ms, force}; }

  nga::CommonSubgraphResult run(const nga::LabeledGraph& g1, const nga::LabeledGraph& g2) const {
    return method == "bnb" ? nga::exact_mces(g1, g2, budget())
                           : nga::exhaustive_mces(g1, g2, budget());
  }
};

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const auto& in : inputs) {
    const fs::path p(in);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(p)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.size() > 10 &&
            name.ends_with(".pair.json")) {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::exists(p)) {
      files.push_back(p);
    } else {
      throw InputError("no such file or directory: " + in);
    }
  }
  if (files.empty()) throw InputError("no pair files found");
  return files;
}

std::vector<nga::GraphPairInstance> load_pairs(const std::vector<std::string>& inputs) {
  std::vector<nga::GraphPairInstance> pairs;
  std::set<std::string> ids;
  for (const auto& path : expand_inputs(inputs)) {
    nga::GraphPairInstance pair;
    try {
      pair = nga::parse_pair(read_file(path));
    } catch (const nga::Error& e) {
      throw InputError(path.string() + ": " + e.what());
    }
    if (pair.id.empty()) {
      std::string stem = path.filename().string();
      if (stem.ends_with(".pair.json")) stem.resize(stem.size() - 10);
      else stem = path.stem().string();
      pair.id = stem;
    }
    if (pair.g1.empty() || pair.g2.empty()) {
      throw InputError(path.string() + ": both graphs must be non-empty");
    }
    if (!ids.insert(file_stem(pair.id)).second) {
      throw InputError("duplicate pair id " + pair.id);
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<nga::NamedGraph> load_graph_set(const std::string& path) {
  try {
    auto graphs = nga::parse_graph_set(read_file(path));
    if (graphs.empty()) throw InputError(path + ": no graphs");
    return graphs;
  } catch (const nga::Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

fs::path prepare_out(const std::string& out) {
  const fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("cannot create output directory " + out);
  return dir;
}

ordered_json manifest_base(const std::string& command) {
  ordered_json m;
  m["command"] = command;
  m["version"] = NGA_VERSION;
  return m;
}

void write_manifest(const fs::path& dir, ordered_json manifest, double wall_ms) {
  manifest["wall_ms"] = wall_ms;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

std::string history_text(const std::vector<nga::HistoryEntry>& history) {
  std::string text;
  for (const auto& e : history) text += nga::history_line(e) + "\n";
  return text;
}

nga::CommonSubgraphResult read_reference(const fs::path& dir, const std::string& id) {
  const fs::path path = dir / (file_stem(id) + ".result.json");
  try {
    return nga::parse_result(read_file(path));
  } catch (const nga::Error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

// ---- solve ---------------------------------------------------------------

struct SolveArgs {
  SolverFlags solver;
  std::vector<std::string> inputs;
  std::string out;
  std::string reference;
  int jobs = 1;
};

int cmd_solve(const SolveArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const nga::SolverConfig cfg = a.solver.build();
  const auto pairs = load_pairs(a.inputs);
  const fs::path dir = prepare_out(a.out);

  std::vector<ordered_json> rows(pairs.size());
  run_parallel(static_cast<int>(pairs.size()), a.jobs, [&](int i) {
    const auto& pair = pairs[i];
    const nga::SolveOutput out = nga::solve(pair, cfg);
    if (!nga::verify_common_subgraph(pair.g1, pair.g2, out.result)) {
      throw std::logic_error("decoded result failed verification for " + pair.id);
    }
    const std::string stem = file_stem(pair.id);
    write_file(dir / (stem + ".result.json"), nga::result_to_json(out.result).dump(2) + "\n");
    ordered_json row;
    row["id"] = pair.id;
    row["result"] = stem + ".result.json";
    if (!out.history.empty()) {
      write_file(dir / (stem + ".history.jsonl"), history_text(out.history));
      row["history"] = stem + ".history.jsonl";
    }
    row["size"] = out.result.size;
    row["objective"] = out.result.objective;
    rows[i] = std::move(row);
  });

  ordered_json manifest = manifest_base("solve");
  manifest["seed"] = cfg.seed;
  manifest["config"] = nga::config_to_json(cfg);
  if (!a.reference.empty()) {
    double sum = 0.0;
    int counted = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto exact = read_reference(a.reference, pairs[i].id);
      nga::CommonSubgraphResult pred;
      pred.size = rows[i]["size"].get<int>();
      const auto acc = nga::accuracy(pred, exact);
      if (acc) {
        rows[i]["accuracy"] = *acc;
        sum += *acc;
        ++counted;
      } else {
        rows[i]["accuracy"] = nullptr;
      }
    }
    ordered_json summary;
    summary["scored"] = counted;
    summary["mean_accuracy"] = counted ? json(sum / counted) : json(nullptr);
    manifest["summary"] = summary;
    std::cout << "mean accuracy " << (counted ? sum / counted : 0.0) << " over " << counted
              << " pairs\n";
  }
  manifest["instances"] = rows;
  write_manifest(dir, manifest, ms_since(t0));
  return kOk;
}

// ---- oracle --------------------------------------------------------------

struct OracleArgs {
  OracleFlags oracle;
  std::vector<std::string> inputs;
  std::string out;
  int jobs = 1;
};

int cmd_oracle(const OracleArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto pairs = load_pairs(a.inputs);
  const fs::path dir = prepare_out(a.out);
  std::vector<ordered_json> rows(pairs.size());
  run_parallel(static_cast<int>(pairs.size()), a.jobs, [&](int i) {
    const auto& pair = pairs[i];
    const auto result = a.oracle.run(pair.g1, pair.g2);
    ordered_json j = nga::result_to_json(result);
    j["optimal"] = true;
    const std::string stem = file_stem(pair.id);
    write_file(dir / (stem + ".result.json"), j.dump(2) + "\n");
    ordered_json row;
    row["id"] = pair.id;
    row["result"] = stem + ".result.json";
    row["size"] = result.size;
    rows[i] = std::move(row);
  });
  ordered_json manifest = manifest_base("oracle");
  ordered_json budget;
  budget["max_nodes"] = a.oracle.max_nodes;
  budget["time_limit_ms"] = a.oracle.time_limit_ms;
  budget["force"] = a.oracle.force;
  budget["method"] = a.oracle.method;
  manifest["budget"] = budget;
  manifest["instances"] = rows;
  write_manifest(dir, manifest, ms_since(t0));
  return kOk;
}

// ---- similarity ----------------------------------------------------------

struct SimilarityArgs {
  SolverFlags solver;
  OracleFlags oracle;
  std::vector<std::string> inputs;
  std::string out;
  std::string reference;
  bool exact = false;
  int jobs = 1;
};

int cmd_similarity(const SimilarityArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const nga::SolverConfig cfg = a.solver.build();
  const auto pairs = load_pairs(a.inputs);
  std::vector<double> sims(pairs.size());
  std::vector<int> sizes(pairs.size());
  run_parallel(static_cast<int>(pairs.size()), a.jobs, [&](int i) {
    const auto& pair = pairs[i];
    const auto result =
        a.exact ? a.oracle.run(pair.g1, pair.g2) : nga::solve(pair, cfg).result;
    sims[i] = nga::johnson_similarity(pair.g1, pair.g2, result);
    sizes[i] = result.size;
  });

  std::string lines;
  std::vector<double> truth;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    ordered_json row;
    row["id"] = pairs[i].id;
    row["similarity"] = sims[i];
    row["size"] = sizes[i];
    if (!a.reference.empty()) {
      const auto exact = read_reference(a.reference, pairs[i].id);
      truth.push_back(nga::johnson_similarity(pairs[i].g1, pairs[i].g2, exact));
      row["reference_similarity"] = truth.back();
    }
    lines += row.dump() + "\n";
  }
  std::cout << lines;
  ordered_json summary;
  if (!truth.empty()) {
    summary["rmse"] = nga::rmse(sims, truth);
    std::cout << "rmse " << summary["rmse"].get<double>() << "\n";
  }
  if (!a.out.empty()) {
    const fs::path dir = prepare_out(a.out);
    write_file(dir / "similarity.jsonl", lines);
    ordered_json manifest = manifest_base("similarity");
    manifest["seed"] = cfg.seed;
    manifest["config"] = nga::config_to_json(cfg);
    manifest["exact"] = a.exact;
    manifest["results"] = {"similarity.jsonl"};
    if (!summary.empty()) manifest["summary"] = summary;
    write_manifest(dir, manifest, ms_since(t0));
  }
  return kOk;
}

// ---- retrieve ------------------------------------------------------------

struct RetrieveArgs {
  SolverFlags solver;
  OracleFlags oracle;
  std::string queries;
  std::string targets;
  std::string out;
  int k = 10;
  bool no_relevance = false;
  int jobs = 1;
};

int cmd_retrieve(const RetrieveArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const nga::SolverConfig cfg = a.solver.build();
  const auto queries = load_graph_set(a.queries);
  const auto targets = load_graph_set(a.targets);
  const fs::path dir = prepare_out(a.out);
  const int nq = static_cast<int>(queries.size());
  const int nt = static_cast<int>(targets.size());

  std::vector<double> score(static_cast<std::size_t>(nq) * nt);
  std::vector<double> truth(a.no_relevance ? 0 : score.size());
  run_parallel(nq * nt, a.jobs, [&](int idx) {
    const auto& q = queries[idx / nt].graph;
    const auto& t = targets[idx % nt].graph;
    const nga::GraphPairInstance pair{"", q, t};
    score[idx] = nga::johnson_similarity(q, t, nga::solve(pair, cfg).result);
    if (!a.no_relevance) truth[idx] = nga::johnson_similarity(q, t, a.oracle.run(q, t));
  });

  std::vector<nga::RankedList> rankings;
  std::map<std::string, std::set<std::string>> relevant;
  std::string lines;
  for (int qi = 0; qi < nq; ++qi) {
    std::vector<nga::RankedEntry> scored, exact;
    for (int ti = 0; ti < nt; ++ti) {
      scored.push_back({targets[ti].id, score[qi * nt + ti]});
      if (!a.no_relevance) exact.push_back({targets[ti].id, truth[qi * nt + ti]});
    }
    rankings.push_back(nga::rank_targets(queries[qi].id, scored));
    if (!a.no_relevance) relevant[queries[qi].id] = nga::top_k_targets(exact, a.k);
    ordered_json row;
    row["query"] = queries[qi].id;
    ordered_json ranking = ordered_json::array();
    for (const auto& e : rankings.back().entries) {
      ranking.push_back(ordered_json{{"target", e.target}, {"score", e.score}});
    }
    row["ranking"] = ranking;
    lines += row.dump() + "\n";
  }
  write_file(dir / "rankings.jsonl", lines);

  ordered_json manifest = manifest_base("retrieve");
  manifest["seed"] = cfg.seed;
  manifest["config"] = nga::config_to_json(cfg);
  manifest["results"] = {"rankings.jsonl"};
  if (!a.no_relevance) {
    const auto metrics = nga::retrieval_metrics(rankings, relevant);
    ordered_json m;
    m["k"] = a.k;
    m["mrr"] = metrics.mrr;
    m["p_at_10"] = metrics.p_at_10;
    m["map"] = metrics.map;
    write_file(dir / "metrics.json", m.dump(2) + "\n");
    manifest["results"].push_back("metrics.json");
    std::cout << m.dump() << "\n";
  }
  write_manifest(dir, manifest, ms_since(t0));
  return kOk;
}

// ---- bench ---------------------------------------------------------------

struct BenchArgs {
  SolverFlags solver;
  std::vector<std::string> inputs;
  std::string out;
  int jobs = 1;
};

// One trace line per epoch with the best decoded objective so far; GA
// variants, which have no epochs, produce a single line.
int cmd_bench(const BenchArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const nga::SolverConfig cfg = a.solver.build();
  const auto pairs = load_pairs(a.inputs);
  const fs::path dir = prepare_out(a.out);
  std::vector<ordered_json> rows(pairs.size());
  run_parallel(static_cast<int>(pairs.size()), a.jobs, [&](int i) {
    const auto& pair = pairs[i];
    std::string trace;
    const auto start = std::chrono::steady_clock::now();
    auto on_epoch = [&](const nga::HistoryEntry& e) {
      ordered_json line;
      line["id"] = pair.id;
      line["epoch"] = e.epoch;
      line["wall_ms"] = e.wall_ms;
      line["loss"] = e.loss;
      line["best_objective"] = e.best_objective;
      trace += line.dump() + "\n";
    };
    const nga::SolveOutput out = nga::solve(pair, cfg, on_epoch);
    const double wall = ms_since(start);
    if (trace.empty()) {
      ordered_json line;
      line["id"] = pair.id;
      line["epoch"] = 0;
      line["wall_ms"] = wall;
      line["best_objective"] = out.result.objective;
      trace = line.dump() + "\n";
    }
    const std::string stem = file_stem(pair.id);
    write_file(dir / (stem + ".trace.jsonl"), trace);
    write_file(dir / (stem + ".result.json"), nga::result_to_json(out.result).dump(2) + "\n");
    ordered_json row;
    row["id"] = pair.id;
    row["trace"] = stem + ".trace.jsonl";
    row["result"] = stem + ".result.json";
    row["size"] = out.result.size;
    row["wall_ms"] = wall;
    rows[i] = std::move(row);
  });
  ordered_json manifest = manifest_base("bench");
  manifest["seed"] = cfg.seed;
  manifest["config"] = nga::config_to_json(cfg);
  manifest["instances"] = rows;
  write_manifest(dir, manifest, ms_since(t0));
  return kOk;
}

// ---- gen -----------------------------------------------------------------

struct GenArgs {
  std::uint64_t seed = 0;
  int n = 0, n_min = 6, n_max = 10;
  int pairs = 0, graphs = 0;
  double avg_degree = 2.2;
  int node_labels = 4, edge_labels = 3;
  std::string out;
  CLI::Option* n_opt = nullptr;
};

int cmd_gen(const GenArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  int lo = a.n_min, hi = a.n_max;
  if (a.n_opt->count()) lo = hi = a.n;
  if (lo < 1 || hi < lo) throw UsageError("need 1 <= n_min <= n_max");
  const nga::LabelAlphabet alphabet{a.node_labels, a.edge_labels};
  const fs::path dir = prepare_out(a.out);
  ordered_json manifest = manifest_base("gen");
  manifest["seed"] = a.seed;
  manifest["n_min"] = lo;
  manifest["n_max"] = hi;
  manifest["avg_degree"] = a.avg_degree;
  manifest["node_labels"] = a.node_labels;
  manifest["edge_labels"] = a.edge_labels;
  ordered_json files = ordered_json::array();
  try {
    if (a.pairs > 0) {
      for (const auto& pair :
           nga::generate_battery(a.seed, a.pairs, lo, hi, alphabet, a.avg_degree)) {
        const std::string name = file_stem(pair.id) + ".pair.json";
        write_file(dir / name, nga::serialize_pair(pair) + "\n");
        files.push_back(name);
      }
    } else {
      std::vector<nga::NamedGraph> graphs;
      const nga::Rng root(a.seed);
      for (int k = 0; k < a.graphs; ++k) {
        nga::Rng rng = root.split(static_cast<std::uint64_t>(k));
        const int n = lo + static_cast<int>(rng.below(hi - lo + 1));
        const double degree = std::min(a.avg_degree, n - 1.0);
        graphs.push_back({"graph-" + std::to_string(k),
                          nga::generate_molecular_like(rng.next_u64(), n, alphabet, degree)});
      }
      write_file(dir / "graphs.jsonl", nga::serialize_graph_set(graphs));
      files.push_back("graphs.jsonl");
    }
  } catch (const nga::GraphError& e) {
    throw UsageError(e.what());
  }
  manifest["results"] = files;
  write_manifest(dir, manifest, ms_since(t0));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate maximum common edge subgraphs by neural graduated assignment"};
  app.require_subcommand(1);
  app.set_version_flag("--version", NGA_VERSION);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve pair files and write one result per pair");
  solve_args.solver.attach(solve);
  solve->add_option("inputs", solve_args.inputs, "Pair files or directories of *.pair.json")
      ->required();
  solve->add_option("--out", solve_args.out, "Output directory")->required();
  solve->add_option("--reference", solve_args.reference,
                    "Directory of exact results; adds accuracy to the manifest");
  solve->add_option("--jobs", solve_args.jobs)->check(CLI::PositiveNumber);

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "Exact MCES for small pairs");
  oracle_args.oracle.attach(oracle);
  oracle->add_option("inputs", oracle_args.inputs)->required();
  oracle->add_option("--out", oracle_args.out)->required();
  oracle->add_option("--jobs", oracle_args.jobs)->check(CLI::PositiveNumber);

  SimilarityArgs sim_args;
  auto* similarity = app.add_subcommand("similarity", "Johnson similarity per pair");
  sim_args.solver.attach(similarity);
  sim_args.oracle.attach(similarity);
  similarity->add_option("inputs", sim_args.inputs)->required();
  similarity->add_option("--out", sim_args.out);
  similarity->add_option("--reference", sim_args.reference,
                         "Directory of exact results; reports RMSE against them");
  similarity->add_flag("--exact", sim_args.exact, "Use the exact solver instead of NGA");
  similarity->add_option("--jobs", sim_args.jobs)->check(CLI::PositiveNumber);

  RetrieveArgs ret_args;
  auto* retrieve = app.add_subcommand("retrieve", "Rank targets for each query");
  ret_args.solver.attach(retrieve);
  ret_args.oracle.attach(retrieve);
  retrieve->add_option("--queries", ret_args.queries, "Graph set (JSON lines)")->required();
  retrieve->add_option("--targets", ret_args.targets, "Graph set (JSON lines)")->required();
  retrieve->add_option("--out", ret_args.out)->required();
  retrieve->add_option("--k", ret_args.k, "Relevant targets per query")
      ->check(CLI::PositiveNumber);
  retrieve->add_flag("--no-relevance", ret_args.no_relevance,
                     "Skip the exact relevance pass and the metrics");
  retrieve->add_option("--jobs", ret_args.jobs)->check(CLI::PositiveNumber);

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Best-objective-versus-time traces");
  bench_args.solver.attach(bench);
  bench->add_option("inputs", bench_args.inputs)->required();
  bench->add_option("--out", bench_args.out)->required();
  bench->add_option("--jobs", bench_args.jobs)->check(CLI::PositiveNumber);

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Write generated pairs or graph sets");
  gen->add_option("--seed", gen_args.seed);
  gen_args.n_opt = gen->add_option("--n", gen_args.n, "Fixed node count");
  auto* nmin = gen->add_option("--n-min", gen_args.n_min);
  auto* nmax = gen->add_option("--n-max", gen_args.n_max);
  gen_args.n_opt->excludes(nmin)->excludes(nmax);
  auto* npairs = gen->add_option("--pairs", gen_args.pairs, "Number of pairs")
                     ->check(CLI::PositiveNumber);
  auto* ngraphs = gen->add_option("--graphs", gen_args.graphs,
                                  "Number of graphs, written as one JSON-lines set")
                      ->check(CLI::PositiveNumber);
  npairs->excludes(ngraphs);
  gen->add_option("--avg-degree", gen_args.avg_degree)->check(CLI::NonNegativeNumber);
  gen->add_option("--node-labels", gen_args.node_labels)->check(CLI::PositiveNumber);
  gen->add_option("--edge-labels", gen_args.edge_labels)->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_args.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return cmd_solve(solve_args);
    if (*oracle) return cmd_oracle(oracle_args);
    if (*similarity) return cmd_similarity(sim_args);
    if (*retrieve) return cmd_retrieve(ret_args);
    if (*bench) return cmd_bench(bench_args);
    if (*gen) {
      if (!npairs->count() && !ngraphs->count()) throw UsageError("gen needs --pairs or --graphs");
      return cmd_gen(gen_args);
    }
  } catch (const UsageError& e) {
    std::cerr << "nga: " << e.what() << "\n";
    return kUsage;
  } catch (const nga::BudgetExceeded& e) {
    std::cerr << "nga: budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const InputError& e) {
    std::cerr << "nga: " << e.what() << "\n";
    return kInput;
  } catch (const nga::Error& e) {
    std::cerr << "nga: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "nga: internal error: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}
