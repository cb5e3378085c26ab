#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vsep/vsep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInvariant = 4;

constexpr const char* kCsvHeader =
    "graph,seed,rule,n,m,cost_S,weight_A,weight_B,levels,time_ms,feasible";

/// Shortest decimal form that round-trips, so rows re-parse to the same double.
std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

vsep::MatchRule parse_rule(const std::string& s) {
  return (s == "rm" || s == "random") ? vsep::MatchRule::random
                                      : vsep::MatchRule::heavy_edge;
}

const char* rule_name(vsep::MatchRule r) {
  return r == vsep::MatchRule::random ? "rm" : "he";
}

vsep::GraphFormat pick_format(const std::string& opt, const fs::path& path) {
  if (opt == "metis") return vsep::GraphFormat::metis;
  if (opt == "edgelist") return vsep::GraphFormat::edgelist;
  const std::string ext = path.extension().string();
  if (ext == ".edgelist" || ext == ".edges" || ext == ".el") {
    return vsep::GraphFormat::edgelist;
  }
  return vsep::GraphFormat::metis;
}

/// Accepts "a..b" (inclusive), a comma list, or a single number.
std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  if (spec.empty() || spec.find_first_not_of("0123456789.,") != std::string::npos) {
    throw std::invalid_argument("bad seed spec: " + spec);
  }
  std::vector<std::uint64_t> seeds;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const std::uint64_t lo = std::stoull(spec.substr(0, dots));
    const std::uint64_t hi = std::stoull(spec.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("reversed seed range: " + spec);
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) seeds.push_back(std::stoull(item));
  }
  if (seeds.empty()) throw std::invalid_argument("empty seed list: " + spec);
  return seeds;
}

json indexed_from_one(const std::vector<vsep::Vertex>& vs) {
  json arr = json::array();
  for (vsep::Vertex v : vs) arr.push_back(static_cast<std::uint64_t>(v) + 1);
  return arr;
}

std::string set_to_string(const std::vector<vsep::Vertex>& vs) {
  std::string s = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(static_cast<std::uint64_t>(vs[i]) + 1);
  }
  s += "]";
  return s;
}

struct CommonOpts {
  double balance = 0.6;
  std::string rule = "he";
  std::optional<double> gamma;
  double epsilon = 1e-6;
  double eta = 1e-5;
  std::string format = "auto";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--balance", o.balance, "largest shore weight fraction")
      ->capture_default_str();
  cmd->add_option("--rule", o.rule, "matching rule")
      ->check(CLI::IsMember({"rm", "he", "random", "heavy_edge"}))
      ->capture_default_str();
  cmd->add_option("--gamma", o.gamma, "interaction weight override");
  cmd->add_option("--epsilon", o.epsilon, "cost perturbation step")
      ->capture_default_str();
  cmd->add_option("--eta", o.eta, "joint climb step margin")->capture_default_str();
  cmd->add_option("--format", o.format, "graph file format")
      ->check(CLI::IsMember({"auto", "metis", "edgelist"}))
      ->capture_default_str();
}

vsep::SolveOptions make_options(const CommonOpts& o, std::uint64_t seed) {
  vsep::SolveOptions opts;
  opts.balance = o.balance;
  opts.rule = parse_rule(o.rule);
  opts.seed = seed;
  opts.gamma = o.gamma;
  opts.epsilon = o.epsilon;
  opts.eta = o.eta;
  return opts;
}

struct BenchRow {
  std::string graph;
  std::uint64_t seed = 0;
  std::string rule;
  std::size_t n = 0;
  std::size_t m = 0;
  double cost_s = std::numeric_limits<double>::quiet_NaN();
  double weight_a = std::numeric_limits<double>::quiet_NaN();
  double weight_b = std::numeric_limits<double>::quiet_NaN();
  std::size_t levels = 0;
  double time_ms = 0.0;
  bool feasible = false;
};

std::string csv_row(const BenchRow& r) {
  std::ostringstream os;
  os << r.graph << ',' << r.seed << ',' << r.rule << ',' << r.n << ',' << r.m << ','
     << num(r.cost_s) << ',' << num(r.weight_a) << ',' << num(r.weight_b) << ','
     << r.levels << ',' << num(r.time_ms) << ',' << (r.feasible ? "true" : "false");
  return os.str();
}

BenchRow run_one(const std::string& name, const vsep::WeightedGraph& g,
                 const CommonOpts& common, std::uint64_t seed) {
  BenchRow row;
  row.graph = name;
  row.seed = seed;
  row.rule = rule_name(parse_rule(common.rule));
  row.n = g.vertex_count();
  row.m = g.edge_count();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const vsep::SolveResult r = vsep::solve(g, make_options(common, seed));
    row.cost_s = r.partition.cost_s;
    row.weight_a = r.partition.weight_a;
    row.weight_b = r.partition.weight_b;
    row.levels = r.stats.levels.size();
    row.time_ms = r.stats.total_ms;
    row.feasible = true;
  } catch (const vsep::InfeasibleError&) {
    row.time_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    row.feasible = false;
  }
  return row;
}

int run_solve(const std::string& graph_path, const CommonOpts& common,
              std::uint64_t seed, bool as_json, const std::string& csv_path) {
  const vsep::WeightedGraph g =
      vsep::load_graph(graph_path, pick_format(common.format, graph_path));
  const vsep::SolveOptions opts = make_options(common, seed);
  const vsep::SolveResult r = vsep::solve(g, opts);
  const vsep::Partition& part = r.partition;
  const std::size_t depth = r.stats.levels.size();

  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw vsep::ParseError(csv_path, 0, "cannot open for writing");
    BenchRow row;
    row.graph = graph_path;
    row.seed = seed;
    row.rule = rule_name(opts.rule);
    row.n = g.vertex_count();
    row.m = g.edge_count();
    row.cost_s = part.cost_s;
    row.weight_a = part.weight_a;
    row.weight_b = part.weight_b;
    row.levels = depth;
    row.time_ms = r.stats.total_ms;
    row.feasible = true;
    out << kCsvHeader << '\n' << csv_row(row) << '\n';
  }

  if (as_json) {
    json doc;
    doc["graph"] = graph_path;
    doc["n"] = g.vertex_count();
    doc["m"] = g.edge_count();
    doc["seed"] = seed;
    doc["rule"] = rule_name(opts.rule);
    doc["balance"] = common.balance;
    doc["cost_s"] = part.cost_s;
    doc["weight_a"] = part.weight_a;
    doc["weight_b"] = part.weight_b;
    doc["objective"] = r.objective;
    doc["levels"] = depth;
    doc["time_ms"] = r.stats.total_ms;
    doc["coarsen_ms"] = r.stats.coarsen_ms;
    doc["a"] = indexed_from_one(part.a);
    doc["b"] = indexed_from_one(part.b);
    doc["s"] = indexed_from_one(part.s);
    json levels = json::array();
    for (const vsep::LevelStats& ls : r.stats.levels) {
      json l;
      l["vertices"] = ls.vertices;
      l["edges"] = ls.edges;
      l["cost_before"] = ls.cost_before;
      l["cost_after"] = ls.cost_after;
      l["improvement_pct"] = ls.improvement_pct;
      l["refined"] = ls.refined;
      l["time_ms"] = ls.time_ms;
      levels.push_back(std::move(l));
    }
    doc["level_stats"] = std::move(levels);
    std::cout << doc.dump(2) << '\n';
    return 0;
  }

  std::cout << "graph=" << graph_path << " n=" << g.vertex_count()
            << " m=" << g.edge_count() << " seed=" << seed
            << " rule=" << rule_name(opts.rule) << " balance=" << num(common.balance)
            << '\n';
  for (std::size_t li = depth; li-- > 0;) {
    const vsep::LevelStats& ls = r.stats.levels[li];
    std::cout << "level " << li << ": n=" << ls.vertices << " m=" << ls.edges
              << " cost " << num(ls.cost_before) << " -> " << num(ls.cost_after)
              << " improvement=" << fixed2(ls.improvement_pct) << "%"
              << (ls.refined ? "" : " (pass-through)") << '\n';
  }
  std::cout << "cost_S=" << num(part.cost_s) << " |A|=" << part.a.size()
            << " |B|=" << part.b.size() << " levels=" << depth << '\n';
  std::cout << "weight_A=" << num(part.weight_a) << " weight_B=" << num(part.weight_b)
            << " objective=" << num(r.objective) << '\n';
  std::cout << "improvement=" << fixed2(r.stats.levels[0].improvement_pct) << "%"
            << " time_ms=" << num(r.stats.total_ms)
            << " coarsen_ms=" << num(r.stats.coarsen_ms) << '\n';
  return 0;
}

int run_oracle(const std::string& graph_path, const CommonOpts& common) {
  const vsep::WeightedGraph g =
      vsep::load_graph(graph_path, pick_format(common.format, graph_path));
  const vsep::Bounds b = vsep::derive_bounds(g, common.balance);
  const vsep::VspSolution sol = vsep::exact_vsp(g, b);
  std::cout << "graph=" << graph_path << " n=" << g.vertex_count()
            << " m=" << g.edge_count() << " balance=" << num(common.balance) << '\n';
  std::cout << "cost_S=" << num(sol.cost) << " |A|=" << sol.partition.a.size()
            << " |B|=" << sol.partition.b.size() << '\n';
  std::cout << "a=" << set_to_string(sol.partition.a)
            << " b=" << set_to_string(sol.partition.b)
            << " s=" << set_to_string(sol.partition.s) << '\n';
  return 0;
}

std::vector<vsep::Vertex> read_vertex_set(const json& doc, const char* key,
                                          std::size_t n, const std::string& path) {
  std::vector<vsep::Vertex> vs;
  if (!doc.contains(key)) return vs;
  for (const json& item : doc.at(key)) {
    if (!item.is_number_integer()) {
      throw vsep::ParseError(path, 0, std::string(key) + " holds a non-integer");
    }
    const std::int64_t v = item.get<std::int64_t>();
    if (v < 1 || static_cast<std::uint64_t>(v) > n) {
      throw vsep::ParseError(path, 0,
                             std::string(key) + " vertex " + std::to_string(v) +
                                 " is outside 1.." + std::to_string(n));
    }
    vs.push_back(static_cast<vsep::Vertex>(v - 1));
  }
  std::sort(vs.begin(), vs.end());
  return vs;
}

int run_check(const std::string& graph_path, const std::string& part_path,
              const CommonOpts& common) {
  const vsep::WeightedGraph g =
      vsep::load_graph(graph_path, pick_format(common.format, graph_path));
  std::ifstream in(part_path);
  if (!in) throw vsep::ParseError(part_path, 0, "cannot open");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw vsep::ParseError(part_path, 0, e.what());
  }

  vsep::Partition part;
  part.a = read_vertex_set(doc, "a", g.vertex_count(), part_path);
  part.b = read_vertex_set(doc, "b", g.vertex_count(), part_path);
  part.s = read_vertex_set(doc, "s", g.vertex_count(), part_path);
  for (vsep::Vertex v : part.a) part.weight_a += g.weight(v);
  for (vsep::Vertex v : part.b) part.weight_b += g.weight(v);
  for (vsep::Vertex v : part.s) part.cost_s += g.cost(v);

  const vsep::Bounds b = vsep::derive_bounds(g, common.balance);
  const vsep::PartitionCheck pc = vsep::check_partition(g, b, part);
  std::cout << "graph=" << graph_path << " partition=" << part_path << '\n';
  std::cout << "cost_S=" << num(part.cost_s) << " weight_A=" << num(part.weight_a)
            << " weight_B=" << num(part.weight_b) << '\n';
  std::cout << "valid=" << (pc.valid ? "true" : "false") << '\n';
  for (const std::string& v : pc.violations) std::cout << "violation: " << v << '\n';
  return pc.valid ? 0 : kExitInfeasible;
}

int run_bench(const std::string& list_path, const std::string& seed_spec,
              const CommonOpts& common, unsigned jobs, const std::string& csv_path) {
  std::ifstream list(list_path);
  if (!list) throw vsep::ParseError(list_path, 0, "cannot open");
  std::vector<std::string> names;
  std::string line;
  while (std::getline(list, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string trimmed = line.substr(first, last - first + 1);
    if (trimmed[0] == '#' || trimmed[0] == '%') continue;
    names.push_back(trimmed);
  }
  if (names.empty()) throw vsep::ParseError(list_path, 0, "no graph paths listed");

  // Paths in the list resolve relative to the list file's directory.
  const fs::path base = fs::path(list_path).parent_path();
  std::vector<vsep::WeightedGraph> graphs;
  graphs.reserve(names.size());
  for (const std::string& name : names) {
    fs::path p(name);
    if (p.is_relative()) p = base / p;
    graphs.push_back(vsep::load_graph(p, pick_format(common.format, p)));
  }

  const std::vector<std::uint64_t> seeds = parse_seeds(seed_spec);
  struct Task {
    std::size_t graph_idx;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  tasks.reserve(names.size() * seeds.size());
  for (std::size_t gi = 0; gi < names.size(); ++gi) {
    for (std::uint64_t s : seeds) tasks.push_back({gi, s});
  }

  std::vector<BenchRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        rows[i] = run_one(names[tasks[i].graph_idx], graphs[tasks[i].graph_idx], common,
                          tasks[i].seed);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (jobs <= 1 || tasks.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const unsigned count = std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size()));
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::ofstream file;
  if (!csv_path.empty()) {
    file.open(csv_path);
    if (!file) throw vsep::ParseError(csv_path, 0, "cannot open for writing");
  }
  std::ostream& out = csv_path.empty() ? std::cout : file;
  out << kCsvHeader << '\n';
  for (const BenchRow& r : rows) out << csv_row(r) << '\n';

  // Summary stays out of the CSV stream so the schema holds row for row.
  std::ostream& sum = csv_path.empty() ? std::cerr : std::cout;
  for (std::size_t gi = 0; gi < names.size(); ++gi) {
    double lo = std::numeric_limits<double>::quiet_NaN();
    double hi = std::numeric_limits<double>::quiet_NaN();
    double total = 0.0;
    std::size_t feasible = 0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].graph_idx != gi || !rows[i].feasible) continue;
      const double c = rows[i].cost_s;
      if (feasible == 0) {
        lo = c;
        hi = c;
      } else {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
      total += c;
      ++feasible;
    }
    const double avg = feasible > 0 ? total / static_cast<double>(feasible)
                                    : std::numeric_limits<double>::quiet_NaN();
    sum << "# graph=" << names[gi] << " rule=" << rule_name(parse_rule(common.rule))
        << " trials=" << seeds.size() << " feasible=" << feasible
        << " cost avg=" << num(avg) << " min=" << num(lo) << " max=" << num(hi)
        << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multilevel vertex separator solver"};
  app.require_subcommand(1);

  CommonOpts solve_common;
  std::string solve_graph;
  std::uint64_t solve_seed = 0;
  bool solve_json = false;
  std::string solve_csv;
  CLI::App* solve_cmd = app.add_subcommand("solve", "partition one graph");
  solve_cmd->add_option("--graph", solve_graph, "graph file")->required();
  solve_cmd->add_option("--seed", solve_seed, "random seed")->capture_default_str();
  solve_cmd->add_flag("--json", solve_json, "print a JSON document");
  solve_cmd->add_option("--csv", solve_csv, "also write one CSV row here");
  add_common(solve_cmd, solve_common);

  CommonOpts bench_common;
  std::string bench_list;
  std::string bench_seeds = "0";
  unsigned bench_jobs = 1;
  std::string bench_csv;
  CLI::App* bench_cmd = app.add_subcommand("bench", "run graph x seed trials");
  bench_cmd->add_option("--graphs", bench_list, "file listing graph paths")->required();
  bench_cmd->add_option("--seeds", bench_seeds, "seed range a..b or comma list")
      ->capture_default_str();
  bench_cmd->add_option("--jobs", bench_jobs, "worker threads")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  bench_cmd->add_option("--csv", bench_csv, "write rows to this file");
  add_common(bench_cmd, bench_common);

  CommonOpts oracle_common;
  std::string oracle_graph;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "exact answer for a small graph");
  oracle_cmd->add_option("--graph", oracle_graph, "graph file")->required();
  add_common(oracle_cmd, oracle_common);

  CommonOpts check_common;
  std::string check_graph;
  std::string check_part;
  CLI::App* check_cmd = app.add_subcommand("check", "validate a partition file");
  check_cmd->add_option("--graph", check_graph, "graph file")->required();
  check_cmd->add_option("--partition", check_part, "JSON partition file")->required();
  add_common(check_cmd, check_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) {
      return run_solve(solve_graph, solve_common, solve_seed, solve_json, solve_csv);
    }
    if (bench_cmd->parsed()) {
      return run_bench(bench_list, bench_seeds, bench_common, bench_jobs, bench_csv);
    }
    if (oracle_cmd->parsed()) return run_oracle(oracle_graph, oracle_common);
    if (check_cmd->parsed()) return run_check(check_graph, check_part, check_common);
  } catch (const vsep::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const vsep::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const vsep::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return 0;
}
