#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "vsep/vsep.hpp"

namespace {

vsep::WeightedGraph sparse_graph(std::size_t n, std::uint64_t seed) {
  vsep::Rng rng(seed);
  return vsep::erdos_renyi_gnm(n, 5 * n, rng);
}

/// Feasible fractional start used by the inner-loop benchmarks.
vsep::ContinuousPoint uniform_start(const vsep::SeparatorProblem& p,
                                    const vsep::WeightedGraph& g, double ua) {
  vsep::ContinuousPoint pt;
  const double level = ua / g.total_weight();
  pt.x.assign(g.vertex_count(), level);
  pt.y.assign(g.vertex_count(), level);
  vsep::refresh(p, pt);
  return pt;
}

void BM_greedy_lp(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  vsep::Rng rng(7);
  std::vector<double> g(n);
  std::vector<double> w(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = rng.next_double(-1.0, 1.0);
    w[i] = static_cast<double>(rng.next_int(1, 5));
    total += w[i];
  }
  std::vector<double> z;
  for (auto _ : state) {
    benchmark::DoNotOptimize(vsep::greedy_lp(g, w, 0.25 * total, 0.5 * total, z));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_greedy_lp)->RangeMultiplier(8)->Range(1 << 10, 1 << 16);

void BM_h_times(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const vsep::WeightedGraph g = sparse_graph(n, 11);
  const std::vector<double> v(n, 0.5);
  std::vector<double> out;
  for (auto _ : state) {
    vsep::h_times(g, v, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(2 * g.edge_count() + n));
}
BENCHMARK(BM_h_times)->RangeMultiplier(8)->Range(1 << 10, 1 << 16);

void BM_mca(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const vsep::WeightedGraph g = sparse_graph(n, 23);
  const vsep::Bounds b = vsep::derive_bounds(g, 0.6);
  vsep::SeparatorProblem p(g, b);
  p.set_gamma(g.max_cost());
  const vsep::ContinuousPoint start = uniform_start(p, g, b.ua);
  for (auto _ : state) {
    vsep::ContinuousPoint pt = start;
    const vsep::McaTrace trace = vsep::mca(p, pt);
    benchmark::DoNotOptimize(trace.iterations);
  }
}
BENCHMARK(BM_mca)->Arg(1 << 8)->Arg(1 << 10)->Arg(1 << 12);

void BM_coarsen(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const vsep::WeightedGraph g = sparse_graph(n, 31);
  for (auto _ : state) {
    const vsep::CoarsenResult r = vsep::coarsen(g, vsep::MatchRule::heavy_edge, 5);
    benchmark::DoNotOptimize(r.graph.vertex_count());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(g.edge_count()));
}
BENCHMARK(BM_coarsen)->RangeMultiplier(8)->Range(1 << 10, 1 << 16);

void BM_solve(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const vsep::WeightedGraph g = sparse_graph(n, 47);
  vsep::SolveOptions opts;
  opts.seed = 3;
  for (auto _ : state) {
    const vsep::SolveResult r = vsep::solve(g, opts);
    benchmark::DoNotOptimize(r.partition.cost_s);
  }
}
BENCHMARK(BM_solve)->Unit(benchmark::kMillisecond)->Arg(1 << 10)->Arg(1 << 13);

}  // namespace

BENCHMARK_MAIN();
