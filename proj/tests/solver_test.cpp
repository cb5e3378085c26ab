#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "vsep/errors.hpp"
#include "vsep/generate.hpp"
#include "vsep/oracle.hpp"
#include "vsep/rng.hpp"
#include "vsep/solver.hpp"

using namespace vsep;

namespace {

double sum_costs(const WeightedGraph& g, const std::vector<Vertex>& vs) {
  double s = 0.0;
  for (Vertex v : vs) s += g.cost(v);
  return s;
}

void check_valid(const WeightedGraph& g, const Bounds& b, const SolveResult& r) {
  const PartitionCheck pc = check_partition(g, b, r.partition);
  std::string why;
  for (const std::string& v : pc.violations) {
    why += v;
    why += "; ";
  }
  CAPTURE(why);
  CHECK(pc.valid);
  CHECK(r.partition.a.size() + r.partition.b.size() + r.partition.s.size() ==
        g.vertex_count());
  CHECK(std::is_sorted(r.partition.s.begin(), r.partition.s.end()));
  CHECK(r.partition.cost_s == doctest::Approx(sum_costs(g, r.partition.s)));
}

}  // namespace

TEST_CASE("shore bounds scale with the balance fraction") {
  const Bounds b = derive_bounds(grid(3, 3), 0.6);
  CHECK(b.la == 1.0);
  CHECK(b.ua == 5.0);
  CHECK(b.lb == 1.0);
  CHECK(b.ub == 5.0);

  const WeightedGraph g = WeightedGraph::from_edges(
      4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}}, {}, {2.0, 1.0, 1.0, 4.0});
  const Bounds h = derive_bounds(g, 0.5);
  CHECK(h.ua == 4.0);
  CHECK(h.ub == 4.0);
}

TEST_CASE("out-of-range options are rejected") {
  const WeightedGraph g = test::path(6);
  SolveOptions o;
  o.balance = 0.0;
  CHECK_THROWS_AS(solve(g, o), std::invalid_argument);
  o.balance = 1.5;
  CHECK_THROWS_AS(solve(g, o), std::invalid_argument);
  o.balance = 0.6;
  o.refine_stride = 0.5;
  CHECK_THROWS_AS(solve(g, o), std::invalid_argument);
}

TEST_CASE("graphs that admit no separator are rejected") {
  CHECK_THROWS_AS(solve(test::complete(4)), InfeasibleError);
  const WeightedGraph lone = WeightedGraph::from_edges(1, std::vector<Edge>{});
  CHECK_THROWS_AS(solve(lone), InfeasibleError);
}

TEST_CASE("small fixtures solve to valid partitions") {
  SolveOptions o;
  o.seed = 1;
  for (const WeightedGraph& g :
       {test::path(8), test::cycle(9), test::star(6), grid(4, 5)}) {
    const SolveResult r = solve(g, o);
    check_valid(g, derive_bounds(g, o.balance), r);
    REQUIRE(!r.stats.levels.empty());
    CHECK(r.stats.levels[0].vertices == g.vertex_count());
    CHECK(r.stats.levels[0].refined);
    CHECK(r.stats.levels[0].time_ms >= 0.0);
    CHECK(r.stats.coarsen_ms >= 0.0);
    CHECK(r.stats.total_ms >= 0.0);
  }
}

TEST_CASE("a connected graph needs a nonempty separator") {
  const SolveResult r = solve(test::star(6));
  CHECK(!r.partition.s.empty());
  CHECK(r.partition.cost_s >= 1.0);
}

TEST_CASE("solves are reproducible for a fixed seed") {
  const WeightedGraph g = grid(10, 10);
  SolveOptions o;
  o.seed = 7;
  const SolveResult r1 = solve(g, o);
  const SolveResult r2 = solve(g, o);
  CHECK(r1.partition.a == r2.partition.a);
  CHECK(r1.partition.b == r2.partition.b);
  CHECK(r1.partition.s == r2.partition.s);
  CHECK(r1.objective == r2.objective);
  CHECK(r1.stats.levels.size() == r2.stats.levels.size());
}

TEST_CASE("run stats mirror the hierarchy when separators are recorded") {
  const WeightedGraph g = grid(10, 10);
  SolveOptions o;
  o.seed = 3;
  o.record_separators = true;
  const SolveResult r = solve(g, o);
  check_valid(g, derive_bounds(g, o.balance), r);
  REQUIRE(r.stats.hierarchy != nullptr);
  REQUIRE(r.stats.hierarchy->levels.size() == r.stats.levels.size());
  REQUIRE(r.stats.levels.size() >= 2);
  for (std::size_t l = 0; l < r.stats.levels.size(); ++l) {
    const LevelStats& ls = r.stats.levels[l];
    CHECK(ls.vertices == r.stats.hierarchy->levels[l].vertex_count());
    CHECK(ls.edges == r.stats.hierarchy->levels[l].edge_count());
    if (l + 1 < r.stats.levels.size()) {
      CHECK(ls.vertices > r.stats.levels[l + 1].vertices);
    }
  }
  CHECK(r.stats.levels[0].separator == r.partition.s);
  CHECK(r.stats.levels[0].f_after == r.objective);
  CHECK(r.stats.levels[0].cost_after == doctest::Approx(r.partition.cost_s));
}

TEST_CASE("the refinement hook runs once per refined level") {
  const WeightedGraph g = grid(10, 10);
  SolveOptions o;
  o.seed = 2;
  int calls = 0;
  o.refiner = [&](const SeparatorProblem&, ContinuousPoint&) { ++calls; };
  const SolveResult r = solve(g, o);
  const auto refined = static_cast<int>(
      std::count_if(r.stats.levels.begin(), r.stats.levels.end(),
                    [](const LevelStats& ls) { return ls.refined; }));
  CHECK(calls == refined);
  CHECK(calls == static_cast<int>(r.stats.levels.size()));
  check_valid(g, derive_bounds(g, o.balance), r);

  calls = 0;
  o.refiner_first = false;
  const SolveResult r2 = solve(g, o);
  CHECK(calls == static_cast<int>(r2.stats.levels.size()));
  check_valid(g, derive_bounds(g, o.balance), r2);
}

TEST_CASE("a wide refine stride passes intermediate levels through untouched") {
  const WeightedGraph g = grid(15, 15);
  SolveOptions o;
  o.seed = 5;
  o.refine_stride = 3.0;
  const SolveResult r = solve(g, o);
  check_valid(g, derive_bounds(g, o.balance), r);
  REQUIRE(r.stats.levels.size() >= 3);
  CHECK(r.stats.levels.front().refined);
  CHECK(r.stats.levels.back().refined);
  bool skipped = false;
  for (const LevelStats& ls : r.stats.levels) {
    if (ls.refined) continue;
    skipped = true;
    CHECK(ls.cost_before == ls.cost_after);
    CHECK(ls.f_before == ls.f_after);
    CHECK(ls.improvement_pct == 0.0);
  }
  CHECK(skipped);

  SolveOptions all = o;
  all.refine_stride = 1.0;
  const SolveResult r2 = solve(g, all);
  CHECK(std::all_of(r2.stats.levels.begin(), r2.stats.levels.end(),
                    [](const LevelStats& ls) { return ls.refined; }));
}

TEST_CASE("solved separators never beat the exhaustive optimum") {
  Rng rng(99);
  int checked = 0;
  for (int round = 0; round < 12 && checked < 5; ++round) {
    const std::size_t n = static_cast<std::size_t>(rng.next_int(6, 10));
    const WeightedGraph g = erdos_renyi_gnp(n, 0.5, rng);
    const Bounds b = derive_bounds(g, 0.6);
    VspSolution best;
    try {
      best = exact_vsp(g, b);
    } catch (const InfeasibleError&) {
      continue;
    }
    SolveOptions o;
    o.seed = static_cast<std::uint64_t>(round);
    const SolveResult r = solve(g, o);
    check_valid(g, b, r);
    CHECK(r.partition.cost_s >= best.cost - 1e-9);
    ++checked;
  }
  CHECK(checked == 5);
}
