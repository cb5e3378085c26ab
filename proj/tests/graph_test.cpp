#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "vsep/errors.hpp"
#include "vsep/graph.hpp"

using namespace vsep;

TEST_CASE("from_edges builds sorted adjacency with derived totals") {
  std::vector<Edge> edges{{0, 2, 2.0}, {0, 1, 1.0}, {2, 3, 4.0}};
  const WeightedGraph g =
      WeightedGraph::from_edges(4, edges, {1.0, 3.0, 2.0, 1.0}, {2.0, 1.0, 1.0, 4.0});
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.degree(0) == 2);
  CHECK(g.neighbors(0)[0] == 1);
  CHECK(g.neighbors(0)[1] == 2);
  CHECK(g.neighbors(3)[0] == 2);
  CHECK(g.cost(1) == 3.0);
  CHECK(g.weight(3) == 4.0);
  CHECK(g.total_cost() == 7.0);
  CHECK(g.total_weight() == 8.0);
  CHECK(g.max_cost() == 3.0);
  CHECK(g.total_edge_weight() == 7.0);
  CHECK(g.has_edge(2, 0));
  CHECK(!g.has_edge(1, 2));
  CHECK(g.edge_weight(3, 2) == 4.0);
  CHECK(g.edge_weight(1, 3) == 0.0);
}

TEST_CASE("from_edges rejects malformed input") {
  std::vector<Edge> loop{{1, 1, 1.0}};
  CHECK_THROWS_AS(WeightedGraph::from_edges(3, loop), InvariantError);

  std::vector<Edge> dup{{0, 1, 1.0}, {1, 0, 2.0}};
  CHECK_THROWS_AS(WeightedGraph::from_edges(3, dup), InvariantError);

  std::vector<Edge> range{{0, 3, 1.0}};
  CHECK_THROWS_AS(WeightedGraph::from_edges(3, range), InvariantError);

  std::vector<Edge> bad_weight{{0, 1, 0.0}};
  CHECK_THROWS_AS(WeightedGraph::from_edges(3, bad_weight), InvariantError);

  std::vector<Edge> ok{{0, 1, 1.0}};
  CHECK_THROWS_AS(WeightedGraph::from_edges(3, ok, {1.0, 1.0, 1.0}, {1.0, 0.0, 1.0}),
                  InvariantError);
  CHECK_THROWS_AS(WeightedGraph::from_edges(3, ok, {1.0, 1.0}, {}), InvariantError);
}

TEST_CASE("metis loader reads an unweighted path") {
  const auto file = test::write_temp("plain.graph", "3 2\n2\n1 3\n2\n");
  const WeightedGraph g = load_graph(file, GraphFormat::metis);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK(!g.has_edge(0, 2));
  CHECK(g.cost(0) == 1.0);
  CHECK(g.weight(2) == 1.0);
}

TEST_CASE("metis loader reads vertex weights under fmt 010") {
  const auto file = test::write_temp("vweights.graph", "4 3 010\n2 2\n1 1 3\n5 2 4\n1 3\n");
  const WeightedGraph g = load_graph(file, GraphFormat::metis);
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.weights() == std::vector<double>{2.0, 1.0, 5.0, 1.0});
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(2, 3));
}

TEST_CASE("metis loader reads edge weights under fmt 001") {
  const auto file = test::write_temp("eweights.graph", "3 2 001\n2 5\n1 5 3 7\n2 7\n");
  const WeightedGraph g = load_graph(file, GraphFormat::metis);
  CHECK(g.edge_weight(0, 1) == 5.0);
  CHECK(g.edge_weight(1, 2) == 7.0);
}

TEST_CASE("metis loader reads both weight kinds under fmt 011") {
  const auto file = test::write_temp("both.graph", "3 2 011\n4 2 5\n1 1 5 3 7\n9 2 7\n");
  const WeightedGraph g = load_graph(file, GraphFormat::metis);
  CHECK(g.weights() == std::vector<double>{4.0, 1.0, 9.0});
  CHECK(g.edge_weight(0, 1) == 5.0);
  CHECK(g.edge_weight(1, 2) == 7.0);
}

TEST_CASE("metis loader skips comment lines") {
  const auto file =
      test::write_temp("comments.graph", "% header comment\n3 2\n2\n% interior\n1 3\n2\n");
  const WeightedGraph g = load_graph(file, GraphFormat::metis);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
}

TEST_CASE("metis loader rejects asymmetric adjacency") {
  const auto file = test::write_temp("asym.graph", "3 2\n2 3\n1\n2\n");
  CHECK_THROWS_AS(load_graph(file, GraphFormat::metis), ParseError);
}

TEST_CASE("metis loader drops self-loops and counts them") {
  const auto file = test::write_temp("selfloop.graph", "3 3\n1 2\n1 3\n2\n");
  LoadStats stats;
  const WeightedGraph g = load_graph(file, GraphFormat::metis, &stats);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(stats.self_loops_dropped == 1);
}

TEST_CASE("edge list loader reads a weighted path") {
  const auto file = test::write_temp("list.txt", "# path\n1 2 2.5\n2 3 1.5\n% trailer\n");
  const WeightedGraph g = load_graph(file, GraphFormat::edgelist);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.edge_weight(0, 1) == 2.5);
  CHECK(g.edge_weight(1, 2) == 1.5);
}

TEST_CASE("edge list loader rejects repeated edges with the offending line") {
  const auto file = test::write_temp("dup.txt", "1 2\n2 3\n2 1\n");
  try {
    load_graph(file, GraphFormat::edgelist);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("edge list loader sizes the graph from the largest index") {
  const auto file = test::write_temp("sparse.txt", "1 5\n");
  const WeightedGraph g = load_graph(file, GraphFormat::edgelist);
  CHECK(g.vertex_count() == 5);
  CHECK(g.edge_count() == 1);
  CHECK(g.degree(2) == 0);
}

TEST_CASE("loading a missing file reports a parse error") {
  CHECK_THROWS_AS(load_graph("/nonexistent/vsep.graph", GraphFormat::metis), ParseError);
}
