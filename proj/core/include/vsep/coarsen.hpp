#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vsep/graph.hpp"
#include "vsep/problem.hpp"

namespace vsep {

/// How contraction partners are chosen while coarsening.
enum class MatchRule { random, heavy_edge };

/// Coarsening stops once a level is this small.
inline constexpr std::size_t kCoarsestVertexFloor = 75;
inline constexpr std::size_t kCoarsestEdgeFloor = 10;

/// Result of one matching round: every fine vertex maps to exactly one
/// coarse vertex, and each coarse vertex has one or two fine preimages.
struct Matching {
  std::vector<Vertex> coarse_of;
  std::size_t coarse_count = 0;
};

struct CoarsenResult {
  WeightedGraph graph;
  Matching matching;
};

/// One round of matching-based contraction.  Vertices are visited in a
/// seed-determined random order; each unmatched vertex pairs with an
/// unmatched neighbor (uniformly for MatchRule::random; by heaviest
/// connecting edge for MatchRule::heavy_edge, ties to the smallest
/// neighbor id) or stays a singleton.  Merged vertices add their costs and
/// weights; parallel edges merge by adding weights; edges inside a merged
/// pair are dropped.  Deterministic for a fixed (graph, rule, seed).
CoarsenResult coarsen(const WeightedGraph& g, MatchRule rule, std::uint64_t seed);

struct Hierarchy {
  /// levels[0] is the input graph; each later entry is one round coarser.
  std::vector<WeightedGraph> levels;
  /// matchings[l] maps vertices of levels[l] to vertices of levels[l + 1].
  std::vector<Matching> matchings;
};

/// Coarsens repeatedly until a level falls under the floors above or a
/// round stops shrinking the graph.
Hierarchy build_hierarchy(const WeightedGraph& g, MatchRule rule, std::uint64_t seed);

/// Copies a coarse point onto the finer level through the contraction map.
/// Only x and y are filled; the caches must be rebuilt against the finer
/// problem afterwards.
void prolong(const ContinuousPoint& coarse, const Matching& matching, ContinuousPoint& fine);

}  // namespace vsep
