#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace vsep {

using Vertex = std::uint32_t;
inline constexpr Vertex kInvalidVertex = static_cast<Vertex>(-1);

/// One undirected edge, endpoints 0-indexed.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  double weight = 1.0;
};

/// Undirected graph with real vertex costs, positive vertex weights and
/// positive edge weights, stored as sorted compressed adjacency lists.
/// No self-loops, no parallel edges.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Builds a graph from edges given once each.  Omitted costs and weights
  /// default to 1.  Throws InvariantError on self-loops, duplicate edges,
  /// out-of-range endpoints, or non-positive weights.
  static WeightedGraph from_edges(std::size_t n, std::span<const Edge> edges,
                                  std::vector<double> costs = {},
                                  std::vector<double> weights = {});

  std::size_t vertex_count() const { return cost_.size(); }
  std::size_t edge_count() const { return adj_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::span<const double> edge_weights(Vertex v) const {
    return {adj_weight_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  double cost(Vertex v) const { return cost_[v]; }
  double weight(Vertex v) const { return weight_[v]; }
  const std::vector<double>& costs() const { return cost_; }
  const std::vector<double>& weights() const { return weight_; }

  double total_cost() const { return total_cost_; }
  double total_weight() const { return total_weight_; }
  double max_cost() const { return max_cost_; }
  double total_edge_weight() const { return total_edge_weight_; }

  bool has_edge(Vertex u, Vertex v) const;
  /// Weight of edge (u, v), or 0 when absent.
  double edge_weight(Vertex u, Vertex v) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adj_;
  std::vector<double> adj_weight_;
  std::vector<double> cost_;
  std::vector<double> weight_;
  double total_cost_ = 0.0;
  double total_weight_ = 0.0;
  double max_cost_ = 0.0;
  double total_edge_weight_ = 0.0;
};

enum class GraphFormat { metis, edgelist };

struct LoadStats {
  std::size_t self_loops_dropped = 0;
};

/// Reads a graph file.
///
/// METIS layout: header "n m [fmt]" where m counts undirected edges, then one
/// 1-indexed neighbor line per vertex.  fmt 000 (or absent) is unweighted,
/// 010 puts a vertex weight before the neighbor list, 001 follows every
/// neighbor with an edge weight, 011 is both.  Lines starting with '%' are
/// comments.  Adjacency must be symmetric with matching weights.
///
/// Edge list layout: one "i j [weight]" per line, 1-indexed, each undirected
/// edge given once; '%' or '#' starts a comment.
///
/// Self-loops are dropped and counted in stats; duplicate edges are a
/// ParseError.  Vertex costs default to 1 in both formats.
WeightedGraph load_graph(const std::filesystem::path& path, GraphFormat format,
                         LoadStats* stats = nullptr);

}  // namespace vsep
