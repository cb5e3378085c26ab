#include "vsep/generate.hpp"

#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace vsep {

WeightedGraph erdos_renyi_gnp(std::size_t n, double prob, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng.next_double() < prob) {
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), 1.0});
      }
    }
  }
  return WeightedGraph::from_edges(n, edges);
}

WeightedGraph erdos_renyi_gnm(std::size_t n, std::size_t m, Rng& rng) {
  const std::size_t pairs = n * (n - 1) / 2;
  if (n < 2 || m > pairs) throw std::invalid_argument("edge count exceeds available pairs");
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m * 2);
  std::vector<Edge> edges;
  edges.reserve(m);
  while (edges.size() < m) {
    std::uint64_t u = rng.next_below(n);
    std::uint64_t v = rng.next_below(n);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!seen.insert((u << 32) | v).second) continue;
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), 1.0});
  }
  return WeightedGraph::from_edges(n, edges);
}

WeightedGraph grid(std::size_t rows, std::size_t cols) {
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), 1.0});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), 1.0});
    }
  }
  return WeightedGraph::from_edges(rows * cols, edges);
}

}  // namespace vsep
