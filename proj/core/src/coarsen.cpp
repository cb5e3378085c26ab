#include "vsep/coarsen.hpp"

#include <algorithm>
#include <tuple>

#include "vsep/rng.hpp"

namespace vsep {

CoarsenResult coarsen(const WeightedGraph& g, MatchRule rule, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> coarse_of(n, kInvalidVertex);
  std::vector<Vertex> order = rng.permutation(n);

  std::vector<Vertex> pool;
  Vertex next_id = 0;
  for (Vertex v : order) {
    if (coarse_of[v] != kInvalidVertex) continue;
    Vertex mate = kInvalidVertex;
    if (rule == MatchRule::heavy_edge) {
      std::span<const Vertex> nbrs = g.neighbors(v);
      std::span<const double> ws = g.edge_weights(v);
      double best = 0.0;
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        if (coarse_of[nbrs[k]] != kInvalidVertex) continue;
        if (mate == kInvalidVertex || ws[k] > best) {
          mate = nbrs[k];
          best = ws[k];
        }
      }
    } else {
      pool.clear();
      for (Vertex u : g.neighbors(v)) {
        if (coarse_of[u] == kInvalidVertex) pool.push_back(u);
      }
      if (!pool.empty()) mate = pool[rng.next_below(pool.size())];
    }
    coarse_of[v] = next_id;
    if (mate != kInvalidVertex) coarse_of[mate] = next_id;
    ++next_id;
  }

  const std::size_t cn = next_id;
  std::vector<double> costs(cn, 0.0), weights(cn, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    costs[coarse_of[v]] += g.cost(static_cast<Vertex>(v));
    weights[coarse_of[v]] += g.weight(static_cast<Vertex>(v));
  }

  std::vector<std::tuple<Vertex, Vertex, double>> raw;
  for (std::size_t v = 0; v < n; ++v) {
    std::span<const Vertex> nbrs = g.neighbors(static_cast<Vertex>(v));
    std::span<const double> ws = g.edge_weights(static_cast<Vertex>(v));
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      if (nbrs[k] <= v) continue;
      const Vertex ca = coarse_of[v];
      const Vertex cb = coarse_of[nbrs[k]];
      if (ca == cb) continue;
      raw.emplace_back(std::min(ca, cb), std::max(ca, cb), ws[k]);
    }
  }
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) {
              return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b)
                                                      : std::get<1>(a) < std::get<1>(b);
            });

  std::vector<Edge> edges;
  for (std::size_t k = 0; k < raw.size();) {
    std::size_t j = k;
    double w = 0.0;
    while (j < raw.size() && std::get<0>(raw[j]) == std::get<0>(raw[k]) &&
           std::get<1>(raw[j]) == std::get<1>(raw[k])) {
      w += std::get<2>(raw[j]);
      ++j;
    }
    edges.push_back({std::get<0>(raw[k]), std::get<1>(raw[k]), w});
    k = j;
  }

  return {WeightedGraph::from_edges(cn, edges, costs, weights),
          Matching{std::move(coarse_of), cn}};
}

Hierarchy build_hierarchy(const WeightedGraph& g, MatchRule rule, std::uint64_t seed) {
  Rng master(seed);
  Hierarchy h;
  h.levels.push_back(g);
  while (true) {
    const WeightedGraph& cur = h.levels.back();
    if (cur.vertex_count() < kCoarsestVertexFloor) break;
    if (cur.edge_count() < kCoarsestEdgeFloor) break;
    CoarsenResult r = coarsen(cur, rule, master.next_u64());
    // A round that barely contracts signals a graph that resists matching;
    // stacking near-identical levels would only burn memory and time.
    if (r.graph.vertex_count() >= cur.vertex_count() ||
        static_cast<double>(r.graph.vertex_count()) >
            0.95 * static_cast<double>(cur.vertex_count())) {
      break;
    }
    // A complete coarse graph cannot host two non-empty shores, so climbing
    // there would strand the refinement; keep the finer level as coarsest.
    const std::size_t cn = r.graph.vertex_count();
    if (2 * r.graph.edge_count() == cn * (cn - 1)) break;
    h.matchings.push_back(std::move(r.matching));
    h.levels.push_back(std::move(r.graph));
  }
  return h;
}

void prolong(const ContinuousPoint& coarse, const Matching& matching, ContinuousPoint& fine) {
  const std::size_t n = matching.coarse_of.size();
  fine.x.resize(n);
  fine.y.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    fine.x[v] = coarse.x[matching.coarse_of[v]];
    fine.y[v] = coarse.y[matching.coarse_of[v]];
  }
}

}  // namespace vsep
