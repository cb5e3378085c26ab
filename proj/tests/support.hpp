#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "vsep/graph.hpp"
#include "vsep/problem.hpp"
#include "vsep/rng.hpp"

namespace vsep::test {

inline WeightedGraph path(std::size_t n, std::vector<double> costs = {},
                          std::vector<double> weights = {}) {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v + 1 < n; ++v) {
    edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(v + 1), 1.0});
  }
  return WeightedGraph::from_edges(n, edges, std::move(costs), std::move(weights));
}

inline WeightedGraph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < n; ++v) {
    edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>((v + 1) % n), 1.0});
  }
  return WeightedGraph::from_edges(n, edges);
}

/// Star with the center at vertex 0.
inline WeightedGraph star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v <= leaves; ++v) {
    edges.push_back({0, static_cast<Vertex>(v), 1.0});
  }
  return WeightedGraph::from_edges(leaves + 1, edges);
}

inline WeightedGraph complete(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), 1.0});
    }
  }
  return WeightedGraph::from_edges(n, edges);
}

inline ContinuousPoint point(const SeparatorProblem& p, std::vector<double> x,
                             std::vector<double> y) {
  ContinuousPoint pt;
  pt.x = std::move(x);
  pt.y = std::move(y);
  refresh(p, pt);
  return pt;
}

/// Random point satisfying both knapsack rows: uniform draws scaled down to
/// the upper bound, rejected while under the lower one.
inline bool feasible_point(const SeparatorProblem& p, Rng& rng, ContinuousPoint& pt) {
  const std::size_t n = p.graph().vertex_count();
  std::span<const double> w = p.graph().weights();
  auto draw = [&](double lo, double hi, std::vector<double>& v) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      v.assign(n, 0.0);
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = rng.next_double();
        acc += w[i] * v[i];
      }
      if (acc > hi) {
        const double s = hi / acc;
        for (double& t : v) t *= s;
        acc = hi;
      }
      if (acc >= lo) return true;
    }
    return false;
  };
  if (!draw(p.la(), p.ua(), pt.x)) return false;
  if (!draw(p.lb(), p.ub(), pt.y)) return false;
  refresh(p, pt);
  return true;
}

inline double weight_dot(const WeightedGraph& g, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += g.weight(static_cast<Vertex>(i)) * v[i];
  return s;
}

inline std::size_t fractional_count(const std::vector<double>& v) {
  std::size_t k = 0;
  for (double t : v) {
    if (t > kBinaryTol && t < 1.0 - kBinaryTol) ++k;
  }
  return k;
}

inline std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "vsep_tests";
  fs::create_directories(dir);
  const fs::path file = dir / name;
  std::ofstream out(file);
  out << content;
  return file;
}

}  // namespace vsep::test
