#include "vsep/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>
#include <string_view>
#include <utility>

#include "vsep/errors.hpp"
#include "vsep/log.hpp"

namespace vsep {

namespace {

std::size_t lower_bound_index(std::span<const Vertex> sorted, Vertex v) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v) -
                                  sorted.begin());
}

}  // namespace

WeightedGraph WeightedGraph::from_edges(std::size_t n, std::span<const Edge> edges,
                                        std::vector<double> costs,
                                        std::vector<double> weights) {
  WeightedGraph g;
  if (costs.empty()) costs.assign(n, 1.0);
  if (weights.empty()) weights.assign(n, 1.0);
  if (costs.size() != n || weights.size() != n) {
    throw InvariantError("vertex cost/weight arrays must match the vertex count");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InvariantError("vertex weights must be positive");
  }
  for (double c : costs) {
    if (!std::isfinite(c)) throw InvariantError("vertex costs must be finite");
  }

  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) throw InvariantError("edge endpoint out of range");
    if (e.u == e.v) throw InvariantError("self-loops are not allowed");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw InvariantError("edge weights must be positive");
    }
    ++deg[e.u];
    ++deg[e.v];
  }

  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.adj_.resize(g.offsets_[n]);
  g.adj_weight_.resize(g.offsets_[n]);

  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges) {
    g.adj_[cursor[e.u]] = e.v;
    g.adj_weight_[cursor[e.u]++] = e.weight;
    g.adj_[cursor[e.v]] = e.u;
    g.adj_weight_[cursor[e.v]++] = e.weight;
  }

  std::vector<std::pair<Vertex, double>> scratch;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t lo = g.offsets_[v];
    const std::size_t hi = g.offsets_[v + 1];
    scratch.assign(hi - lo, {});
    for (std::size_t k = lo; k < hi; ++k) scratch[k - lo] = {g.adj_[k], g.adj_weight_[k]};
    std::sort(scratch.begin(), scratch.end());
    for (std::size_t k = lo; k < hi; ++k) {
      if (k > lo && scratch[k - lo].first == g.adj_[k - 1]) {
        throw InvariantError("duplicate edge");
      }
      g.adj_[k] = scratch[k - lo].first;
      g.adj_weight_[k] = scratch[k - lo].second;
    }
  }

  g.cost_ = std::move(costs);
  g.weight_ = std::move(weights);
  g.total_cost_ = 0.0;
  g.total_weight_ = 0.0;
  g.max_cost_ = n > 0 ? g.cost_[0] : 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    g.total_cost_ += g.cost_[v];
    g.total_weight_ += g.weight_[v];
    g.max_cost_ = std::max(g.max_cost_, g.cost_[v]);
  }
  g.total_edge_weight_ = 0.0;
  for (const Edge& e : edges) g.total_edge_weight_ += e.weight;
  return g;
}

bool WeightedGraph::has_edge(Vertex u, Vertex v) const {
  auto nbrs = neighbors(u);
  const std::size_t k = lower_bound_index(nbrs, v);
  return k < nbrs.size() && nbrs[k] == v;
}

double WeightedGraph::edge_weight(Vertex u, Vertex v) const {
  auto nbrs = neighbors(u);
  const std::size_t k = lower_bound_index(nbrs, v);
  if (k >= nbrs.size() || nbrs[k] != v) return 0.0;
  return edge_weights(u)[k];
}

namespace {

struct Tokenizer {
  std::string_view text;
  std::size_t pos = 0;

  bool next(std::string_view& out) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) return false;
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    out = text.substr(start, pos - start);
    return true;
  }
};

double parse_number(std::string_view token, const std::string& path, long line,
                    const char* what) {
  double value = 0.0;
  const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
  if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
    throw ParseError(path, line, std::string("expected ") + what + ", got '" +
                                     std::string(token) + "'");
  }
  return value;
}

std::uint64_t parse_count(std::string_view token, const std::string& path, long line,
                          const char* what) {
  std::uint64_t value = 0;
  const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
  if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
    throw ParseError(path, line, std::string("expected ") + what + ", got '" +
                                     std::string(token) + "'");
  }
  return value;
}

char first_nonspace(const std::string& line) {
  for (char ch : line) {
    if (!std::isspace(static_cast<unsigned char>(ch))) return ch;
  }
  return '\0';
}

bool comment_or_blank(const std::string& line, bool allow_hash) {
  const char ch = first_nonspace(line);
  return ch == '\0' || ch == '%' || (allow_hash && ch == '#');
}

struct DirectedEntry {
  Vertex to;
  double weight;
};

WeightedGraph load_metis(std::ifstream& in, const std::string& path, LoadStats* stats) {
  std::string line;
  long line_no = 0;

  // Header: n m [fmt].
  std::size_t n = 0;
  std::uint64_t m_declared = 0;
  bool has_vertex_weights = false;
  bool has_edge_weights = false;
  for (;;) {
    if (!std::getline(in, line)) throw ParseError(path, line_no, "missing header line");
    ++line_no;
    if (comment_or_blank(line, false)) continue;
    Tokenizer tok{line};
    std::string_view t;
    std::vector<std::string_view> fields;
    while (tok.next(t)) fields.push_back(t);
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError(path, line_no, "header must be 'n m [fmt]'");
    }
    n = parse_count(fields[0], path, line_no, "vertex count");
    m_declared = parse_count(fields[1], path, line_no, "edge count");
    if (fields.size() == 3) {
      std::string_view fmt = fields[2];
      if (fmt.empty() || fmt.size() > 3 ||
          fmt.find_first_not_of("01") != std::string_view::npos) {
        throw ParseError(path, line_no, "fmt code must be up to three binary digits");
      }
      // Right-aligned digit positions: [vertex sizes][vertex weights][edge weights].
      const std::string padded = std::string(3 - fmt.size(), '0') + std::string(fmt);
      if (padded[0] != '0') {
        throw ParseError(path, line_no, "vertex sizes (fmt 1xx) are not supported");
      }
      has_vertex_weights = padded[1] == '1';
      has_edge_weights = padded[2] == '1';
    }
    break;
  }

  std::vector<std::vector<DirectedEntry>> lists(n);
  std::vector<long> vertex_line(n, 0);
  std::vector<double> weights(n, 1.0);
  std::size_t self_loops = 0;

  std::size_t v = 0;
  while (v < n && std::getline(in, line)) {
    ++line_no;
    if (first_nonspace(line) == '%') continue;  // blank lines are empty neighbor lists
    vertex_line[v] = line_no;
    Tokenizer tok{line};
    std::string_view t;
    if (has_vertex_weights) {
      if (!tok.next(t)) throw ParseError(path, line_no, "missing vertex weight");
      const double w = parse_number(t, path, line_no, "vertex weight");
      if (!(w > 0.0)) throw ParseError(path, line_no, "non-positive vertex weight");
      weights[v] = w;
    }
    while (tok.next(t)) {
      const std::uint64_t raw = parse_count(t, path, line_no, "neighbor index");
      if (raw < 1 || raw > n) {
        throw ParseError(path, line_no, "neighbor index out of range 1.." + std::to_string(n));
      }
      double ew = 1.0;
      if (has_edge_weights) {
        if (!tok.next(t)) throw ParseError(path, line_no, "missing edge weight");
        ew = parse_number(t, path, line_no, "edge weight");
        if (!(ew > 0.0)) throw ParseError(path, line_no, "non-positive edge weight");
      }
      const Vertex to = static_cast<Vertex>(raw - 1);
      if (to == v) {
        ++self_loops;
        continue;
      }
      lists[v].push_back({to, ew});
    }
    std::sort(lists[v].begin(), lists[v].end(),
              [](const DirectedEntry& a, const DirectedEntry& b) { return a.to < b.to; });
    for (std::size_t k = 1; k < lists[v].size(); ++k) {
      if (lists[v][k].to == lists[v][k - 1].to) {
        throw ParseError(path, line_no,
                         "duplicate edge to vertex " + std::to_string(lists[v][k].to + 1));
      }
    }
    ++v;
  }
  // Vertices past EOF keep empty neighbor lists.

  // Symmetry: every directed entry needs its mirror with an equal weight.
  std::vector<Edge> edges;
  edges.reserve(m_declared);
  for (Vertex a = 0; a < n; ++a) {
    for (const DirectedEntry& entry : lists[a]) {
      const Vertex b = entry.to;
      const auto& back = lists[b];
      const auto it = std::lower_bound(
          back.begin(), back.end(), a,
          [](const DirectedEntry& e, Vertex key) { return e.to < key; });
      if (it == back.end() || it->to != a) {
        throw ParseError(path, vertex_line[a],
                         "edge " + std::to_string(a + 1) + "-" + std::to_string(b + 1) +
                             " is not mirrored in the neighbor list of " +
                             std::to_string(b + 1));
      }
      if (it->weight != entry.weight) {
        throw ParseError(path, vertex_line[a],
                         "asymmetric weight on edge " + std::to_string(a + 1) + "-" +
                             std::to_string(b + 1));
      }
      if (a < b) edges.push_back({a, b, entry.weight});
    }
  }

  if (stats != nullptr) stats->self_loops_dropped = self_loops;
  if (self_loops > 0) {
    VSEP_INFO("dropped " << self_loops << " self-loop entries while reading " << path);
  }
  if (edges.size() != m_declared && self_loops == 0) {
    VSEP_INFO(path << ": header declares " << m_declared << " edges, found " << edges.size());
  }
  return WeightedGraph::from_edges(n, edges, {}, std::move(weights));
}

WeightedGraph load_edgelist(std::ifstream& in, const std::string& path, LoadStats* stats) {
  std::string line;
  long line_no = 0;
  std::vector<Edge> edges;
  std::vector<std::pair<std::uint64_t, long>> seen;  // packed (min,max) key -> first line
  std::size_t n = 0;
  std::size_t self_loops = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (comment_or_blank(line, true)) continue;
    Tokenizer tok{line};
    std::string_view t;
    std::vector<std::string_view> fields;
    while (tok.next(t)) fields.push_back(t);
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError(path, line_no, "expected 'i j [weight]'");
    }
    const std::uint64_t iu = parse_count(fields[0], path, line_no, "vertex index");
    const std::uint64_t ju = parse_count(fields[1], path, line_no, "vertex index");
    if (iu < 1 || ju < 1) throw ParseError(path, line_no, "vertex indices are 1-based");
    double w = 1.0;
    if (fields.size() == 3) {
      w = parse_number(fields[2], path, line_no, "edge weight");
      if (!(w > 0.0)) throw ParseError(path, line_no, "non-positive edge weight");
    }
    n = std::max({n, static_cast<std::size_t>(iu), static_cast<std::size_t>(ju)});
    if (iu == ju) {
      ++self_loops;
      continue;
    }
    const std::uint64_t a = std::min(iu, ju) - 1;
    const std::uint64_t b = std::max(iu, ju) - 1;
    edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b), w});
    seen.push_back({(a << 32) | b, line_no});
  }

  std::sort(seen.begin(), seen.end());
  for (std::size_t k = 1; k < seen.size(); ++k) {
    if (seen[k].first == seen[k - 1].first) {
      throw ParseError(path, std::max(seen[k].second, seen[k - 1].second), "duplicate edge");
    }
  }

  if (stats != nullptr) stats->self_loops_dropped = self_loops;
  if (self_loops > 0) {
    VSEP_INFO("dropped " << self_loops << " self-loop lines while reading " << path);
  }
  return WeightedGraph::from_edges(n, edges);
}

}  // namespace

WeightedGraph load_graph(const std::filesystem::path& path, GraphFormat format,
                         LoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  switch (format) {
    case GraphFormat::metis: return load_metis(in, path.string(), stats);
    case GraphFormat::edgelist: return load_edgelist(in, path.string(), stats);
  }
  throw InvariantError("unknown graph format");
}

}  // namespace vsep
