#include "vsep/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "vsep/log.hpp"
#include "vsep/qp.hpp"

namespace vsep {

namespace {

double separator_cost(const WeightedGraph& g, const ContinuousPoint& pt) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    if (pt.x[i] < 1.0 - kBinaryTol && pt.y[i] < 1.0 - kBinaryTol) {
      s += g.cost(static_cast<Vertex>(i));
    }
  }
  return s;
}

std::vector<Vertex> separator_vertices(const WeightedGraph& g, const ContinuousPoint& pt) {
  std::vector<Vertex> s;
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    if (pt.x[i] < 1.0 - kBinaryTol && pt.y[i] < 1.0 - kBinaryTol) {
      s.push_back(static_cast<Vertex>(i));
    }
  }
  return s;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

Bounds derive_bounds(const WeightedGraph& g, double balance) {
  Bounds b;
  b.la = 1.0;
  b.lb = 1.0;
  b.ua = std::floor(balance * g.total_weight());
  b.ub = b.ua;
  return b;
}

SolveResult solve(const WeightedGraph& g, const SolveOptions& opts) {
  if (!(opts.balance > 0.0) || opts.balance > 1.0) {
    throw std::invalid_argument("balance must lie in (0, 1]");
  }
  if (!(opts.refine_stride >= 1.0)) {
    throw std::invalid_argument("refine_stride must be at least 1");
  }

  const auto run_start = std::chrono::steady_clock::now();
  const Bounds bounds = derive_bounds(g, opts.balance);
  auto hier = std::make_shared<Hierarchy>(build_hierarchy(g, opts.rule, opts.seed));
  const std::size_t depth = hier->levels.size();

  SolveResult result;
  result.stats.levels.resize(depth);
  result.stats.coarsen_ms = ms_since(run_start);

  ContinuousPoint pt;
  std::size_t last_refined = 0;
  for (std::size_t li = depth; li-- > 0;) {
    const auto level_start = std::chrono::steady_clock::now();
    const WeightedGraph& lg = hier->levels[li];
    const std::size_t n = lg.vertex_count();

    SeparatorProblem prob(lg, bounds);
    if (opts.gamma) prob.set_gamma(*opts.gamma);
    prob.set_eta(opts.eta);
    prob.set_improve_tol(opts.improve_tol);

    if (li == depth - 1) {
      const double total = lg.total_weight();
      pt.x.assign(n, bounds.ua / total);
      pt.y.assign(n, bounds.ub / total);
    } else {
      ContinuousPoint fine;
      prolong(pt, hier->matchings[li], fine);
      pt = std::move(fine);
    }
    refresh(prob, pt);

    LevelStats& ls = result.stats.levels[li];
    ls.vertices = n;
    ls.edges = lg.edge_count();
    ls.cost_before = separator_cost(lg, pt);
    ls.f_before = pt.f;

    const bool refine = li == 0 ||
                        static_cast<double>(n) >=
                            opts.refine_stride * static_cast<double>(last_refined);
    if (refine) {
      if (opts.refiner && opts.refiner_first) opts.refiner(prob, pt);
      ls.escapes = mca_gr(prob, pt, opts.epsilon);
      round_mostly_binary(prob, pt);
      push_fractional(prob, pt);
      make_separator(prob, pt);
      if (opts.refiner && !opts.refiner_first) {
        opts.refiner(prob, pt);
        make_separator(prob, pt);
      }
      ls.refined = true;
      last_refined = n;
    }

    ls.cost_after = separator_cost(lg, pt);
    ls.f_after = pt.f;
    const double total_cost = lg.total_cost();
    ls.improvement_pct =
        total_cost > 0.0 ? 100.0 * (ls.cost_before - ls.cost_after) / total_cost : 0.0;
    if (opts.record_separators) ls.separator = separator_vertices(lg, pt);
    ls.time_ms = ms_since(level_start);

    VSEP_DEBUG("level " << li << ": n=" << n << " m=" << ls.edges << " sep cost "
                        << ls.cost_before << " -> " << ls.cost_after
                        << (ls.refined ? "" : " (pass-through)"));

    if (li == 0) {
      result.partition = extract_partition(prob, pt);
      result.objective = pt.f;
    }
  }

  result.stats.total_ms = ms_since(run_start);
  if (opts.record_separators) result.stats.hierarchy = std::move(hier);
  return result;
}

}  // namespace vsep
