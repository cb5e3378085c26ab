#include "vsep/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "vsep/errors.hpp"

namespace vsep {

namespace {

constexpr double kTieTol = 1e-12;

std::vector<Vertex> mask_vertices(std::uint32_t mask) {
  std::vector<Vertex> out;
  for (std::uint32_t m = mask; m != 0; m &= m - 1) {
    out.push_back(static_cast<Vertex>(std::countr_zero(m)));
  }
  return out;
}

}  // namespace

VspSolution exact_vsp(const WeightedGraph& g, const Bounds& b) {
  const std::size_t n = g.vertex_count();
  if (n > 14) throw std::invalid_argument("exact_vsp supports at most 14 vertices");
  const std::uint32_t full = n == 0 ? 0u : (1u << n) - 1u;

  std::vector<std::uint32_t> nbr(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (Vertex u : g.neighbors(static_cast<Vertex>(i))) nbr[i] |= 1u << u;
  }

  // Subset sums and neighbor unions, each derived from the mask minus its
  // lowest set bit.
  std::vector<double> wsum(full + 1, 0.0), csum(full + 1, 0.0);
  std::vector<std::uint32_t> nbru(full + 1, 0);
  for (std::uint32_t m = 1; m <= full; ++m) {
    const std::uint32_t low = m & (~m + 1);
    const std::size_t i = static_cast<std::size_t>(std::countr_zero(low));
    wsum[m] = wsum[m ^ low] + g.weight(static_cast<Vertex>(i));
    csum[m] = csum[m ^ low] + g.cost(static_cast<Vertex>(i));
    nbru[m] = nbru[m ^ low] | nbr[i];
  }

  const double total_cost = g.total_cost();
  bool found = false;
  double best_cost = 0.0;
  std::uint32_t best_a = 0, best_b = 0;
  std::vector<Vertex> best_s;

  for (std::uint32_t amask = 0;; ++amask) {
    const double wa = wsum[amask];
    if (wa >= b.la - kFeasTol && wa <= b.ua + kFeasTol) {
      const std::uint32_t free = full & ~(amask | nbru[amask]);
      for (std::uint32_t bmask = free;; bmask = (bmask - 1) & free) {
        const double wb = wsum[bmask];
        if (wb >= b.lb - kFeasTol && wb <= b.ub + kFeasTol) {
          const double cost = total_cost - csum[amask] - csum[bmask];
          if (!found || cost < best_cost - kTieTol) {
            found = true;
            best_cost = cost;
            best_a = amask;
            best_b = bmask;
            best_s = mask_vertices(full & ~(amask | bmask));
          } else if (cost <= best_cost + kTieTol) {
            std::vector<Vertex> s = mask_vertices(full & ~(amask | bmask));
            if (std::lexicographical_compare(s.begin(), s.end(), best_s.begin(), best_s.end())) {
              best_cost = cost;
              best_a = amask;
              best_b = bmask;
              best_s = std::move(s);
            }
          }
        }
        if (bmask == 0) break;
      }
    }
    if (amask == full) break;
  }

  if (!found) throw InfeasibleError("no separator satisfies the shore bounds");

  VspSolution sol;
  sol.cost = best_cost;
  sol.partition.a = mask_vertices(best_a);
  sol.partition.b = mask_vertices(best_b);
  sol.partition.s = best_s;
  sol.partition.cost_s = best_cost;
  sol.partition.weight_a = wsum[best_a];
  sol.partition.weight_b = wsum[best_b];
  return sol;
}

double exact_lp(std::span<const double> g, std::span<const double> w, double l, double u) {
  const std::size_t n = g.size();
  if (w.size() != n) throw std::invalid_argument("exact_lp size mismatch");
  if (n > 12) throw std::invalid_argument("exact_lp supports at most 12 variables");
  if (l > u + kTieTol) throw InfeasibleError("knapsack interval is empty");
  const std::uint32_t full = n == 0 ? 0u : (1u << n) - 1u;

  std::vector<double> wsum(full + 1, 0.0), gsum(full + 1, 0.0);
  for (std::uint32_t m = 1; m <= full; ++m) {
    const std::uint32_t low = m & (~m + 1);
    const std::size_t i = static_cast<std::size_t>(std::countr_zero(low));
    wsum[m] = wsum[m ^ low] + w[i];
    gsum[m] = gsum[m ^ low] + g[i];
  }

  bool found = false;
  double best = 0.0;
  auto consider = [&](double value) {
    if (!found || value > best) {
      found = true;
      best = value;
    }
  };

  // Every vertex of the feasible polytope has at most one fractional
  // coordinate, and when it has one the knapsack row is tight at l or u.
  for (std::uint32_t mask = 0;; ++mask) {
    const double wm = wsum[mask];
    if (wm >= l - kTieTol && wm <= u + kTieTol) consider(gsum[mask]);
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) continue;
      if (w[i] == 0.0) continue;
      for (double target : {l, u}) {
        const double t = (target - wm) / w[i];
        if (t > kTieTol && t < 1.0 - kTieTol) consider(gsum[mask] + t * g[i]);
      }
    }
    if (mask == full) break;
  }

  if (!found) throw InfeasibleError("knapsack interval admits no point");
  return best;
}

}  // namespace vsep
