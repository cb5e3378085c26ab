#pragma once

#include <span>
#include <vector>

#include "vsep/problem.hpp"

namespace vsep {

/// Optimal separator found by exhaustive enumeration.
struct VspSolution {
  Partition partition;
  double cost = 0.0;
};

/// Exact minimum-cost vertex separator by enumerating all 3^n assignments.
/// Ties are broken toward the lexicographically smallest sorted separator
/// list.  Only intended for n <= 14; throws std::invalid_argument beyond
/// that and InfeasibleError when no assignment satisfies the bounds.
VspSolution exact_vsp(const WeightedGraph& g, const Bounds& b);

/// Exact optimum of  maximize g.z  s.t.  l <= w.z <= u,  0 <= z <= 1,
/// by enumerating binary supports plus single fractional completions.
/// Only intended for n <= 12; throws std::invalid_argument beyond that and
/// InfeasibleError when the knapsack row admits no point.
double exact_lp(std::span<const double> g, std::span<const double> w, double l, double u);

}  // namespace vsep
