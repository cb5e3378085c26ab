#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vsep/problem.hpp"

namespace vsep {

/// Exact optimum of  maximize g.z  s.t.  l <= w.z <= u,  0 <= z <= 1,
/// written into z (resized to g.size()).  Greedy by the ratio g_i / w_i,
/// descending, ties toward the smaller index; at most one coordinate ends
/// fractional.  Requires positive weights; throws InfeasibleError when
/// l > sum(w) or l > u.  Returns the optimal value.
double greedy_lp(std::span<const double> g, std::span<const double> w, double l, double u,
                 std::vector<double>& z);

struct McaTrace {
  std::size_t iterations = 0;
  std::size_t joint_steps = 0;
  /// Objective after each accepted step; never decreasing.
  std::vector<double> values;
};

/// Mountain climbing on the bilinear relaxation: alternate exact LP solves
/// in x (y fixed) and y (x fixed), preferring a simultaneous step when it
/// beats both single steps by eta.  Stops when neither candidate improves
/// f by more than improve_tol * (1 + |f|).  pt must carry fresh caches.
McaTrace mca(const SeparatorProblem& p, ContinuousPoint& pt);

/// Drives the point to at most one fractional coordinate per side without
/// losing objective value: while a side has two fractional coordinates,
/// move along the weight-scaled difference direction whose derivative is
/// non-negative until one coordinate hits a bound.
void round_mostly_binary(const SeparatorProblem& p, ContinuousPoint& pt);

/// Rounds a lone fractional coordinate per side to 0 or 1 when the knapsack
/// row allows it and the objective does not drop; otherwise leaves it
/// fractional (it then falls into the separator on extraction).
void push_fractional(const SeparatorProblem& p, ContinuousPoint& pt);

/// Repairs a mostly-binary point into a valid separator point: while the
/// interaction penalty is positive, zero the shore coordinate with the
/// largest objective gain whose removal keeps its shore above the lower
/// bound, preferring the x side while it has slack.  Throws InvariantError
/// when no coordinate can move.
void make_separator(const SeparatorProblem& p, ContinuousPoint& pt);

}  // namespace vsep
