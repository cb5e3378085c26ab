#pragma once

#include <span>
#include <string>
#include <vector>

#include "vsep/graph.hpp"

namespace vsep {

/// Classification threshold: a coordinate within this of 0 or 1 counts as binary.
inline constexpr double kBinaryTol = 1e-9;
/// Allowed slack on the knapsack rows when validating feasibility.
inline constexpr double kFeasTol = 1e-9;
/// Distance at which a knapsack bound counts as active.
inline constexpr double kActiveTol = 1e-7;

struct Bounds {
  double la = 0.0;
  double ua = 0.0;
  double lb = 0.0;
  double ub = 0.0;
};

/// Continuous bilinear relaxation of the vertex separator problem:
///   maximize  f(x, y) = c.(x + y) - gamma * x.(A y + y)
///   over      0 <= x, y <= 1,  la <= w.x <= ua,  lb <= w.y <= ub,
/// where A is the 0/1 adjacency pattern of the graph.  Costs start as the
/// graph's vertex costs and can be swapped out (cost perturbations); gamma
/// defaults to the largest vertex cost.
class SeparatorProblem {
 public:
  SeparatorProblem(const WeightedGraph& g, Bounds b);

  const WeightedGraph& graph() const { return *graph_; }
  const Bounds& bounds() const { return bounds_; }
  double la() const { return bounds_.la; }
  double ua() const { return bounds_.ua; }
  double lb() const { return bounds_.lb; }
  double ub() const { return bounds_.ub; }

  const std::vector<double>& cost() const { return cost_; }
  double gamma() const { return gamma_; }
  double eta() const { return eta_; }
  double improve_tol() const { return improve_tol_; }

  void set_cost(std::vector<double> cost);
  void set_gamma(double gamma) { gamma_ = gamma; }
  void set_eta(double eta) { eta_ = eta; }
  void set_improve_tol(double tol) { improve_tol_ = tol; }

  /// Minimum objective gain that counts as progress near value f.
  double improve_threshold(double f) const;

  /// Throws InfeasibleError when the bounds are out of range or no valid
  /// separator can exist (shores exceed the total weight, or the graph is
  /// complete while both lower bounds force non-empty shores).
  void validate() const;

 private:
  const WeightedGraph* graph_;
  Bounds bounds_;
  std::vector<double> cost_;
  double gamma_;
  double eta_ = 1e-5;
  double improve_tol_ = 1e-10;
};

/// Iterate of the relaxation.  hx and hy cache (A + I) x and (A + I) y; f
/// caches the objective.  refresh() rebuilds all three from x and y.
struct ContinuousPoint {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> hx;
  std::vector<double> hy;
  double f = 0.0;
};

/// out = (A + I) v over the 0/1 adjacency pattern.
void h_times(const WeightedGraph& g, std::span<const double> v, std::vector<double>& out);

/// Rebuilds hx, hy and f from x and y.
void refresh(const SeparatorProblem& p, ContinuousPoint& pt);

/// Recomputes only f from x, y and the cached hy (after cost or gamma changes).
void refresh_objective(const SeparatorProblem& p, ContinuousPoint& pt);

/// c.(x + y) - gamma * x.(A y + y), evaluated from the cached hy.
double objective(const SeparatorProblem& p, const ContinuousPoint& pt);

/// Separator penalty x.(A y + y) from the cached hy.  For binary x, y this
/// counts edges between the two shores plus their overlap, so it vanishes
/// exactly when the point encodes a valid separator.
double penalty(const ContinuousPoint& pt);

/// True when both knapsack rows and all box constraints hold within tol.
bool is_feasible(const SeparatorProblem& p, const ContinuousPoint& pt, double tol = kFeasTol);

/// Vertex sets of a solution, each sorted ascending.
struct Partition {
  std::vector<Vertex> a;
  std::vector<Vertex> b;
  std::vector<Vertex> s;
  double cost_s = 0.0;
  double weight_a = 0.0;
  double weight_b = 0.0;
};

/// Thresholds A = {i : x_i >= 1 - kBinaryTol}, B likewise from y, S = rest.
/// Throws InvariantError when A and B overlap or touch along an edge, and
/// InfeasibleError when a shore misses its weight bounds.
Partition extract_partition(const SeparatorProblem& p, const ContinuousPoint& pt);

struct PartitionCheck {
  bool valid = true;
  std::vector<std::string> violations;
};

/// Standalone validity report for an arbitrary partition: covers all
/// vertices exactly once, no A-B edge, both shores within their bounds.
/// Violation strings print 1-indexed vertex ids, matching the file formats.
PartitionCheck check_partition(const WeightedGraph& g, const Bounds& b, const Partition& part);

}  // namespace vsep
