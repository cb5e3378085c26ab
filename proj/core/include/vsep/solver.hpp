#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "vsep/coarsen.hpp"
#include "vsep/perturb.hpp"
#include "vsep/problem.hpp"

namespace vsep {

struct SolveOptions {
  /// Largest fraction of the total vertex weight a shore may take.
  double balance = 0.6;
  MatchRule rule = MatchRule::heavy_edge;
  std::uint64_t seed = 0;
  /// Interaction weight override; each level otherwise uses its own largest
  /// vertex cost.
  std::optional<double> gamma;
  /// Cost-perturbation step size.
  double epsilon = 1e-6;
  /// Margin a simultaneous climb step must clear over the single steps.
  double eta = 1e-5;
  /// Relative objective gain that counts as climb progress.
  double improve_tol = 1e-10;
  /// Refine a level only when it is at least this factor larger than the
  /// last refined one; the coarsest and finest levels always refine.
  double refine_stride = 1.0;
  /// Optional local-refinement hook run at each refined level.
  std::function<void(const SeparatorProblem&, ContinuousPoint&)> refiner;
  /// Run the hook before the climb (true) or after the separator repair.
  bool refiner_first = true;
  /// Keep per-level separator lists and the hierarchy in the run stats.
  bool record_separators = false;
};

struct LevelStats {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  /// Separator cost right after arriving at this level and after
  /// refinement; improvement is their gap as a share of the level's total
  /// vertex cost, in percent.
  double cost_before = 0.0;
  double cost_after = 0.0;
  double improvement_pct = 0.0;
  /// Relaxation objective on arrival and after refinement.
  double f_before = 0.0;
  double f_after = 0.0;
  double time_ms = 0.0;
  bool refined = false;
  EscapeStats escapes;
  /// Filled when SolveOptions::record_separators is set.
  std::vector<Vertex> separator;
};

struct RunStats {
  /// Index 0 is the finest level.
  std::vector<LevelStats> levels;
  double coarsen_ms = 0.0;
  double total_ms = 0.0;
  /// Set when SolveOptions::record_separators is set.
  std::shared_ptr<const Hierarchy> hierarchy;
};

struct SolveResult {
  Partition partition;
  /// Relaxation objective at the returned point.
  double objective = 0.0;
  RunStats stats;
};

/// Shore bounds used by solve: each shore weighs at least 1 and at most
/// floor(balance * total weight).
Bounds derive_bounds(const WeightedGraph& g, double balance);

/// Multilevel solve: coarsen to a small graph, climb the relaxation there,
/// then prolong level by level, re-climbing and repairing a valid separator
/// at each refined level.  Throws InfeasibleError when the bounds admit no
/// separator and std::invalid_argument on out-of-range options.
SolveResult solve(const WeightedGraph& g, const SolveOptions& opts = {});

}  // namespace vsep
