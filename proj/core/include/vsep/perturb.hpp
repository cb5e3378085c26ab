#pragma once

#include <cstddef>
#include <vector>

#include "vsep/qp.hpp"

namespace vsep {

/// Multiplier estimates for the two knapsack rows (lambda) and the box
/// constraints (mu), recovered from the gradient at a point.  residual is
/// the largest complementarity violation seen; it vanishes at exact
/// stationary points.
struct KktCertificate {
  double lambda_a = 0.0;
  double lambda_b = 0.0;
  std::vector<double> mu_a;
  std::vector<double> mu_b;
  double residual = 0.0;
};

/// Recovers multipliers side by side.  The knapsack multiplier comes from
/// the tightest interval the box-active coordinates leave open, clipped to
/// the sign its active bound demands and snapped toward zero; the box
/// multipliers then absorb the remaining gradient.
KktCertificate kkt_multipliers(const SeparatorProblem& p, const ContinuousPoint& pt);

/// True when no single-coordinate or knapsack-preserving pair move can
/// improve either side's LP by more than tol.
bool check_first_order(const SeparatorProblem& p, const ContinuousPoint& pt, double tol = 1e-9);

/// First-order check plus the bilinear curvature test over all pairs of
/// zero-derivative feasible directions (one per side).  Supports at most 64
/// vertices; throws std::invalid_argument beyond that.
bool check_local_max(const SeparatorProblem& p, const ContinuousPoint& pt, double tol = 1e-9);

/// Perturbed cost vector: every coordinate whose box multiplier is close to
/// zero has its cost nudged by eps, upward when the coordinate sits low and
/// downward when it sits high, on each side independently.
std::vector<double> c_perturb(const SeparatorProblem& p, const ContinuousPoint& pt,
                              const KktCertificate& cert, double eps);

/// Largest interaction weight at which some coordinate move turns
/// profitable on a side whose knapsack row is strictly interior.  Returns
/// -infinity when neither side qualifies.
double alpha1(const SeparatorProblem& p, const ContinuousPoint& pt);

/// Infimum of the interaction weights at which every knapsack-preserving
/// pair move on the x side stays unprofitable, capped at gamma.  Requires
/// the x knapsack row's upper bound to be active; throws
/// std::invalid_argument otherwise.  Returns -infinity when no pair
/// constrains the value from below and gamma when the pair conditions admit
/// no interaction weight at all.
double alpha2(const SeparatorProblem& p, const ContinuousPoint& pt);

struct EscapeStats {
  std::size_t mca_calls = 0;
  std::size_t mca_steps = 0;
  /// Accepted cost-perturbation escapes.
  std::size_t cost_rounds = 0;
  /// Interaction weights tried by the reduction schedule.
  std::size_t gamma_rounds = 0;
  /// Schedule restarts after an accepted escape.
  std::size_t gamma_resets = 0;
};

/// Mountain climbing with cost-perturbation escapes: climb, then repeatedly
/// re-climb under nudged costs and keep the result only when it strictly
/// improves the original objective.
EscapeStats mca_cp(const SeparatorProblem& p, ContinuousPoint& pt, double eps = 1e-6);

/// Cost-perturbation climbing wrapped in an interaction-weight reduction
/// schedule: re-climb under gamma scaled down in tenths of the alpha1
/// threshold, keeping strict improvements and restarting the schedule after
/// each one.
EscapeStats mca_gr(const SeparatorProblem& p, ContinuousPoint& pt, double eps = 1e-6);

}  // namespace vsep
