#include "vsep/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace vsep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
/// Box multipliers below this count as vanished when choosing coordinates
/// to perturb.
constexpr double kMuTol = 1e-5;
/// Escapes are kept only when they beat the incumbent by this much.
constexpr double kAcceptTol = 1e-9;

void side_gradient(const SeparatorProblem& p, const std::vector<double>& hother,
                   std::vector<double>& g) {
  const std::vector<double>& c = p.cost();
  g.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) g[i] = c[i] - p.gamma() * hother[i];
}

double weight_sum(const SeparatorProblem& p, const std::vector<double>& v) {
  std::span<const double> w = p.graph().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * v[i];
  return s;
}

void side_multipliers(const SeparatorProblem& p, const std::vector<double>& v,
                      const std::vector<double>& g, double lo, double hi, double& lambda,
                      std::vector<double>& mu, double& residual) {
  const std::size_t n = v.size();
  std::span<const double> w = p.graph().weights();
  const double wsum = weight_sum(p, v);
  const bool lower_active = wsum <= lo + kActiveTol;
  const bool upper_active = wsum >= hi - kActiveTol;

  lambda = 0.0;
  if (lower_active || upper_active) {
    double lo_b = -kInf, hi_b = kInf;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = -g[i] / w[i];
      const bool at_one = v[i] >= 1.0 - kBinaryTol;
      const bool at_zero = v[i] <= kBinaryTol;
      if (at_one) {
        lo_b = std::max(lo_b, r);
      } else if (at_zero) {
        hi_b = std::min(hi_b, r);
      } else {
        lo_b = std::max(lo_b, r);
        hi_b = std::min(hi_b, r);
      }
    }
    if (upper_active && !lower_active) hi_b = std::min(hi_b, 0.0);
    if (lower_active && !upper_active) lo_b = std::max(lo_b, 0.0);
    if (lo_b <= hi_b) lambda = std::clamp(0.0, lo_b, hi_b);
  }

  mu.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    mu[i] = -g[i] - lambda * w[i];
    double viol = 0.0;
    if (v[i] >= 1.0 - kBinaryTol) {
      viol = std::max(mu[i], 0.0);
    } else if (v[i] <= kBinaryTol) {
      viol = std::max(-mu[i], 0.0);
    } else {
      viol = std::fabs(mu[i]);
    }
    residual = std::max(residual, viol);
  }
}

}  // namespace

KktCertificate kkt_multipliers(const SeparatorProblem& p, const ContinuousPoint& pt) {
  KktCertificate cert;
  std::vector<double> g;
  side_gradient(p, pt.hy, g);
  side_multipliers(p, pt.x, g, p.la(), p.ua(), cert.lambda_a, cert.mu_a, cert.residual);
  side_gradient(p, pt.hx, g);
  side_multipliers(p, pt.y, g, p.lb(), p.ub(), cert.lambda_b, cert.mu_b, cert.residual);
  return cert;
}

namespace {

bool side_first_order(const SeparatorProblem& p, const std::vector<double>& v,
                      const std::vector<double>& g, double lo, double hi, double tol) {
  const std::size_t n = v.size();
  std::span<const double> w = p.graph().weights();
  const double wsum = weight_sum(p, v);
  const bool upper_active = wsum >= hi - kActiveTol;
  const bool lower_active = wsum <= lo + kActiveTol;

  std::vector<std::size_t> inc, dec;
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] < 1.0 - kBinaryTol) inc.push_back(i);
    if (v[i] > kBinaryTol) dec.push_back(i);
  }

  if (!upper_active) {
    for (std::size_t i : inc) {
      if (g[i] > tol) return false;
    }
  }
  if (!lower_active) {
    for (std::size_t j : dec) {
      if (-g[j] > tol) return false;
    }
  }

  // Pair moves keep the knapsack row constant, so they are feasible either
  // way; a cheap ratio bound settles most cases before the pair scan.
  double max_inc = -kInf, min_dec = kInf;
  for (std::size_t i : inc) max_inc = std::max(max_inc, g[i] / w[i]);
  for (std::size_t j : dec) min_dec = std::min(min_dec, g[j] / w[j]);
  if (max_inc <= min_dec) return true;

  for (std::size_t i : inc) {
    for (std::size_t j : dec) {
      if (i == j) continue;
      if (g[i] * w[j] - g[j] * w[i] > tol) return false;
    }
  }
  return true;
}

}  // namespace

bool check_first_order(const SeparatorProblem& p, const ContinuousPoint& pt, double tol) {
  std::vector<double> g;
  side_gradient(p, pt.hy, g);
  if (!side_first_order(p, pt.x, g, p.la(), p.ua(), tol)) return false;
  side_gradient(p, pt.hx, g);
  return side_first_order(p, pt.y, g, p.lb(), p.ub(), tol);
}

namespace {

struct SparseDir {
  std::size_t idx[2];
  double coef[2];
  int terms;
};

void side_directions(const SeparatorProblem& p, const std::vector<double>& v,
                     const std::vector<double>& g, double lo, double hi, double tol,
                     std::vector<SparseDir>& dirs) {
  const std::size_t n = v.size();
  std::span<const double> w = p.graph().weights();
  const double wsum = weight_sum(p, v);
  const bool upper_active = wsum >= hi - kActiveTol;
  const bool lower_active = wsum <= lo + kActiveTol;

  dirs.clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (!upper_active && v[i] < 1.0 - kBinaryTol && std::fabs(g[i]) <= tol) {
      dirs.push_back({{i, 0}, {1.0, 0.0}, 1});
    }
    if (!lower_active && v[i] > kBinaryTol && std::fabs(g[i]) <= tol) {
      dirs.push_back({{i, 0}, {-1.0, 0.0}, 1});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(v[i] < 1.0 - kBinaryTol)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !(v[j] > kBinaryTol)) continue;
      const double deriv = g[i] / w[i] - g[j] / w[j];
      if (std::fabs(deriv) <= tol) {
        dirs.push_back({{i, j}, {1.0 / w[i], -1.0 / w[j]}, 2});
      }
    }
  }
}

}  // namespace

bool check_local_max(const SeparatorProblem& p, const ContinuousPoint& pt, double tol) {
  const std::size_t n = p.graph().vertex_count();
  if (n > 64) throw std::invalid_argument("check_local_max supports at most 64 vertices");
  if (!check_first_order(p, pt, tol)) return false;

  std::vector<std::uint64_t> closed(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    closed[i] = std::uint64_t{1} << i;
    for (Vertex u : p.graph().neighbors(static_cast<Vertex>(i))) {
      closed[i] |= std::uint64_t{1} << u;
    }
  }
  auto h_entry = [&](std::size_t a, std::size_t b) -> double {
    return (closed[a] >> b) & 1u ? 1.0 : 0.0;
  };

  std::vector<double> g;
  std::vector<SparseDir> du, dv;
  side_gradient(p, pt.hy, g);
  side_directions(p, pt.x, g, p.la(), p.ua(), tol, du);
  side_gradient(p, pt.hx, g);
  side_directions(p, pt.y, g, p.lb(), p.ub(), tol, dv);

  // f(x + t u, y + s v) picks up the cross term -gamma * t * s * u.Hv, so a
  // positive product over the zero-derivative cone breaks local maximality.
  for (const SparseDir& u : du) {
    for (const SparseDir& v : dv) {
      double cross = 0.0;
      for (int a = 0; a < u.terms; ++a) {
        for (int b = 0; b < v.terms; ++b) {
          cross += u.coef[a] * v.coef[b] * h_entry(u.idx[a], v.idx[b]);
        }
      }
      if (-p.gamma() * cross > tol) return false;
    }
  }
  return true;
}

std::vector<double> c_perturb(const SeparatorProblem& p, const ContinuousPoint& pt,
                              const KktCertificate& cert, double eps) {
  std::vector<double> c = p.cost();
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::fabs(cert.mu_a[i]) < kMuTol) c[i] += pt.x[i] < 0.5 ? eps : -eps;
    if (std::fabs(cert.mu_b[i]) < kMuTol) c[i] += pt.y[i] < 0.5 ? eps : -eps;
  }
  return c;
}

namespace {

double side_alpha1(const SeparatorProblem& p, const std::vector<double>& v,
                   const std::vector<double>& hother, double lo, double hi) {
  const double wsum = weight_sum(p, v);
  if (wsum <= lo + kActiveTol || wsum >= hi - kActiveTol) return -kInf;
  const std::vector<double>& c = p.cost();
  double best = -kInf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 1.0 - kBinaryTol && hother[i] > 1e-12) {
      best = std::max(best, c[i] / hother[i]);
    }
  }
  return best;
}

}  // namespace

double alpha1(const SeparatorProblem& p, const ContinuousPoint& pt) {
  return std::max(side_alpha1(p, pt.x, pt.hy, p.la(), p.ua()),
                  side_alpha1(p, pt.y, pt.hx, p.lb(), p.ub()));
}

double alpha2(const SeparatorProblem& p, const ContinuousPoint& pt) {
  const std::vector<double>& v = pt.x;
  const std::vector<double>& c = p.cost();
  std::span<const double> w = p.graph().weights();

  if (weight_sum(p, v) < p.ua() - kActiveTol) {
    throw std::invalid_argument("alpha2 requires the x knapsack upper bound to be active");
  }

  // Each (raise i, lower j) pair stays unprofitable on a closed interval of
  // interaction weights; the answer is the infimum of the intersection,
  // collapsing to gamma when the intersection is empty.
  double lo = -kInf, hi = kInf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] < 1.0 - kBinaryTol)) continue;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j == i || !(v[j] > kBinaryTol)) continue;
      const double q = pt.hy[i] / w[i] - pt.hy[j] / w[j];
      const double d = c[i] / w[i] - c[j] / w[j];
      if (q > 0.0) {
        lo = std::max(lo, d / q);
      } else if (q < 0.0) {
        hi = std::min(hi, d / q);
      } else if (d > 0.0) {
        return p.gamma();
      }
    }
  }
  if (lo > hi) return p.gamma();
  return std::min(lo, p.gamma());
}

namespace {

void mca_cp_into(const SeparatorProblem& p, ContinuousPoint& pt, double eps, EscapeStats& st) {
  McaTrace t = mca(p, pt);
  ++st.mca_calls;
  st.mca_steps += t.iterations;

  while (true) {
    const KktCertificate cert = kkt_multipliers(p, pt);
    std::vector<double> nudged = c_perturb(p, pt, cert, eps);

    ContinuousPoint cand = pt;
    SeparatorProblem q = p;
    q.set_cost(std::move(nudged));
    refresh_objective(q, cand);
    McaTrace t1 = mca(q, cand);
    refresh_objective(p, cand);
    McaTrace t2 = mca(p, cand);
    st.mca_calls += 2;
    st.mca_steps += t1.iterations + t2.iterations;

    if (cand.f > pt.f + kAcceptTol) {
      pt = std::move(cand);
      ++st.cost_rounds;
    } else {
      break;
    }
  }
}

}  // namespace

EscapeStats mca_cp(const SeparatorProblem& p, ContinuousPoint& pt, double eps) {
  EscapeStats st;
  mca_cp_into(p, pt, eps, st);
  return st;
}

EscapeStats mca_gr(const SeparatorProblem& p, ContinuousPoint& pt, double eps) {
  EscapeStats st;
  mca_cp_into(p, pt, eps, st);

  double g0 = alpha1(p, pt);
  if (!(g0 > 0.0)) return st;

  int k = 10;
  while (k > 0) {
    --k;
    const double scaled = g0 * static_cast<double>(k) / 10.0;
    ++st.gamma_rounds;

    ContinuousPoint cand = pt;
    SeparatorProblem q = p;
    q.set_gamma(scaled);
    refresh_objective(q, cand);
    mca_cp_into(q, cand, eps, st);
    refresh_objective(p, cand);
    mca_cp_into(p, cand, eps, st);

    if (cand.f > pt.f + kAcceptTol) {
      pt = std::move(cand);
      g0 = alpha1(p, pt);
      if (!(g0 > 0.0)) break;
      k = 10;
      ++st.gamma_resets;
    }
  }
  return st;
}

}  // namespace vsep
