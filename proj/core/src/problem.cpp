#include "vsep/problem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "vsep/errors.hpp"

namespace vsep {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

SeparatorProblem::SeparatorProblem(const WeightedGraph& g, Bounds b)
    : graph_(&g), bounds_(b), cost_(g.costs().begin(), g.costs().end()), gamma_(g.max_cost()) {
  validate();
}

void SeparatorProblem::set_cost(std::vector<double> cost) {
  if (cost.size() != graph_->vertex_count()) throw std::invalid_argument("cost size mismatch");
  cost_ = std::move(cost);
}

double SeparatorProblem::improve_threshold(double f) const {
  return improve_tol_ * (1.0 + std::fabs(f));
}

void SeparatorProblem::validate() const {
  const double total = graph_->total_weight();
  std::ostringstream msg;
  if (bounds_.la < 0 || bounds_.lb < 0 || bounds_.la > bounds_.ua || bounds_.lb > bounds_.ub) {
    msg << "invalid shore bounds [" << bounds_.la << ", " << bounds_.ua << "] x [" << bounds_.lb
        << ", " << bounds_.ub << "]";
    throw InfeasibleError(msg.str());
  }
  if (bounds_.la + bounds_.lb > total + kFeasTol) {
    msg << "shore lower bounds " << bounds_.la << " + " << bounds_.lb
        << " exceed total vertex weight " << total;
    throw InfeasibleError(msg.str());
  }
  if (bounds_.la > 0.0 && bounds_.lb > 0.0) {
    const std::size_t n = graph_->vertex_count();
    if (2 * graph_->edge_count() == n * (n - 1)) {
      throw InfeasibleError(
          "every vertex pair is adjacent, so the shores cannot both be non-empty");
    }
  }
}

void h_times(const WeightedGraph& g, std::span<const double> v, std::vector<double>& out) {
  const std::size_t n = g.vertex_count();
  out.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = v[i];
    for (Vertex u : g.neighbors(static_cast<Vertex>(i))) s += v[u];
    out[i] = s;
  }
}

void refresh(const SeparatorProblem& p, ContinuousPoint& pt) {
  h_times(p.graph(), pt.x, pt.hx);
  h_times(p.graph(), pt.y, pt.hy);
  pt.f = objective(p, pt);
}

void refresh_objective(const SeparatorProblem& p, ContinuousPoint& pt) {
  pt.f = objective(p, pt);
}

double objective(const SeparatorProblem& p, const ContinuousPoint& pt) {
  const std::vector<double>& c = p.cost();
  double lin = dot(c, pt.x) + dot(c, pt.y);
  return lin - p.gamma() * dot(pt.x, pt.hy);
}

double penalty(const ContinuousPoint& pt) {
  return dot(pt.x, pt.hy);
}

bool is_feasible(const SeparatorProblem& p, const ContinuousPoint& pt, double tol) {
  const std::size_t n = p.graph().vertex_count();
  if (pt.x.size() != n || pt.y.size() != n) return false;
  double wx = 0.0, wy = 0.0;
  std::span<const double> w = p.graph().weights();
  for (std::size_t i = 0; i < n; ++i) {
    if (pt.x[i] < -tol || pt.x[i] > 1 + tol) return false;
    if (pt.y[i] < -tol || pt.y[i] > 1 + tol) return false;
    wx += w[i] * pt.x[i];
    wy += w[i] * pt.y[i];
  }
  return wx >= p.la() - tol && wx <= p.ua() + tol && wy >= p.lb() - tol && wy <= p.ub() + tol;
}

Partition extract_partition(const SeparatorProblem& p, const ContinuousPoint& pt) {
  const WeightedGraph& g = p.graph();
  const std::size_t n = g.vertex_count();
  Partition part;
  std::vector<char> in_a(n, 0), in_b(n, 0);
  // Diagnostics print 1-indexed vertex ids, matching the file formats.
  for (std::size_t i = 0; i < n; ++i) {
    const bool a = pt.x[i] >= 1.0 - kBinaryTol;
    const bool b = pt.y[i] >= 1.0 - kBinaryTol;
    if (a && b) {
      std::ostringstream msg;
      msg << "vertex " << i + 1 << " assigned to both shores";
      throw InvariantError(msg.str());
    }
    in_a[i] = a;
    in_b[i] = b;
    const Vertex v = static_cast<Vertex>(i);
    if (a) {
      part.a.push_back(v);
      part.weight_a += g.weight(v);
    } else if (b) {
      part.b.push_back(v);
      part.weight_b += g.weight(v);
    } else {
      part.s.push_back(v);
      part.cost_s += p.graph().cost(v);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_a[i]) continue;
    for (Vertex u : g.neighbors(static_cast<Vertex>(i))) {
      if (in_b[u]) {
        std::ostringstream msg;
        msg << "edge (" << i + 1 << ", " << u + 1 << ") crosses the shores";
        throw InvariantError(msg.str());
      }
    }
  }
  const Bounds& b = p.bounds();
  if (part.weight_a < b.la - kFeasTol || part.weight_a > b.ua + kFeasTol ||
      part.weight_b < b.lb - kFeasTol || part.weight_b > b.ub + kFeasTol) {
    std::ostringstream msg;
    msg << "shore weights (" << part.weight_a << ", " << part.weight_b << ") outside bounds ["
        << b.la << ", " << b.ua << "] x [" << b.lb << ", " << b.ub << "]";
    throw InfeasibleError(msg.str());
  }
  return part;
}

PartitionCheck check_partition(const WeightedGraph& g, const Bounds& b, const Partition& part) {
  PartitionCheck out;
  const std::size_t n = g.vertex_count();
  std::vector<int> where(n, -1);
  // Violations print 1-indexed vertex ids, matching the file formats.
  auto place = [&](const std::vector<Vertex>& vs, int tag, const char* name) {
    for (Vertex v : vs) {
      if (v >= n) {
        std::ostringstream msg;
        msg << name << " contains out-of-range vertex " << static_cast<std::uint64_t>(v) + 1;
        out.violations.push_back(msg.str());
        continue;
      }
      if (where[v] != -1) {
        std::ostringstream msg;
        msg << "vertex " << v + 1 << " listed twice";
        out.violations.push_back(msg.str());
        continue;
      }
      where[v] = tag;
    }
  };
  place(part.a, 0, "A");
  place(part.b, 1, "B");
  place(part.s, 2, "S");
  for (std::size_t i = 0; i < n; ++i) {
    if (where[i] == -1) {
      std::ostringstream msg;
      msg << "vertex " << i + 1 << " unassigned";
      out.violations.push_back(msg.str());
    }
  }
  double wa = 0.0, wb = 0.0;
  for (Vertex v : part.a)
    if (v < n) wa += g.weight(v);
  for (Vertex v : part.b)
    if (v < n) wb += g.weight(v);
  for (Vertex v : part.a) {
    if (v >= n) continue;
    for (Vertex u : g.neighbors(v)) {
      if (u < n && where[u] == 1) {
        std::ostringstream msg;
        msg << "edge (" << v + 1 << ", " << u + 1 << ") crosses the shores";
        out.violations.push_back(msg.str());
      }
    }
  }
  auto check_range = [&](double w, double lo, double hi, const char* name) {
    if (w < lo - kFeasTol || w > hi + kFeasTol) {
      std::ostringstream msg;
      msg << name << " weight " << w << " outside [" << lo << ", " << hi << "]";
      out.violations.push_back(msg.str());
    }
  };
  check_range(wa, b.la, b.ua, "A");
  check_range(wb, b.lb, b.ub, "B");
  out.valid = out.violations.empty();
  return out;
}

}  // namespace vsep
