#include "vsep/qp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <queue>
#include <sstream>
#include <vector>

#include "vsep/errors.hpp"

namespace vsep {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_fractional(double v) {
  return v > kBinaryTol && v < 1.0 - kBinaryTol;
}

}  // namespace

double greedy_lp(std::span<const double> g, std::span<const double> w, double l, double u,
                 std::vector<double>& z) {
  const std::size_t n = g.size();
  if (w.size() != n) throw std::invalid_argument("greedy_lp size mismatch");
  double total = 0.0;
  for (double wi : w) {
    if (!(wi > 0.0)) throw std::invalid_argument("greedy_lp requires positive weights");
    total += wi;
  }
  if (l > u + kFeasTol || l > total + kFeasTol) {
    std::ostringstream msg;
    msg << "knapsack interval [" << l << ", " << u << "] admits no point with total weight "
        << total;
    throw InfeasibleError(msg.str());
  }

  std::vector<double> ratio(n);
  for (std::size_t i = 0; i < n; ++i) ratio[i] = g[i] / w[i];
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ratio[a] != ratio[b]) return ratio[a] > ratio[b];
    return a < b;
  });

  z.assign(n, 0.0);
  double acc = 0.0;
  double value = 0.0;
  std::size_t k = 0;
  // Profitable coordinates fill toward u; the last one may end fractional.
  for (; k < n; ++k) {
    const std::size_t i = order[k];
    if (!(ratio[i] > 0.0)) break;
    const double room = u - acc;
    if (room <= 0.0) break;
    if (w[i] <= room) {
      z[i] = 1.0;
      acc += w[i];
      value += g[i];
    } else {
      z[i] = room / w[i];
      value += g[i] * z[i];
      acc = u;
      break;
    }
  }
  // Unprofitable coordinates enter only to reach l, least harmful first.
  for (; k < n && acc < l; ++k) {
    const std::size_t i = order[k];
    if (z[i] != 0.0) continue;
    const double need = l - acc;
    if (w[i] <= need) {
      z[i] = 1.0;
      acc += w[i];
      value += g[i];
    } else {
      z[i] = need / w[i];
      value += g[i] * z[i];
      acc = l;
    }
  }
  return value;
}

McaTrace mca(const SeparatorProblem& p, ContinuousPoint& pt) {
  const WeightedGraph& gr = p.graph();
  const std::size_t n = gr.vertex_count();
  std::span<const double> w = gr.weights();
  const std::vector<double>& c = p.cost();
  const double gamma = p.gamma();
  const double eta = p.eta();

  McaTrace trace;
  std::vector<double> grad(n), xhat, yhat, hyhat;
  bool redo_x = true, redo_y = true;
  double f_x = pt.f, f_y = pt.f;

  while (true) {
    if (redo_x) {
      for (std::size_t i = 0; i < n; ++i) grad[i] = c[i] - gamma * pt.hy[i];
      const double lpx = greedy_lp(grad, w, p.la(), p.ua(), xhat);
      f_x = lpx + dot(c, pt.y);
    } else {
      xhat = pt.x;
      f_x = pt.f;
    }
    if (redo_y) {
      for (std::size_t i = 0; i < n; ++i) grad[i] = c[i] - gamma * pt.hx[i];
      const double lpy = greedy_lp(grad, w, p.lb(), p.ub(), yhat);
      f_y = lpy + dot(c, pt.x);
    } else {
      yhat = pt.y;
      f_y = pt.f;
    }

    const double thresh = p.improve_threshold(pt.f);
    const double f_single = std::max(f_x, f_y);

    // The simultaneous candidate only differs from a single step when both
    // LPs were re-solved this round.
    bool have_joint = false;
    double f_joint = 0.0;
    if (redo_x && redo_y) {
      h_times(gr, yhat, hyhat);
      f_joint = dot(c, xhat) + dot(c, yhat) - gamma * dot(xhat, hyhat);
      have_joint = true;
    }

    if (have_joint && f_joint > f_single + eta && f_joint > pt.f + thresh) {
      pt.x = xhat;
      pt.y = yhat;
      std::swap(pt.hy, hyhat);
      h_times(gr, pt.x, pt.hx);
      pt.f = f_joint;
      ++trace.joint_steps;
      redo_x = true;
      redo_y = true;
    } else if (f_single > pt.f + thresh) {
      if (f_x >= f_y) {
        pt.x = xhat;
        h_times(gr, pt.x, pt.hx);
        pt.f = f_x;
        redo_x = false;
        redo_y = true;
      } else {
        pt.y = yhat;
        if (have_joint) {
          std::swap(pt.hy, hyhat);
        } else {
          h_times(gr, pt.y, pt.hy);
        }
        pt.f = f_y;
        redo_x = true;
        redo_y = false;
      }
    } else {
      break;
    }
    ++trace.iterations;
    trace.values.push_back(pt.f);
  }
  return trace;
}

void round_mostly_binary(const SeparatorProblem& p, ContinuousPoint& pt) {
  const WeightedGraph& gr = p.graph();
  const std::size_t n = gr.vertex_count();
  std::span<const double> w = gr.weights();
  const std::vector<double>& c = p.cost();
  const double gamma = p.gamma();

  // Moves along (1/w_i) e_i - (1/w_j) e_j keep the knapsack row constant and
  // change f linearly, so following the sign of the derivative never loses
  // value; every move lands at least one coordinate exactly on a bound.
  auto phase = [&](std::vector<double>& v, const std::vector<double>& hother) {
    std::deque<std::size_t> frac;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_fractional(v[i])) frac.push_back(i);
    }
    while (frac.size() >= 2) {
      const std::size_t i = frac[0];
      const std::size_t j = frac[1];
      frac.pop_front();
      frac.pop_front();
      const double gi = c[i] - gamma * hother[i];
      const double gj = c[j] - gamma * hother[j];
      const double slope = gi / w[i] - gj / w[j];
      std::size_t up = i, down = j;
      if (slope < 0.0) {
        up = j;
        down = i;
      }
      const double cap_up = (1.0 - v[up]) * w[up];
      const double cap_down = v[down] * w[down];
      if (cap_up <= cap_down) {
        v[down] -= cap_up / w[down];
        v[up] = 1.0;
        if (cap_up == cap_down) v[down] = 0.0;
      } else {
        v[up] += cap_down / w[up];
        v[down] = 0.0;
      }
      if (is_fractional(v[j])) frac.push_front(j);
      if (is_fractional(v[i])) frac.push_front(i);
    }
  };

  phase(pt.x, pt.hy);
  h_times(gr, pt.x, pt.hx);
  phase(pt.y, pt.hx);
  h_times(gr, pt.y, pt.hy);
  pt.f = objective(p, pt);
}

void push_fractional(const SeparatorProblem& p, ContinuousPoint& pt) {
  const WeightedGraph& gr = p.graph();
  const std::size_t n = gr.vertex_count();
  std::span<const double> w = gr.weights();
  const std::vector<double>& c = p.cost();
  const double gamma = p.gamma();

  auto side = [&](std::vector<double>& v, const std::vector<double>& hother, double lo,
                  double hi) {
    double acc = dot(w, v);
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_fractional(v[i])) continue;
      const double gi = c[i] - gamma * hother[i];
      const double wi = w[i];
      double target = -1.0;
      if (lo + wi <= acc + kFeasTol && acc <= hi - wi + kFeasTol) {
        target = gi > 0.0 ? 1.0 : 0.0;
      } else {
        const bool up_ok = acc + wi * (1.0 - v[i]) <= hi + kFeasTol;
        const bool down_ok = acc - wi * v[i] >= lo - kFeasTol;
        if (up_ok != down_ok) {
          if (up_ok && gi >= 0.0) target = 1.0;
          if (down_ok && gi <= 0.0) target = 0.0;
        } else if (down_ok) {
          target = 0.0;
        }
      }
      if (target >= 0.0) {
        acc += wi * (target - v[i]);
        v[i] = target;
      }
    }
  };

  side(pt.x, pt.hy, p.la(), p.ua());
  h_times(gr, pt.x, pt.hx);
  side(pt.y, pt.hx, p.lb(), p.ub());
  h_times(gr, pt.y, pt.hy);
  pt.f = objective(p, pt);
}

namespace {

struct Cand {
  double gain;
  Vertex v;
};

struct CandLess {
  bool operator()(const Cand& a, const Cand& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.v > b.v;
  }
};

using CandQueue = std::priority_queue<Cand, std::vector<Cand>, CandLess>;

}  // namespace

void make_separator(const SeparatorProblem& p, ContinuousPoint& pt) {
  const WeightedGraph& gr = p.graph();
  const std::size_t n = gr.vertex_count();
  std::span<const double> w = gr.weights();
  const std::vector<double>& c = p.cost();
  const double gamma = p.gamma();

  std::vector<char> in_a(n), in_b(n);
  for (std::size_t i = 0; i < n; ++i) {
    in_a[i] = pt.x[i] >= 1.0 - kBinaryTol;
    in_b[i] = pt.y[i] >= 1.0 - kBinaryTol;
  }

  // cnt_a[u] counts shore-A members in the closed neighborhood of u; a shore
  // member with a positive opposite count sits on a crossing edge or overlap.
  std::vector<std::uint32_t> cnt_a(n, 0), cnt_b(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex v = static_cast<Vertex>(i);
    if (in_a[i]) {
      ++cnt_a[i];
      for (Vertex u : gr.neighbors(v)) ++cnt_a[u];
    }
    if (in_b[i]) {
      ++cnt_b[i];
      for (Vertex u : gr.neighbors(v)) ++cnt_b[u];
    }
  }

  long long conflicts = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_a[i]) conflicts += cnt_b[i];
  }

  double wx = dot(w, pt.x);
  double wy = dot(w, pt.y);

  CandQueue qa, qb;
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex v = static_cast<Vertex>(i);
    if (in_a[i] && cnt_b[i] > 0) qa.push({gamma * pt.hy[i] - c[i], v});
    if (in_b[i] && cnt_a[i] > 0) qb.push({gamma * pt.hx[i] - c[i], v});
  }

  // Gains and counts only decrease, so stale queue entries are re-keyed at
  // pop time and discarded entries never become valid again.
  auto pop_valid = [&](CandQueue& q, const std::vector<char>& in_shore,
                       const std::vector<std::uint32_t>& cnt_other,
                       const std::vector<double>& h_other, const double& wsum,
                       double lo) -> long long {
    while (!q.empty()) {
      const Cand top = q.top();
      q.pop();
      if (!in_shore[top.v] || cnt_other[top.v] == 0) continue;
      const double cur = gamma * h_other[top.v] - c[top.v];
      if (cur != top.gain) {
        q.push({cur, top.v});
        continue;
      }
      if (wsum - w[top.v] < lo - kFeasTol) continue;
      return top.v;
    }
    return -1;
  };

  while (conflicts > 0) {
    long long va = pop_valid(qa, in_a, cnt_b, pt.hy, wx, p.la());
    if (va >= 0) {
      const Vertex v = static_cast<Vertex>(va);
      const double xv = pt.x[v];
      pt.x[v] = 0.0;
      in_a[v] = 0;
      wx -= w[v] * xv;
      conflicts -= cnt_b[v];
      pt.hx[v] -= xv;
      --cnt_a[v];
      for (Vertex u : gr.neighbors(v)) {
        pt.hx[u] -= xv;
        --cnt_a[u];
      }
      continue;
    }
    long long vb = pop_valid(qb, in_b, cnt_a, pt.hx, wy, p.lb());
    if (vb >= 0) {
      const Vertex v = static_cast<Vertex>(vb);
      const double yv = pt.y[v];
      pt.y[v] = 0.0;
      in_b[v] = 0;
      wy -= w[v] * yv;
      conflicts -= cnt_a[v];
      pt.hy[v] -= yv;
      --cnt_b[v];
      for (Vertex u : gr.neighbors(v)) {
        pt.hy[u] -= yv;
        --cnt_b[u];
      }
      continue;
    }
    std::ostringstream msg;
    msg << conflicts << " crossing pairs remain but neither shore can give up a vertex";
    throw InvariantError(msg.str());
  }

  // A fractional coordinate is not shore mass once thresholds apply, so a
  // shore can sit below its lower bound; promote conflict-free fractional
  // coordinates to close the gap when the upper bound allows it.
  struct ShoreState {
    std::vector<double>& v;
    std::vector<char>& in;
    std::vector<std::uint32_t>& cnt;
    std::vector<double>& h;
    double& wsum;
    double wbin;
    double lo, hi;
  };
  double wbin_a = 0.0, wbin_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_a[i]) wbin_a += w[i];
    if (in_b[i]) wbin_b += w[i];
  }
  ShoreState shore_a{pt.x, in_a, cnt_a, pt.hx, wx, wbin_a, p.la(), p.ua()};
  ShoreState shore_b{pt.y, in_b, cnt_b, pt.hy, wy, wbin_b, p.lb(), p.ub()};

  auto raise = [&](ShoreState& self, std::size_t i) {
    const double delta = 1.0 - self.v[i];
    self.v[i] = 1.0;
    self.in[i] = 1;
    self.wsum += w[i] * delta;
    self.wbin += w[i];
    self.h[i] += delta;
    ++self.cnt[i];
    for (Vertex u : gr.neighbors(static_cast<Vertex>(i))) {
      self.h[u] += delta;
      ++self.cnt[u];
    }
  };
  auto drop = [&](ShoreState& side, std::size_t j) {
    const double val = side.v[j];
    side.v[j] = 0.0;
    side.wsum -= w[j] * val;
    side.h[j] -= val;
    for (Vertex u : gr.neighbors(static_cast<Vertex>(j))) side.h[u] -= val;
    if (side.in[j]) {
      side.in[j] = 0;
      side.wbin -= w[j];
      --side.cnt[j];
      for (Vertex u : gr.neighbors(static_cast<Vertex>(j))) --side.cnt[u];
    }
  };

  auto promote = [&](ShoreState& self, ShoreState& other) {
    for (std::size_t i = 0; i < n && self.wbin < self.lo - kFeasTol; ++i) {
      if (self.in[i] || self.v[i] <= kBinaryTol) continue;
      if (other.cnt[i] > 0) continue;
      if (self.wsum + w[i] * (1.0 - self.v[i]) > self.hi + kFeasTol) continue;
      raise(self, i);
    }
    // Conflict-free mass may not exist at all; relocate a whole vertex
    // instead, clearing the opposite shore out of its closed neighborhood
    // first. The opposite lower bound caps what may be cleared; net is the
    // separator cost change (cleared members enter, the promoted one leaves).
    while (self.wbin < self.lo - kFeasTol) {
      std::size_t best = n;
      double best_net = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (self.in[i]) continue;
        if (self.wsum + w[i] * (1.0 - self.v[i]) > self.hi + kFeasTol) continue;
        double cleared_w = 0.0;
        double net = -c[i];
        if (other.in[i]) {
          cleared_w += w[i];
          net += c[i];
        }
        for (Vertex u : gr.neighbors(static_cast<Vertex>(i))) {
          if (other.in[u]) {
            cleared_w += w[u];
            net += c[u];
          }
        }
        if (other.wbin - cleared_w < other.lo - kFeasTol) continue;
        if (best == n || net < best_net) {
          best = i;
          best_net = net;
        }
      }
      if (best == n) break;
      if (other.v[best] > kBinaryTol) drop(other, best);
      for (Vertex u : gr.neighbors(static_cast<Vertex>(best))) {
        if (other.v[u] > kBinaryTol) drop(other, u);
      }
      raise(self, best);
    }
  };

  promote(shore_a, shore_b);
  promote(shore_b, shore_a);

  refresh(p, pt);
}

}  // namespace vsep
