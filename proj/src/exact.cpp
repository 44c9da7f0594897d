#include "cavitylab/exact.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "cavitylab/errors.hpp"

namespace cavitylab {

namespace {

std::uint64_t enumeration_size(int T, int live_nodes, std::uint64_t cap) {
  std::uint64_t states = 1;
  for (int i = 0; i < live_nodes; ++i) {
    if (states > cap / static_cast<std::uint64_t>(T)) return cap + 1;
    states *= static_cast<std::uint64_t>(T);
  }
  return states;
}

// Enumerates assignments over the live nodes of `view` in lexicographic order
// (node 0 most significant) and calls visit(assignment, value).
template <typename Visit>
void enumerate(const SubnetworkView& view, const BruteOptions& opts, Visit&& visit) {
  const DecisionNetwork& net = view.base();
  const int T = net.num_actions();
  std::vector<int> live;
  for (int v = 0; v < net.num_nodes(); ++v) {
    if (view.contains(v)) live.push_back(v);
  }
  std::uint64_t states = enumeration_size(T, static_cast<int>(live.size()), opts.max_states);
  if (states > opts.max_states) {
    throw RefusedTooLarge("enumeration of T^n = " + std::to_string(T) + "^" +
                          std::to_string(live.size()) + " assignments exceeds max_states");
  }
  Assignment a(static_cast<std::size_t>(net.num_nodes()), 0);
  for (;;) {
    visit(a, evaluate(view, a));
    int i = static_cast<int>(live.size()) - 1;
    while (i >= 0) {
      int v = live[static_cast<std::size_t>(i)];
      if (++a[static_cast<std::size_t>(v)] < T) break;
      a[static_cast<std::size_t>(v)] = 0;
      --i;
    }
    if (i < 0) break;
  }
}

}  // namespace

ExactSolution solve_brute(const SubnetworkView& view, const BruteOptions& opts) {
  ExactSolution best;
  best.optimum = ExtReal::neg_inf();
  bool found = false;
  enumerate(view, opts, [&](const Assignment& a, ExtReal f) {
    if (f.is_neg_inf()) return;
    if (!found || f > best.optimum) {
      best.optimum = f;
      best.argmax = a;
      best.unique = true;
      found = true;
    } else if (f == best.optimum) {
      best.unique = false;  // earlier hit is lexicographically smaller
    }
  });
  if (!found) throw Infeasible("all assignments evaluate to -inf");
  return best;
}

ExactSolution solve_brute(const DecisionNetwork& net, const BruteOptions& opts) {
  return solve_brute(SubnetworkView(net), opts);
}

std::vector<CavityVector> cavity_exact_all(const DecisionNetwork& net,
                                           const BruteOptions& opts) {
  const int n = net.num_nodes();
  const int T = net.num_actions();
  SubnetworkView view(net);
  // best[v][x] = max F over assignments with a_v = x
  std::vector<std::vector<ExtReal>> best(
      static_cast<std::size_t>(n), std::vector<ExtReal>(static_cast<std::size_t>(T), ExtReal::neg_inf()));
  enumerate(view, opts, [&](const Assignment& a, ExtReal f) {
    for (int v = 0; v < n; ++v) {
      ExtReal& slot = best[static_cast<std::size_t>(v)][static_cast<std::size_t>(a[static_cast<std::size_t>(v)])];
      slot = max(slot, f);
    }
  });
  std::vector<CavityVector> out(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    bool any_finite = false;
    for (int x = 0; x < T; ++x) any_finite |= best[static_cast<std::size_t>(v)][static_cast<std::size_t>(x)].is_finite();
    if (!any_finite) {
      throw Infeasible("cavity at node " + std::to_string(v) +
                       ": every conditional optimum is -inf");
    }
    CavityVector& cv = out[static_cast<std::size_t>(v)];
    cv.values.resize(static_cast<std::size_t>(T));
    for (int x = 0; x < T; ++x) {
      cv.values[static_cast<std::size_t>(x)] =
          best[static_cast<std::size_t>(v)][static_cast<std::size_t>(x)] - best[static_cast<std::size_t>(v)][0];
    }
  }
  return out;
}

CavityVector cavity_exact(const SubnetworkView& view, int node, const BruteOptions& opts) {
  const DecisionNetwork& net = view.base();
  const int T = net.num_actions();
  if (!view.contains(node)) throw InvalidView("node " + std::to_string(node) + " not in view");
  std::vector<ExtReal> best(static_cast<std::size_t>(T), ExtReal::neg_inf());
  enumerate(view, opts, [&](const Assignment& a, ExtReal f) {
    ExtReal& slot = best[static_cast<std::size_t>(a[static_cast<std::size_t>(node)])];
    slot = max(slot, f);
  });
  bool any_finite = false;
  for (int x = 0; x < T; ++x) any_finite |= best[static_cast<std::size_t>(x)].is_finite();
  if (!any_finite) {
    throw Infeasible("cavity at node " + std::to_string(node) +
                     ": every conditional optimum is -inf");
  }
  CavityVector cv;
  cv.values.resize(static_cast<std::size_t>(T));
  for (int x = 0; x < T; ++x) cv.values[static_cast<std::size_t>(x)] = best[static_cast<std::size_t>(x)] - best[0];
  return cv;
}

CavityVector cavity_exact(const DecisionNetwork& net, int node, const BruteOptions& opts) {
  return cavity_exact(SubnetworkView(net), node, opts);
}

bool is_forest(const DecisionNetwork& net) {
  const int n = net.num_nodes();
  std::vector<int> parent(static_cast<std::size_t>(n), -2);  // -2 unvisited
  for (int s = 0; s < n; ++s) {
    if (parent[static_cast<std::size_t>(s)] != -2) continue;
    parent[static_cast<std::size_t>(s)] = -1;
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const Neighbor& nb : net.neighbors(v)) {
        if (nb.node == parent[static_cast<std::size_t>(v)]) continue;
        if (parent[static_cast<std::size_t>(nb.node)] != -2) return false;
        parent[static_cast<std::size_t>(nb.node)] = v;
        stack.push_back(nb.node);
      }
    }
  }
  return true;
}

namespace {

// Saturating optimum-count multiplication (we only care about 1 vs >1).
long sat_mul(long a, long b) { return std::min<long>(a * b, 4); }
long sat_add(long a, long b) { return std::min<long>(a + b, 4); }

}  // namespace

TreeSolution solve_tree(const DecisionNetwork& net) {
  if (!is_forest(net)) throw NotATree("network contains a cycle");
  const int n = net.num_nodes();
  const int T = net.num_actions();

  // Rooted orientation per component, roots at the smallest unvisited id.
  std::vector<int> parent(static_cast<std::size_t>(n), -2);
  std::vector<int> parent_edge(static_cast<std::size_t>(n), -1);
  std::vector<int> order;  // DFS preorder
  std::vector<int> roots;
  order.reserve(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    if (parent[static_cast<std::size_t>(s)] != -2) continue;
    parent[static_cast<std::size_t>(s)] = -1;
    roots.push_back(s);
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (const Neighbor& nb : net.neighbors(v)) {
        if (nb.node == parent[static_cast<std::size_t>(v)]) continue;
        parent[static_cast<std::size_t>(nb.node)] = v;
        parent_edge[static_cast<std::size_t>(nb.node)] = nb.edge;
        stack.push_back(nb.node);
      }
    }
  }

  auto idx = [T](int v, int x) { return static_cast<std::size_t>(v) * T + x; };

  // up[v][x]: optimal value of v's subtree with x_v = x.
  // cnt[v][x]: number of optimal subtree assignments (saturating).
  std::vector<ExtReal> up(static_cast<std::size_t>(n) * T, ExtReal{0.0});
  std::vector<long> cnt(static_cast<std::size_t>(n) * T, 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    for (int x = 0; x < T; ++x) {
      up[idx(v, x)] = ExtReal{net.node_potential(v, x)};
      cnt[idx(v, x)] = 1;
    }
    for (const Neighbor& nb : net.neighbors(v)) {
      if (nb.node == parent[static_cast<std::size_t>(v)]) continue;
      for (int x = 0; x < T; ++x) {
        ExtReal m = ExtReal::neg_inf();
        long c = 0;
        for (int y = 0; y < T; ++y) {
          ExtReal cand = net.edge_phi(nb.edge, v, x, y) + up[idx(nb.node, y)];
          if (cand > m) {
            m = cand;
            c = cnt[idx(nb.node, y)];
          } else if (cand.is_finite() && cand == m) {
            c = sat_add(c, cnt[idx(nb.node, y)]);
          }
        }
        up[idx(v, x)] += m;
        cnt[idx(v, x)] = m.is_finite() ? sat_mul(cnt[idx(v, x)], c) : 1;
      }
    }
  }

  // down[v][x]: optimal value of everything outside v's subtree, given
  // x_v = x, excluding Phi_v(x) itself. Zero at roots.
  std::vector<ExtReal> down(static_cast<std::size_t>(n) * T, ExtReal{0.0});
  for (int v : order) {
    for (const Neighbor& nb : net.neighbors(v)) {
      int c = nb.node;
      if (c == parent[static_cast<std::size_t>(v)]) continue;
      for (int y = 0; y < T; ++y) {
        ExtReal m = ExtReal::neg_inf();
        for (int x = 0; x < T; ++x) {
          ExtReal rest = ExtReal{net.node_potential(v, x)} + down[idx(v, x)];
          for (const Neighbor& nb2 : net.neighbors(v)) {
            if (nb2.node == parent[static_cast<std::size_t>(v)] || nb2.node == c) continue;
            ExtReal sub = ExtReal::neg_inf();
            for (int y2 = 0; y2 < T; ++y2) {
              sub = max(sub, net.edge_phi(nb2.edge, v, x, y2) + up[idx(nb2.node, y2)]);
            }
            rest += sub;
          }
          m = max(m, net.edge_phi(nb.edge, v, x, y) + rest);
        }
        down[idx(c, y)] = m;
      }
    }
  }

  TreeSolution out;
  out.cavities.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    // Conditional optimum with x_v pinned: J_v(x) = up[v][x] + down[v][x].
    std::vector<ExtReal> jv(static_cast<std::size_t>(T));
    bool any_finite = false;
    for (int x = 0; x < T; ++x) {
      jv[static_cast<std::size_t>(x)] = up[idx(v, x)] + down[idx(v, x)];
      any_finite |= jv[static_cast<std::size_t>(x)].is_finite();
    }
    if (!any_finite) {
      throw Infeasible("cavity at node " + std::to_string(v) +
                       ": every conditional optimum is -inf");
    }
    CavityVector& cv = out.cavities[static_cast<std::size_t>(v)];
    cv.values.resize(static_cast<std::size_t>(T));
    for (int x = 0; x < T; ++x) cv.values[static_cast<std::size_t>(x)] = jv[static_cast<std::size_t>(x)] - jv[0];
  }

  // Optimum, argmax (greedy descent) and uniqueness.
  out.solution.optimum = ExtReal{0.0};
  out.solution.argmax.assign(static_cast<std::size_t>(n), 0);
  long optima = 1;
  for (int root : roots) {
    ExtReal m = ExtReal::neg_inf();
    long c = 0;
    for (int x = 0; x < T; ++x) {
      if (up[idx(root, x)] > m) {
        m = up[idx(root, x)];
        c = cnt[idx(root, x)];
      } else if (up[idx(root, x)].is_finite() && up[idx(root, x)] == m) {
        c = sat_add(c, cnt[idx(root, x)]);
      }
    }
    if (m.is_neg_inf()) throw Infeasible("component is infeasible");
    out.solution.optimum += m;
    optima = sat_mul(optima, c);
  }
  out.solution.unique = (optima == 1);
  // Descend choosing the smallest optimal action at each node.
  for (int v : order) {
    int best_x = -1;
    ExtReal best_val = ExtReal::neg_inf();
    for (int x = 0; x < T; ++x) {
      ExtReal val = up[idx(v, x)];
      if (parent[static_cast<std::size_t>(v)] >= 0) {
        int p = parent[static_cast<std::size_t>(v)];
        val += net.edge_phi(parent_edge[static_cast<std::size_t>(v)], v, x,
                            out.solution.argmax[static_cast<std::size_t>(p)]);
      }
      if (val > best_val) {
        best_val = val;
        best_x = x;
      }
    }
    out.solution.argmax[static_cast<std::size_t>(v)] = best_x;
  }
  return out;
}

ExactSolution solve_mwis_bnb(const WeightedGraph& g, const BnbOptions& opts) {
  const int n = g.num_nodes();
  if (n > 64) {
    throw RefusedTooLarge("solve_mwis_bnb supports at most 64 nodes, got " +
                          std::to_string(n));
  }
  for (int v = 0; v < n; ++v) {
    if (g.weight(v) < 0) throw InvalidParams("solve_mwis_bnb requires nonnegative weights");
  }
  std::vector<std::uint64_t> nmask(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    for (int u : g.neighbors(v)) nmask[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
  }
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);

  double best_w = -1.0;
  std::uint64_t best_set = 0;
  bool unique = true;
  std::uint64_t visited = 0;

  // DFS over nodes in id order, exclude branch first, so the first optimum
  // found is the lexicographically smallest assignment; pruning only below
  // the incumbent keeps tie detection sound.
  std::function<void(std::uint64_t, double, std::uint64_t)> dfs =
      [&](std::uint64_t alive, double cur, std::uint64_t chosen) {
        if (++visited > opts.max_search_nodes) {
          throw RefusedTooLarge("solve_mwis_bnb exceeded its search budget");
        }
        // Auto-include isolated live nodes with positive weight: they belong
        // to every optimum, so neither ties nor lex order are affected.
        std::uint64_t rest = alive;
        while (rest) {
          int v = std::countr_zero(rest);
          rest &= rest - 1;
          if ((nmask[static_cast<std::size_t>(v)] & alive) == 0 && g.weight(v) > 0) {
            alive &= ~(std::uint64_t{1} << v);
            chosen |= std::uint64_t{1} << v;
            cur += g.weight(v);
          }
        }
        if (alive == 0) {
          if (cur > best_w) {
            best_w = cur;
            best_set = chosen;
            unique = true;
          } else if (cur == best_w && chosen != best_set) {
            unique = false;
          }
          return;
        }
        double ub = cur;
        std::uint64_t rest2 = alive;
        while (rest2) {
          int v = std::countr_zero(rest2);
          rest2 &= rest2 - 1;
          ub += g.weight(v);
        }
        if (ub < best_w) return;
        int v = std::countr_zero(alive);
        dfs(alive & ~(std::uint64_t{1} << v), cur, chosen);  // exclude v
        dfs(alive & ~(nmask[static_cast<std::size_t>(v)] | (std::uint64_t{1} << v)),
            cur + g.weight(v), chosen | (std::uint64_t{1} << v));
      };
  dfs(all, 0.0, 0);

  ExactSolution out;
  out.optimum = ExtReal{best_w};
  out.argmax.assign(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    if (best_set & (std::uint64_t{1} << v)) out.argmax[static_cast<std::size_t>(v)] = 1;
  }
  out.unique = unique;
  return out;
}

}  // namespace cavitylab
