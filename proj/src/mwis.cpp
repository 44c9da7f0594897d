#include "cavitylab/mwis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "cavitylab/exact.hpp"
#include "cavitylab/parallel.hpp"
#include "cavitylab/rng.hpp"

namespace cavitylab {

WeightedGraph::WeightedGraph(int n, std::vector<std::pair<int, int>> edges,
                             std::vector<double> weights)
    : n_(n), w_(std::move(weights)), edges_(std::move(edges)) {
  if (static_cast<int>(w_.size()) != n_) {
    throw InvalidParams("weights: expected " + std::to_string(n_) + " entries, got " +
                        std::to_string(w_.size()));
  }
  for (int v = 0; v < n_; ++v) {
    if (!(w_[static_cast<std::size_t>(v)] >= 0) || !std::isfinite(w_[static_cast<std::size_t>(v)])) {
      throw InvalidParams("weights: node " + std::to_string(v) + " must be finite and >= 0");
    }
  }
  adj_.assign(static_cast<std::size_t>(n_), {});
  std::set<std::pair<int, int>> seen;
  for (auto& [u, v] : edges_) {
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n_ || u == v) {
      throw InvalidParams("edge (" + std::to_string(u) + "," + std::to_string(v) +
                          ") out of range or self-loop");
    }
    if (!seen.insert({u, v}).second) {
      throw InvalidParams("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

int WeightedGraph::max_degree() const {
  int d = 0;
  for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

WeightedGraph WeightedGraph::without_node(int v) const {
  std::vector<char> keep(static_cast<std::size_t>(n_), 1);
  keep[static_cast<std::size_t>(v)] = 0;
  return induced(keep);
}

WeightedGraph WeightedGraph::induced(const std::vector<char>& keep) const {
  std::vector<int> remap(static_cast<std::size_t>(n_), -1);
  std::vector<double> w;
  int m = 0;
  for (int v = 0; v < n_; ++v) {
    if (keep[static_cast<std::size_t>(v)]) {
      remap[static_cast<std::size_t>(v)] = m++;
      w.push_back(w_[static_cast<std::size_t>(v)]);
    }
  }
  std::vector<std::pair<int, int>> es;
  for (const auto& [u, v] : edges_) {
    if (keep[static_cast<std::size_t>(u)] && keep[static_cast<std::size_t>(v)]) {
      es.emplace_back(remap[static_cast<std::size_t>(u)], remap[static_cast<std::size_t>(v)]);
    }
  }
  return WeightedGraph(m, std::move(es), std::move(w));
}

WeightedGraph WeightedGraph::with_weights(std::vector<double> w) const {
  return WeightedGraph(n_, edges_, std::move(w));
}

double c_exact(const WeightedGraph& g, int i, const BnbOptions& opts) {
  if (i < 0 || i >= g.num_nodes()) throw InvalidParams("c_exact: node out of range");
  double j_full = solve_mwis_bnb(g, opts).optimum.v;
  double j_without = g.num_nodes() == 1 ? 0.0 : solve_mwis_bnb(g.without_node(i), opts).optimum.v;
  return j_full - j_without;
}

namespace {

// C^{+/-}(i, r) on the subgraph with `removed` nodes deleted. The removal
// flags are shared across the recursion and unwound through an explicit undo
// stack, so no per-call copies are made.
double c_bound_rec(const WeightedGraph& g, std::vector<char>& removed,
                   std::vector<int>& undo, int i, int r, CBoundSign sign) {
  if (r == 0) return sign == CBoundSign::Minus ? 0.0 : g.weight(i);
  removed[static_cast<std::size_t>(i)] = 1;
  double acc = g.weight(i);
  const std::size_t undo_start = undo.size();
  for (int il : g.neighbors(i)) {
    if (removed[static_cast<std::size_t>(il)]) continue;
    if (acc <= 0.0) break;  // every C term is >= 0, so max(0, acc) is settled
    acc -= c_bound_rec(g, removed, undo, il, r - 1, sign);
    removed[static_cast<std::size_t>(il)] = 1;
    undo.push_back(il);
  }
  for (std::size_t k = undo_start; k < undo.size(); ++k) {
    removed[static_cast<std::size_t>(undo[k])] = 0;
  }
  undo.resize(undo_start);
  removed[static_cast<std::size_t>(i)] = 0;
  return std::max(0.0, acc);
}

}  // namespace

double c_bound(const WeightedGraph& g, int i, int r, CBoundSign sign) {
  std::vector<char> removed(static_cast<std::size_t>(g.num_nodes()), 0);
  return c_bound_masked(g, removed, i, r, sign);
}

double c_bound_masked(const WeightedGraph& g, const std::vector<char>& removed, int i,
                      int r, CBoundSign sign) {
  if (i < 0 || i >= g.num_nodes()) throw InvalidParams("c_bound: node out of range");
  if (r < 0) throw InvalidDepth("c_bound: depth must be >= 0");
  if (removed[static_cast<std::size_t>(i)]) throw InvalidParams("c_bound: node is removed");
  std::vector<char> scratch = removed;
  std::vector<int> undo;
  undo.reserve(64);
  return c_bound_rec(g, scratch, undo, i, r, sign);
}

namespace {

bool is_independent(const WeightedGraph& g, const std::vector<char>& in_set) {
  for (const auto& [u, v] : g.edges()) {
    if (in_set[static_cast<std::size_t>(u)] && in_set[static_cast<std::size_t>(v)]) return false;
  }
  return true;
}

}  // namespace

MwisRun run_two_phase(const WeightedGraph& g, double epsilon, int r, std::uint64_t seed,
                      int threads) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidParams("epsilon must lie in (0,1), got " + std::to_string(epsilon));
  }
  if (r < 0 || r % 2 != 0) {
    throw InvalidDepth("two-phase depth r must be even and >= 0, got " + std::to_string(r));
  }
  const int n = g.num_nodes();
  const double p_delete = epsilon * epsilon / 16.0;

  MwisRun run;
  run.epsilon = epsilon;
  run.depth = r;
  run.seed = seed;

  std::vector<char> removed(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    Rng rng{seed, static_cast<std::uint64_t>(v)};
    removed[static_cast<std::size_t>(v)] = rng.bernoulli(p_delete) ? 1 : 0;
    if (!removed[static_cast<std::size_t>(v)]) run.kept_nodes.push_back(v);
  }

  std::vector<char> chosen(static_cast<std::size_t>(n), 0);
  parallel_for(static_cast<long>(run.kept_nodes.size()), threads, [&](long k) {
    int i = run.kept_nodes[static_cast<std::size_t>(k)];
    std::vector<char> scratch = removed;
    std::vector<int> undo;
    undo.reserve(64);
    double c = c_bound_rec(g, scratch, undo, i, r, CBoundSign::Minus);
    if (c > 0.0) chosen[static_cast<std::size_t>(i)] = 1;
  });

  if (!is_independent(g, chosen)) {
    throw Error("InternalError", "two-phase output failed the independence scan");
  }
  for (int v = 0; v < n; ++v) {
    if (chosen[static_cast<std::size_t>(v)]) {
      run.chosen_set.push_back(v);
      run.weight += g.weight(v);
    }
  }
  return run;
}

std::vector<int> greedy_mis(const WeightedGraph& g) {
  const int n = g.num_nodes();
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if (!alive[static_cast<std::size_t>(v)]) continue;
    out.push_back(v);
    alive[static_cast<std::size_t>(v)] = 0;
    for (int u : g.neighbors(v)) alive[static_cast<std::size_t>(u)] = 0;
  }
  if (g.max_degree() <= 3 && 4 * static_cast<int>(out.size()) < n) {
    throw Error("InternalError", "greedy MIS smaller than n/4 on a degree-<=3 graph");
  }
  return out;
}

std::vector<double> sample_weights(int n, const WeightDist& dist, std::uint64_t seed) {
  if (n < 0) throw InvalidParams("sample_weights: n must be >= 0");
  if (dist.kind == WeightDist::Kind::Mixture && (dist.rho <= 1.0 || dist.delta < 1)) {
    throw InvalidParams("mixture weights require rho > 1 and Delta >= 1");
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    Rng rng{seed, 0x57ull, static_cast<std::uint64_t>(v)};
    if (dist.kind == WeightDist::Kind::Exp1) {
      w[static_cast<std::size_t>(v)] = rng.exponential(1.0);
    } else {
      int j = 1 + rng.below(dist.delta);
      w[static_cast<std::size_t>(v)] = rng.exponential(std::pow(dist.rho, j));
    }
  }
  return w;
}

MixtureCheck mixture_matrix_check(double rho, int delta) {
  if (rho <= 1.0) throw InvalidParams("mixture_matrix_check: rho must be > 1");
  if (delta < 1) throw InvalidParams("mixture_matrix_check: Delta must be >= 1");
  const double eps = 1.0 / rho;
  const double se = std::sqrt(eps);
  MixtureCheck out;
  out.theta = 0.5 + 2.0 * se / (1.0 - se);

  // M[j][k]: 1/2 on the diagonal, 1 below, eps^(k-j) above (1-based j,k).
  // Test vector x_k = eps^(k/2); the check is (M^T x)_j <= theta * x_j.
  bool componentwise = true;
  for (int j = 1; j <= delta; ++j) {
    double acc = 0.0;
    for (int k = 1; k <= delta; ++k) {
      double m_kj;
      if (k == j) m_kj = 0.5;
      else if (k > j) m_kj = 1.0;                       // below diagonal of M
      else m_kj = std::pow(eps, j - k);                 // above diagonal of M
      acc += m_kj * std::pow(eps, 0.5 * k);
    }
    if (!(acc <= out.theta * std::pow(eps, 0.5 * j))) componentwise = false;
  }
  out.holds = componentwise && out.theta < 1.0;
  return out;
}

int suggested_depth(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidParams("suggested_depth: epsilon must lie in (0,1)");
  }
  double raw = 32.0 * std::log(3.0 / epsilon) / (epsilon * epsilon);
  int r = static_cast<int>(std::ceil(raw));
  return r % 2 == 0 ? r : r + 1;
}

}  // namespace cavitylab
