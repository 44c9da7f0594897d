#pragma once

#include <cstdint>
#include <vector>

#include "cavitylab/errors.hpp"

namespace cavitylab {

// Simple undirected graph with nonnegative node weights.
class WeightedGraph {
 public:
  WeightedGraph(int n, std::vector<std::pair<int, int>> edges, std::vector<double> weights);

  int num_nodes() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  double weight(int v) const { return w_[static_cast<std::size_t>(v)]; }
  const std::vector<double>& weights() const { return w_; }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
  int max_degree() const;

  WeightedGraph without_node(int v) const;
  WeightedGraph induced(const std::vector<char>& keep) const;  // keeps original ids out of scope; compacts
  WeightedGraph with_weights(std::vector<double> w) const;

 private:
  int n_ = 0;
  std::vector<double> w_;
  std::vector<std::pair<int, int>> edges_;  // u < v
  std::vector<std::vector<int>> adj_;       // sorted
};

enum class CBoundSign { Minus, Plus };

struct BnbOptions {
  std::uint64_t max_search_nodes = 200'000'000;
};

// Exact cavity C(i) = J(G) - J(G \ {i}) >= 0, via branch and bound.
double c_exact(const WeightedGraph& g, int i, const BnbOptions& opts = {});

// Depth-r certified bound on C(i); Minus starts from 0 at depth 0, Plus from
// W_i. For even r: Minus <= C <= Plus; for odd r the inequalities reverse.
double c_bound(const WeightedGraph& g, int i, int r, CBoundSign sign);
// Same, on the subgraph with `removed[v] != 0` nodes deleted.
double c_bound_masked(const WeightedGraph& g, const std::vector<char>& removed, int i,
                      int r, CBoundSign sign);

struct MwisRun {
  double epsilon = 0.0;
  int depth = 0;
  std::uint64_t seed = 0;
  std::vector<int> kept_nodes;  // after the deletion phase
  std::vector<int> chosen_set;  // independent in the original graph
  double weight = 0.0;
};

// Phase 1 deletes each node independently with probability eps^2/16 (RNG
// keyed by (seed, node id)); phase 2 keeps {i : C^-(i, r) > 0} on the
// surviving subgraph. The returned set is verified independent by edge scan.
MwisRun run_two_phase(const WeightedGraph& g, double epsilon, int r, std::uint64_t seed,
                      int threads = 0);

// Maximal independent set by repeatedly taking the smallest live node.
std::vector<int> greedy_mis(const WeightedGraph& g);

struct WeightDist {
  enum class Kind { Exp1, Mixture };
  Kind kind = Kind::Exp1;
  double rho = 0.0;  // Mixture: rate alpha_j = rho^j, j uniform in {1..Delta}
  int delta = 0;

  static WeightDist exp1() { return {}; }
  static WeightDist mixture(double rho, int delta) {
    return {Kind::Mixture, rho, delta};
  }
};

std::vector<double> sample_weights(int n, const WeightDist& dist, std::uint64_t seed);

struct MixtureCheck {
  double theta = 0.0;  // 1/2 + 2*sqrt(1/rho)/(1 - sqrt(1/rho))
  bool holds = false;  // theta < 1 and componentwise M'x <= theta*x
};

// Builds the Delta x Delta dominating matrix (diagonal 1/2, below-diagonal 1,
// above-diagonal (1/rho)^(k-j)) and verifies contraction on x_k = rho^(-k/2).
MixtureCheck mixture_matrix_check(double rho, int delta);

// Heuristic even depth ceil(32*ln(3/eps)/eps^2) for the two-phase algorithm.
int suggested_depth(double epsilon);

}  // namespace cavitylab
