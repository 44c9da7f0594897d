#pragma once

#include <cstdint>
#include <vector>

#include "cavitylab/mwis.hpp"
#include "cavitylab/network.hpp"

namespace cavitylab {

struct ExactSolution {
  ExtReal optimum;      // J
  Assignment argmax;    // lexicographically smallest on ties
  bool unique = true;
};

struct BruteOptions {
  // Refuse enumerations with more than this many assignments.
  std::uint64_t max_states = std::uint64_t{1} << 26;
};

ExactSolution solve_brute(const DecisionNetwork& net, const BruteOptions& opts = {});
ExactSolution solve_brute(const SubnetworkView& view, const BruteOptions& opts = {});

// B(x) = J_{G,v}(x) - J_{G,v}(0) by full enumeration.
CavityVector cavity_exact(const DecisionNetwork& net, int v, const BruteOptions& opts = {});
CavityVector cavity_exact(const SubnetworkView& view, int v, const BruteOptions& opts = {});
// All nodes in one sweep (same enumeration cost as a single node).
std::vector<CavityVector> cavity_exact_all(const DecisionNetwork& net,
                                           const BruteOptions& opts = {});

struct TreeSolution {
  ExactSolution solution;
  std::vector<CavityVector> cavities;  // per node, w.r.t. the full network
};

// Exact optimum and per-node cavities on a forest in O(n * Delta * T^2).
TreeSolution solve_tree(const DecisionNetwork& net);

bool is_forest(const DecisionNetwork& net);

// Exact MWIS on a weighted graph (n <= 64) by branch and bound with a
// weight-sum upper bound. Ties: lexicographically smallest 0/1 assignment.
ExactSolution solve_mwis_bnb(const WeightedGraph& g, const BnbOptions& opts = {});

}  // namespace cavitylab
