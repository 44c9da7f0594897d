#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cavitylab/network.hpp"

namespace cavitylab {

// Value returned at recursion depth 0. Every kind returns 0 for the reference
// action x = 0, so depth-0 vectors satisfy B(0) = 0 like every cavity vector.
struct BoundaryCondition {
  enum class Kind { Zero, PotentialGap, Constant, SeededUniform };

  Kind kind = Kind::Zero;
  double constant = 0.0;
  double lo = 0.0, hi = 0.0;
  std::uint64_t seed = 0;

  static BoundaryCondition zero() { return {}; }
  static BoundaryCondition potential_gap() { return {Kind::PotentialGap}; }
  static BoundaryCondition constant_value(double c) { return {Kind::Constant, c}; }
  static BoundaryCondition seeded_uniform(double lo, double hi, std::uint64_t seed) {
    return {Kind::SeededUniform, 0.0, lo, hi, seed};
  }

  ExtReal value(const SubnetworkView& view, int node, int x) const;
  std::string describe() const;
};

struct CeOptions {
  std::uint64_t max_calls = 100'000'000;  // budget guard; exceeded -> RefusedTooLarge
};

struct CeStats {
  std::uint64_t calls = 0;
};

// Partial cavity function on edge `e` oriented from `from`:
//   mu(x, B) = max_y(Phi(x,y) + B(y)) - max_y(Phi(0,y) + B(y)).
// The reference row maximum being -inf makes the subtraction undefined.
ExtReal mu(const DecisionNetwork& net, int edge, int from, int x,
           std::span<const ExtReal> cavity);

// Binary-case edge statistics (finite tables only):
//   phi1 = Phi(1,0)-Phi(1,1), phi2 = Phi(0,0)-Phi(0,1), phi3 = Phi(1,1)-Phi(0,1),
//   x = phi1+phi2, y = phi2-phi1.
struct EdgeStats {
  double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0, x = 0.0, y = 0.0;
};
EdgeStats edge_stats(const DecisionNetwork& net, int edge, int from);
EdgeStats edge_stats_from_table(const double table[4]);  // {00,01,10,11}

// mu(1, (0, z)) for a finite binary table: phi3 + max(phi1, z) - max(phi2, z).
double mu_binary(const EdgeStats& s, double z);

// The modified network G(u, j, x): u removed, the first j-1 live neighbors
// of u shifted by Phi_{u,.}(x, .), the ones after the j-th by Phi_{u,.}(0, .),
// and the j-th untouched. j is 1-based; neighbors in ascending id order.
SubnetworkView modified_network(const SubnetworkView& view, int u, int j, int x);

// Depth-bounded cavity expansion CE[view, u, r, x] with boundary condition bc.
ExtReal ce(const SubnetworkView& view, int u, int r, int x,
           const BoundaryCondition& bc = {}, const CeOptions& opts = {},
           CeStats* stats = nullptr);

// Full expansion: recursion runs until subnetworks have no neighbors, which
// happens because every call strictly shrinks the node set. Equals the exact
// cavity for every node and action.
ExtReal ce_full(const SubnetworkView& view, int u, int x, const CeOptions& opts = {},
                CeStats* stats = nullptr);

CavityVector ce_vector(const SubnetworkView& view, int u, int r,
                       const BoundaryCondition& bc = {}, const CeOptions& opts = {},
                       CeStats* stats = nullptr);
CavityVector ce_full_vector(const SubnetworkView& view, int u, const CeOptions& opts = {},
                            CeStats* stats = nullptr);

struct CeResult {
  int node = 0;
  CavityVector estimates;  // estimates(0) = 0
  int depth = 0;
  int decision = 0;        // argmax, ties toward the smallest action
};

struct CeDecideOutput {
  std::vector<CeResult> results;            // one per node
  std::vector<std::string> node_errors;     // empty string when the node succeeded
  Assignment decisions;                     // errored nodes fall back to action 0
  ExtReal total;                            // evaluate(net, decisions); may be -inf
  std::uint64_t total_calls = 0;
};

// Independent root computation per node, parallel across nodes.
CeDecideOutput ce_decide_all(const DecisionNetwork& net, int r,
                             const BoundaryCondition& bc = {}, const CeOptions& opts = {},
                             int threads = 0);

}  // namespace cavitylab
