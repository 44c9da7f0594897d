#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cavitylab/ext_real.hpp"

namespace cavitylab {

using Assignment = std::vector<int>;

// Cavity function of one node: values[x] = B(x), values[0] = 0, entries in
// the extended reals.
struct CavityVector {
  std::vector<ExtReal> values;

  ExtReal operator()(int x) const { return values[static_cast<std::size_t>(x)]; }
  int num_actions() const { return static_cast<int>(values.size()); }
};

struct EdgeSpec {
  int u = 0;
  int v = 0;                     // requires u < v
  std::vector<ExtReal> table;    // row-major T*T, row = action of u
};

struct Neighbor {
  int node = 0;
  int edge = 0;  // index into edges()
};

// Undirected decision network over actions {0, .., T-1}. Node potentials are
// finite; only edge tables may contain -inf (hard constraints). One table is
// stored per edge (u < v); the (v,u) direction reads the transpose.
class DecisionNetwork {
 public:
  DecisionNetwork(int num_actions,
                  std::vector<std::vector<double>> node_potentials,
                  std::vector<EdgeSpec> edges);

  int num_actions() const { return T_; }
  int num_nodes() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  double node_potential(int v, int x) const {
    return node_pot_[static_cast<std::size_t>(v) * T_ + x];
  }
  const EdgeSpec& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }

  // Phi_{from,other}(x_from, x_other) on edge e, oriented so that `from` is
  // the row argument.
  ExtReal edge_phi(int e, int from, int x_from, int x_other) const {
    const EdgeSpec& ed = edges_[static_cast<std::size_t>(e)];
    return from == ed.u ? ed.table[static_cast<std::size_t>(x_from) * T_ + x_other]
                        : ed.table[static_cast<std::size_t>(x_other) * T_ + x_from];
  }

  // Neighbors of v in ascending node-id order.
  const std::vector<Neighbor>& neighbors(int v) const {
    return adj_[static_cast<std::size_t>(v)];
  }
  int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

 private:
  int T_ = 2;
  int n_ = 0;
  std::vector<double> node_pot_;  // n*T, finite
  std::vector<EdgeSpec> edges_;
  std::vector<std::vector<Neighbor>> adj_;
};

// Base network plus a removed-node set and additive potential overlays.
// Views are immutable values: deriving a new view never affects the source.
class SubnetworkView {
 public:
  explicit SubnetworkView(const DecisionNetwork& base) : base_(&base) {}

  const DecisionNetwork& base() const { return *base_; }
  int num_actions() const { return base_->num_actions(); }

  bool is_removed(int v) const;
  bool contains(int v) const { return !is_removed(v); }
  int num_live_nodes() const {
    return base_->num_nodes() - static_cast<int>(removed_.size());
  }

  // Live neighbors of v, ascending id. v itself must be live.
  void live_neighbors(int v, std::vector<Neighbor>& out) const;
  std::vector<Neighbor> live_neighbors(int v) const;
  int live_degree(int v) const;

  // Base potential plus accumulated deltas; -inf possible through deltas.
  ExtReal effective_potential(int v, int x) const;
  // effective_potential(v, x) - effective_potential(v, 0).
  ExtReal potential_gap(int v, int x) const;

  // Derivation primitives (persistent; return new values).
  SubnetworkView remove(int v) const;
  SubnetworkView add_delta(int v, std::span<const ExtReal> delta) const;
  // One node removed plus a batch of deltas, applied in a single pass.
  SubnetworkView derive(int removed_node,
                        std::span<const std::pair<int, std::vector<ExtReal>>> deltas) const;

 private:
  const DecisionNetwork* base_;
  std::vector<int> removed_;      // sorted ids
  std::vector<int> delta_nodes_;  // sorted ids
  std::vector<ExtReal> delta_vals_;  // delta_nodes_.size() * T, parallel rows
};

inline SubnetworkView view_remove(const SubnetworkView& view, int node) {
  return view.remove(node);
}
inline SubnetworkView view_add_delta(const SubnetworkView& view, int node,
                                     std::span<const ExtReal> delta) {
  return view.add_delta(node, delta);
}

// F(a) = sum of live edge interactions + live effective node potentials.
// -inf iff a hard constraint is violated.
ExtReal evaluate(const DecisionNetwork& net, const Assignment& a);
ExtReal evaluate(const SubnetworkView& view, const Assignment& a);

}  // namespace cavitylab
