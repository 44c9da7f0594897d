#include "cavitylab/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "cavitylab/errors.hpp"

namespace cavitylab {

DecisionNetwork::DecisionNetwork(int num_actions,
                                 std::vector<std::vector<double>> node_potentials,
                                 std::vector<EdgeSpec> edges)
    : T_(num_actions), n_(static_cast<int>(node_potentials.size())), edges_(std::move(edges)) {
  if (T_ < 2) throw InvalidParams("num_actions must be >= 2, got " + std::to_string(T_));
  node_pot_.reserve(static_cast<std::size_t>(n_) * T_);
  for (int v = 0; v < n_; ++v) {
    const auto& pot = node_potentials[static_cast<std::size_t>(v)];
    if (static_cast<int>(pot.size()) != T_) {
      throw InvalidParams("node " + std::to_string(v) + ": potential has " +
                          std::to_string(pot.size()) + " entries, expected " +
                          std::to_string(T_));
    }
    for (double p : pot) {
      if (!std::isfinite(p)) {
        throw InvalidParams("node " + std::to_string(v) +
                            ": node potentials must be finite");
      }
      node_pot_.push_back(p);
    }
  }
  adj_.assign(static_cast<std::size_t>(n_), {});
  std::set<std::pair<int, int>> seen;
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    EdgeSpec& ed = edges_[static_cast<std::size_t>(e)];
    if (ed.u < 0 || ed.v >= n_ || ed.u >= ed.v) {
      throw InvalidParams("edge " + std::to_string(e) + ": requires 0 <= u < v < " +
                          std::to_string(n_));
    }
    if (!seen.insert({ed.u, ed.v}).second) {
      throw InvalidParams("edge " + std::to_string(e) + ": duplicate edge (" +
                          std::to_string(ed.u) + "," + std::to_string(ed.v) + ")");
    }
    if (static_cast<int>(ed.table.size()) != T_ * T_) {
      throw InvalidParams("edge " + std::to_string(e) + ": table must be " +
                          std::to_string(T_) + "x" + std::to_string(T_));
    }
    for (ExtReal t : ed.table) {
      if (std::isnan(t.v) || (std::isinf(t.v) && t.v > 0)) {
        throw InvalidParams("edge " + std::to_string(e) +
                            ": table entries must be finite or -inf");
      }
    }
    adj_[static_cast<std::size_t>(ed.u)].push_back({ed.v, e});
    adj_[static_cast<std::size_t>(ed.v)].push_back({ed.u, e});
  }
  for (auto& nbrs : adj_) {
    std::sort(nbrs.begin(), nbrs.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
}

bool SubnetworkView::is_removed(int v) const {
  return std::binary_search(removed_.begin(), removed_.end(), v);
}

void SubnetworkView::live_neighbors(int v, std::vector<Neighbor>& out) const {
  out.clear();
  if (v < 0 || v >= base_->num_nodes() || is_removed(v)) {
    throw InvalidView("node " + std::to_string(v) + " is not in the view");
  }
  for (const Neighbor& nb : base_->neighbors(v)) {
    if (!is_removed(nb.node)) out.push_back(nb);
  }
}

std::vector<Neighbor> SubnetworkView::live_neighbors(int v) const {
  std::vector<Neighbor> out;
  live_neighbors(v, out);
  return out;
}

int SubnetworkView::live_degree(int v) const {
  if (v < 0 || v >= base_->num_nodes() || is_removed(v)) {
    throw InvalidView("node " + std::to_string(v) + " is not in the view");
  }
  int d = 0;
  for (const Neighbor& nb : base_->neighbors(v)) {
    if (!is_removed(nb.node)) ++d;
  }
  return d;
}

ExtReal SubnetworkView::effective_potential(int v, int x) const {
  if (v < 0 || v >= base_->num_nodes() || is_removed(v)) {
    throw InvalidView("node " + std::to_string(v) + " is not in the view");
  }
  ExtReal val{base_->node_potential(v, x)};
  auto it = std::lower_bound(delta_nodes_.begin(), delta_nodes_.end(), v);
  if (it != delta_nodes_.end() && *it == v) {
    std::size_t row = static_cast<std::size_t>(it - delta_nodes_.begin());
    val += delta_vals_[row * base_->num_actions() + x];
  }
  return val;
}

ExtReal SubnetworkView::potential_gap(int v, int x) const {
  return effective_potential(v, x) - effective_potential(v, 0);
}

SubnetworkView SubnetworkView::remove(int v) const {
  return derive(v, {});
}

SubnetworkView SubnetworkView::add_delta(int v, std::span<const ExtReal> delta) const {
  if (static_cast<int>(delta.size()) != base_->num_actions()) {
    throw InvalidParams("delta vector must have " +
                        std::to_string(base_->num_actions()) + " entries");
  }
  std::pair<int, std::vector<ExtReal>> one{v, std::vector<ExtReal>(delta.begin(), delta.end())};
  return derive(-1, std::span<const std::pair<int, std::vector<ExtReal>>>(&one, 1));
}

SubnetworkView SubnetworkView::derive(
    int removed_node,
    std::span<const std::pair<int, std::vector<ExtReal>>> deltas) const {
  const int T = base_->num_actions();
  SubnetworkView out(*base_);

  out.removed_ = removed_;
  if (removed_node >= 0) {
    if (removed_node >= base_->num_nodes() || is_removed(removed_node)) {
      throw InvalidView("cannot remove node " + std::to_string(removed_node) +
                        ": not present in the view");
    }
    auto it = std::lower_bound(out.removed_.begin(), out.removed_.end(), removed_node);
    out.removed_.insert(it, removed_node);
  }

  out.delta_nodes_ = delta_nodes_;
  out.delta_vals_ = delta_vals_;
  for (const auto& [node, delta] : deltas) {
    if (node < 0 || node >= base_->num_nodes() || out.is_removed(node)) {
      throw InvalidView("cannot add delta on node " + std::to_string(node) +
                        ": not present in the view");
    }
    auto it = std::lower_bound(out.delta_nodes_.begin(), out.delta_nodes_.end(), node);
    std::size_t row = static_cast<std::size_t>(it - out.delta_nodes_.begin());
    if (it != out.delta_nodes_.end() && *it == node) {
      for (int x = 0; x < T; ++x) out.delta_vals_[row * T + x] += delta[static_cast<std::size_t>(x)];
    } else {
      out.delta_nodes_.insert(it, node);
      out.delta_vals_.insert(out.delta_vals_.begin() + static_cast<std::ptrdiff_t>(row * T),
                             delta.begin(), delta.end());
    }
  }
  return out;
}

ExtReal evaluate(const DecisionNetwork& net, const Assignment& a) {
  if (static_cast<int>(a.size()) != net.num_nodes()) {
    throw InvalidAssignment("assignment has " + std::to_string(a.size()) +
                            " entries, network has " + std::to_string(net.num_nodes()));
  }
  ExtReal total{0.0};
  for (int v = 0; v < net.num_nodes(); ++v) {
    int x = a[static_cast<std::size_t>(v)];
    if (x < 0 || x >= net.num_actions()) {
      throw InvalidAssignment("action " + std::to_string(x) + " at node " +
                              std::to_string(v) + " out of range");
    }
    total += ExtReal{net.node_potential(v, x)};
  }
  for (int e = 0; e < net.num_edges(); ++e) {
    const EdgeSpec& ed = net.edge(e);
    total += net.edge_phi(e, ed.u, a[static_cast<std::size_t>(ed.u)],
                          a[static_cast<std::size_t>(ed.v)]);
  }
  return total;
}

ExtReal evaluate(const SubnetworkView& view, const Assignment& a) {
  const DecisionNetwork& net = view.base();
  if (static_cast<int>(a.size()) != net.num_nodes()) {
    throw InvalidAssignment("assignment has " + std::to_string(a.size()) +
                            " entries, network has " + std::to_string(net.num_nodes()));
  }
  ExtReal total{0.0};
  for (int v = 0; v < net.num_nodes(); ++v) {
    if (!view.contains(v)) continue;
    int x = a[static_cast<std::size_t>(v)];
    if (x < 0 || x >= net.num_actions()) {
      throw InvalidAssignment("action " + std::to_string(x) + " at node " +
                              std::to_string(v) + " out of range");
    }
    total += view.effective_potential(v, x);
  }
  for (int e = 0; e < net.num_edges(); ++e) {
    const EdgeSpec& ed = net.edge(e);
    if (!view.contains(ed.u) || !view.contains(ed.v)) continue;
    total += net.edge_phi(e, ed.u, a[static_cast<std::size_t>(ed.u)],
                          a[static_cast<std::size_t>(ed.v)]);
  }
  return total;
}

}  // namespace cavitylab
