#include "cavitylab/cavity.hpp"

#include <algorithm>
#include <string>

#include "cavitylab/errors.hpp"
#include "cavitylab/parallel.hpp"
#include "cavitylab/rng.hpp"

namespace cavitylab {

ExtReal BoundaryCondition::value(const SubnetworkView& view, int node, int x) const {
  if (x == 0) return ExtReal{0.0};
  switch (kind) {
    case Kind::Zero:
      return ExtReal{0.0};
    case Kind::PotentialGap: {
      ExtReal ref = view.effective_potential(node, 0);
      if (ref.is_neg_inf()) {
        throw InfeasibleReference("boundary potential gap at node " + std::to_string(node) +
                                  ": reference action 0 is infeasible");
      }
      return view.effective_potential(node, x) - ref;
    }
    case Kind::Constant:
      return ExtReal{constant};
    case Kind::SeededUniform: {
      Rng rng{seed, static_cast<std::uint64_t>(node), static_cast<std::uint64_t>(x)};
      return ExtReal{rng.uniform(lo, hi)};
    }
  }
  return ExtReal{0.0};
}

std::string BoundaryCondition::describe() const {
  switch (kind) {
    case Kind::Zero: return "zero";
    case Kind::PotentialGap: return "potential-gap";
    case Kind::Constant: return "const:" + std::to_string(constant);
    case Kind::SeededUniform:
      return "seeded:" + std::to_string(lo) + "," + std::to_string(hi) + "," +
             std::to_string(seed);
  }
  return "?";
}

namespace {

ExtReal mu_rows(const DecisionNetwork& net, int edge, int from, int x,
                std::span<const ExtReal> cavity) {
  const int T = net.num_actions();
  ExtReal row_x = ExtReal::neg_inf();
  ExtReal row_0 = ExtReal::neg_inf();
  for (int y = 0; y < T; ++y) {
    row_x = max(row_x, net.edge_phi(edge, from, x, y) + cavity[static_cast<std::size_t>(y)]);
    row_0 = max(row_0, net.edge_phi(edge, from, 0, y) + cavity[static_cast<std::size_t>(y)]);
  }
  if (row_0.is_neg_inf()) {
    throw InfeasibleReference("mu: reference row (action 0) has maximum -inf on edge " +
                              std::to_string(edge));
  }
  return row_x - row_0;
}

struct CeContext {
  const BoundaryCondition* bc;
  CeOptions opts;
  std::uint64_t calls = 0;
};

// Builds G(u, j, x) from an already-enumerated live neighbor list.
SubnetworkView derive_modified(const SubnetworkView& view, int u,
                               std::span<const Neighbor> nbrs, int j, int x) {
  const DecisionNetwork& net = view.base();
  const int T = net.num_actions();
  std::vector<std::pair<int, std::vector<ExtReal>>> deltas;
  deltas.reserve(nbrs.size() > 0 ? nbrs.size() - 1 : 0);
  for (int i = 0; i < static_cast<int>(nbrs.size()); ++i) {
    if (i + 1 == j) continue;  // the j-th neighbor keeps its potential
    int row = (i + 1 < j) ? x : 0;
    std::vector<ExtReal> d(static_cast<std::size_t>(T));
    for (int y = 0; y < T; ++y) d[static_cast<std::size_t>(y)] = net.edge_phi(nbrs[static_cast<std::size_t>(i)].edge, u, row, y);
    deltas.emplace_back(nbrs[static_cast<std::size_t>(i)].node, std::move(d));
  }
  return view.derive(u, deltas);
}

// r < 0 means "expand fully": no depth decrement, recursion bottoms out at
// neighborless nodes because every call removes its root from the view.
ExtReal ce_impl(const SubnetworkView& view, int u, int r, int x, CeContext& ctx) {
  if (++ctx.calls > ctx.opts.max_calls) {
    throw RefusedTooLarge("ce: exceeded the recursive call budget of " +
                          std::to_string(ctx.opts.max_calls));
  }
  if (r == 0) return ctx.bc->value(view, u, x);

  std::vector<Neighbor> nbrs;
  view.live_neighbors(u, nbrs);

  ExtReal ref = view.effective_potential(u, 0);
  if (ref.is_neg_inf()) {
    throw InfeasibleReference("ce: reference action 0 infeasible at node " +
                              std::to_string(u));
  }
  ExtReal acc = view.effective_potential(u, x) - ref;
  if (nbrs.empty()) return acc;

  const int T = view.num_actions();
  const int next_r = r > 0 ? r - 1 : r;
  std::vector<ExtReal> cavity(static_cast<std::size_t>(T));
  for (int j = 1; j <= static_cast<int>(nbrs.size()); ++j) {
    SubnetworkView sub = derive_modified(view, u, nbrs, j, x);
    int vj = nbrs[static_cast<std::size_t>(j - 1)].node;
    for (int y = 0; y < T; ++y) cavity[static_cast<std::size_t>(y)] = ce_impl(sub, vj, next_r, y, ctx);
    acc += mu_rows(view.base(), nbrs[static_cast<std::size_t>(j - 1)].edge, u, x, cavity);
  }
  return acc;
}

}  // namespace

ExtReal mu(const DecisionNetwork& net, int edge, int from, int x,
           std::span<const ExtReal> cavity) {
  if (edge < 0 || edge >= net.num_edges()) {
    throw InvalidParams("mu: edge index " + std::to_string(edge) + " out of range");
  }
  const EdgeSpec& e = net.edge(edge);
  if (from != e.u && from != e.v) {
    throw InvalidParams("mu: node " + std::to_string(from) + " is not an endpoint of edge " +
                        std::to_string(edge));
  }
  if (static_cast<int>(cavity.size()) != net.num_actions() || cavity[0] != ExtReal{0.0}) {
    throw InvalidParams("mu: cavity vector must have T entries with B(0) = 0");
  }
  return mu_rows(net, edge, from, x, cavity);
}

EdgeStats edge_stats_from_table(const double table[4]) {
  // table = {Phi(0,0), Phi(0,1), Phi(1,0), Phi(1,1)}
  EdgeStats s;
  s.phi1 = table[2] - table[3];
  s.phi2 = table[0] - table[1];
  s.phi3 = table[3] - table[1];
  s.x = s.phi1 + s.phi2;
  s.y = s.phi2 - s.phi1;
  return s;
}

EdgeStats edge_stats(const DecisionNetwork& net, int edge, int from) {
  if (net.num_actions() != 2) {
    throw InvalidParams("edge_stats: defined for binary action sets only");
  }
  double t[4];
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      ExtReal phi = net.edge_phi(edge, from, a, b);
      if (phi.is_neg_inf()) {
        throw InvalidParams("edge_stats: table on edge " + std::to_string(edge) +
                            " contains -inf");
      }
      t[a * 2 + b] = phi.v;
    }
  }
  return edge_stats_from_table(t);
}

double mu_binary(const EdgeStats& s, double z) {
  return s.phi3 + std::max(s.phi1, z) - std::max(s.phi2, z);
}

SubnetworkView modified_network(const SubnetworkView& view, int u, int j, int x) {
  std::vector<Neighbor> nbrs = view.live_neighbors(u);  // throws InvalidView if u absent
  if (j < 1 || j > static_cast<int>(nbrs.size())) {
    throw InvalidParams("modified_network: j = " + std::to_string(j) +
                        " outside 1..deg(u) = " + std::to_string(nbrs.size()));
  }
  if (x < 0 || x >= view.num_actions()) {
    throw InvalidParams("modified_network: action " + std::to_string(x) + " out of range");
  }
  return derive_modified(view, u, nbrs, j, x);
}

ExtReal ce(const SubnetworkView& view, int u, int r, int x, const BoundaryCondition& bc,
           const CeOptions& opts, CeStats* stats) {
  if (r < 0) throw InvalidDepth("ce: depth must be >= 0, got " + std::to_string(r));
  if (x < 0 || x >= view.num_actions()) {
    throw InvalidParams("ce: action " + std::to_string(x) + " out of range");
  }
  CeContext ctx{&bc, opts};
  ExtReal out = ce_impl(view, u, r, x, ctx);
  if (stats) stats->calls += ctx.calls;
  return out;
}

ExtReal ce_full(const SubnetworkView& view, int u, int x, const CeOptions& opts,
                CeStats* stats) {
  if (x < 0 || x >= view.num_actions()) {
    throw InvalidParams("ce_full: action " + std::to_string(x) + " out of range");
  }
  BoundaryCondition bc;  // never reached
  CeContext ctx{&bc, opts};
  ExtReal out = ce_impl(view, u, -1, x, ctx);
  if (stats) stats->calls += ctx.calls;
  return out;
}

CavityVector ce_vector(const SubnetworkView& view, int u, int r, const BoundaryCondition& bc,
                       const CeOptions& opts, CeStats* stats) {
  CavityVector out;
  out.values.resize(static_cast<std::size_t>(view.num_actions()));
  for (int x = 0; x < view.num_actions(); ++x) {
    out.values[static_cast<std::size_t>(x)] = ce(view, u, r, x, bc, opts, stats);
  }
  return out;
}

CavityVector ce_full_vector(const SubnetworkView& view, int u, const CeOptions& opts,
                            CeStats* stats) {
  CavityVector out;
  out.values.resize(static_cast<std::size_t>(view.num_actions()));
  for (int x = 0; x < view.num_actions(); ++x) {
    out.values[static_cast<std::size_t>(x)] = ce_full(view, u, x, opts, stats);
  }
  return out;
}

CeDecideOutput ce_decide_all(const DecisionNetwork& net, int r, const BoundaryCondition& bc,
                             const CeOptions& opts, int threads) {
  const int n = net.num_nodes();
  const int T = net.num_actions();
  CeDecideOutput out;
  out.results.resize(static_cast<std::size_t>(n));
  out.node_errors.assign(static_cast<std::size_t>(n), "");
  out.decisions.assign(static_cast<std::size_t>(n), 0);
  std::vector<std::uint64_t> calls(static_cast<std::size_t>(n), 0);

  SubnetworkView root(net);
  parallel_for(n, threads, [&](long node) {
    CeResult res;
    res.node = static_cast<int>(node);
    res.depth = r;
    res.estimates.values.assign(static_cast<std::size_t>(T), ExtReal{0.0});
    try {
      CeStats st;
      // estimates(0) is identically 0: mu(0, .) cancels term by term.
      for (int x = 1; x < T; ++x) {
        res.estimates.values[static_cast<std::size_t>(x)] =
            ce(root, static_cast<int>(node), r, x, bc, opts, &st);
      }
      calls[static_cast<std::size_t>(node)] = st.calls;
      int best = 0;
      for (int x = 1; x < T; ++x) {
        if (res.estimates.values[static_cast<std::size_t>(x)] >
            res.estimates.values[static_cast<std::size_t>(best)]) {
          best = x;
        }
      }
      res.decision = best;
    } catch (const Error& e) {
      out.node_errors[static_cast<std::size_t>(node)] = std::string(e.code()) + ": " + e.what();
      res.estimates.values.assign(static_cast<std::size_t>(T), ExtReal{0.0});
      res.decision = 0;
    }
    out.results[static_cast<std::size_t>(node)] = std::move(res);
    out.decisions[static_cast<std::size_t>(node)] =
        out.results[static_cast<std::size_t>(node)].decision;
  });

  for (std::uint64_t c : calls) out.total_calls += c;
  out.total = evaluate(net, out.decisions);
  return out;
}

}  // namespace cavitylab
