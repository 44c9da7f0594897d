#include "cavitylab/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "cavitylab/exact.hpp"
#include "cavitylab/parallel.hpp"
#include "cavitylab/rng.hpp"

namespace cavitylab {

namespace {

struct MeanStderr {
  double mean = 0.0;
  double se = 0.0;
  int count = 0;
};

// Deterministic fold in index order regardless of which thread produced what.
MeanStderr fold(const std::vector<double>& vals, const std::vector<char>& ok) {
  MeanStderr out;
  double sum = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!ok[i]) continue;
    sum += vals[i];
    ++out.count;
  }
  if (out.count == 0) return out;
  out.mean = sum / out.count;
  double ss = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!ok[i]) continue;
    double d = vals[i] - out.mean;
    ss += d * d;
  }
  if (out.count > 1) {
    out.se = std::sqrt(ss / (out.count - 1)) / std::sqrt(static_cast<double>(out.count));
  }
  return out;
}

ModelSpec reseeded(const ModelSpec& spec, std::uint64_t seed) {
  ModelSpec s = spec;
  s.seed = seed;
  s.graph.seed = seed ^ 0x517CC1B727220A95ull;
  return s;
}

}  // namespace

std::vector<DecayEstimate> measure_decay(const ModelSpec& spec,
                                         const std::vector<int>& depths, int trials,
                                         std::pair<BoundaryCondition, BoundaryCondition> bc_pair,
                                         std::uint64_t master_seed, const MeasureOptions& opts) {
  if (trials < 1) throw InvalidParams("trials must be >= 1");
  std::vector<DecayEstimate> out;
  for (int r : depths) {
    if (r < 0) throw InvalidDepth("decay depth must be >= 0");
    std::vector<double> gaps(static_cast<std::size_t>(trials), 0.0);
    std::vector<char> ok(static_cast<std::size_t>(trials), 0);
    parallel_for(trials, opts.threads, [&](long t) {
      Rng trial_rng{master_seed, 0xDECALL, static_cast<std::uint64_t>(r),
                    static_cast<std::uint64_t>(t)};
      DecisionNetwork net = generate_network(reseeded(spec, trial_rng.next()));
      int root = trial_rng.below(net.num_nodes());
      SubnetworkView view(net);
      try {
        ExtReal a = ce(view, root, r, 1, bc_pair.first, opts.ce);
        ExtReal b = ce(view, root, r, 1, bc_pair.second, opts.ce);
        if (a.is_finite() && b.is_finite()) {
          gaps[static_cast<std::size_t>(t)] = std::abs(a.v - b.v);
          ok[static_cast<std::size_t>(t)] = 1;
        }
      } catch (const InfeasibleReference&) {
        // excluded, counted below
      }
    });
    MeanStderr ms = fold(gaps, ok);
    DecayEstimate est;
    est.depth = r;
    est.mean_gap = ms.mean;
    est.stderr_ = ms.se;
    est.trials = ms.count;
    est.excluded = trials - ms.count;
    est.fingerprint = spec.describe() + "|bc=" + bc_pair.first.describe() + "/" +
                      bc_pair.second.describe() + "|seed=" + std::to_string(master_seed);
    out.push_back(std::move(est));
  }
  return out;
}

std::vector<MisclassRow> measure_misclassification(const ModelSpec& spec,
                                                   const std::vector<int>& depths, int trials,
                                                   std::uint64_t master_seed,
                                                   const MeasureOptions& opts) {
  if (trials < 1) throw InvalidParams("trials must be >= 1");
  std::vector<MisclassRow> out;
  for (int r : depths) {
    std::vector<double> rates(static_cast<std::size_t>(trials), 0.0);
    std::vector<char> ok(static_cast<std::size_t>(trials), 0);
    parallel_for(trials, opts.threads, [&](long t) {
      Rng trial_rng{master_seed, 0x315CALL, static_cast<std::uint64_t>(r),
                    static_cast<std::uint64_t>(t)};
      DecisionNetwork net = generate_network(reseeded(spec, trial_rng.next()));
      ExactSolution exact = solve_brute(net, opts.brute);
      if (!exact.unique) return;  // discarded and counted
      CeDecideOutput ce_out = ce_decide_all(net, r, BoundaryCondition::zero(), opts.ce, 1);
      int mism = 0;
      for (int v = 0; v < net.num_nodes(); ++v) {
        if (ce_out.decisions[static_cast<std::size_t>(v)] !=
            exact.argmax[static_cast<std::size_t>(v)]) {
          ++mism;
        }
      }
      rates[static_cast<std::size_t>(t)] = static_cast<double>(mism) / net.num_nodes();
      ok[static_cast<std::size_t>(t)] = 1;
    });
    MeanStderr ms = fold(rates, ok);
    out.push_back(MisclassRow{r, ms.mean, ms.se, ms.count, trials - ms.count});
  }
  return out;
}

std::vector<SuboptRow> measure_suboptimality(const ModelSpec& spec,
                                             const std::vector<int>& depths, int trials,
                                             std::uint64_t master_seed,
                                             const MeasureOptions& opts) {
  if (trials < 1) throw InvalidParams("trials must be >= 1");
  std::vector<SuboptRow> out;
  for (int r : depths) {
    std::vector<double> gaps(static_cast<std::size_t>(trials), 0.0);
    std::vector<char> ok(static_cast<std::size_t>(trials), 0);
    parallel_for(trials, opts.threads, [&](long t) {
      Rng trial_rng{master_seed, 0x5B0ULL, static_cast<std::uint64_t>(r),
                    static_cast<std::uint64_t>(t)};
      DecisionNetwork net = generate_network(reseeded(spec, trial_rng.next()));
      ExactSolution exact = solve_brute(net, opts.brute);
      CeDecideOutput ce_out = ce_decide_all(net, r, BoundaryCondition::zero(), opts.ce, 1);
      if (!ce_out.total.is_finite()) return;  // infeasible total, counted separately
      gaps[static_cast<std::size_t>(t)] = exact.optimum.v - ce_out.total.v;
      ok[static_cast<std::size_t>(t)] = 1;
    });
    MeanStderr ms = fold(gaps, ok);
    out.push_back(SuboptRow{r, ms.mean, ms.se, ms.count, trials - ms.count});
  }
  return out;
}

MwisRatioRow measure_mwis_ratio(const GraphSpec& graph_spec, int trials,
                                std::uint64_t master_seed, const MeasureOptions& opts) {
  if (trials < 1) throw InvalidParams("trials must be >= 1");
  GraphTopology topo = generate_graph(graph_spec);
  WeightedGraph unit(topo.n, topo.edges, std::vector<double>(static_cast<std::size_t>(topo.n), 1.0));
  ExactSolution mis = solve_mwis_bnb(unit, opts.bnb);
  const int max_card = static_cast<int>(std::llround(mis.optimum.v));

  std::vector<double> wstar(static_cast<std::size_t>(trials), 0.0);
  std::vector<char> ok(static_cast<std::size_t>(trials), 1);
  parallel_for(trials, opts.threads, [&](long t) {
    Rng trial_rng{master_seed, 0x3A710ULL, static_cast<std::uint64_t>(t)};
    WeightedGraph g = unit.with_weights(
        sample_weights(topo.n, WeightDist::exp1(), trial_rng.next()));
    wstar[static_cast<std::size_t>(t)] = solve_mwis_bnb(g, opts.bnb).optimum.v;
  });
  MeanStderr ms = fold(wstar, ok);

  MwisRatioRow row;
  row.n = topo.n;
  row.delta = topo.max_degree();
  row.mean_w_star = ms.mean;
  row.stderr_w = ms.se;
  row.max_cardinality = max_card;
  row.trials = trials;
  row.ratio = max_card > 0 ? ms.mean / max_card : 0.0;
  row.ratio_stderr = max_card > 0 ? ms.se / max_card : 0.0;
  row.lower_bound_ok = row.ratio >= 1.0 - 4.0 * row.ratio_stderr;
  return row;
}

MomentCheck measure_moment_identity(const GraphTopology& graph, int node, int trials,
                                    std::uint64_t master_seed, const MeasureOptions& opts) {
  if (trials < 1) throw InvalidParams("trials must be >= 1");
  if (node < 0 || node >= graph.n) throw InvalidParams("moment identity: node out of range");
  std::vector<double> lhs(static_cast<std::size_t>(trials), 0.0);
  std::vector<double> rhs(static_cast<std::size_t>(trials), 0.0);
  std::vector<double> diff(static_cast<std::size_t>(trials), 0.0);
  std::vector<char> ok(static_cast<std::size_t>(trials), 1);

  parallel_for(trials, opts.threads, [&](long t) {
    Rng trial_rng{master_seed, 0x303E27ULL, static_cast<std::uint64_t>(t)};
    WeightedGraph g(graph.n, graph.edges,
                    sample_weights(graph.n, WeightDist::exp1(), trial_rng.next()));
    // lhs: exp(-C(i)) with exact cavities.
    double c_i = c_exact(g, node, opts.bnb);
    // rhs: the conditional sum over neighbors in the nested subgraphs.
    std::vector<char> keep(static_cast<std::size_t>(g.num_nodes()), 1);
    keep[static_cast<std::size_t>(node)] = 0;
    double csum = 0.0;
    for (int il : g.neighbors(node)) {
      // C_{G \ {i, i_1, .., i_{l-1}}}(i_l), exact.
      std::vector<int> remap(static_cast<std::size_t>(g.num_nodes()), -1);
      int m = 0;
      for (int v = 0; v < g.num_nodes(); ++v) {
        if (keep[static_cast<std::size_t>(v)]) remap[static_cast<std::size_t>(v)] = m++;
      }
      WeightedGraph sub = g.induced(keep);
      csum += c_exact(sub, remap[static_cast<std::size_t>(il)], opts.bnb);
      keep[static_cast<std::size_t>(il)] = 0;
    }
    lhs[static_cast<std::size_t>(t)] = std::exp(-c_i);
    rhs[static_cast<std::size_t>(t)] = 1.0 - 0.5 * std::exp(-csum);
    diff[static_cast<std::size_t>(t)] = lhs[static_cast<std::size_t>(t)] - rhs[static_cast<std::size_t>(t)];
  });

  MeanStderr ml = fold(lhs, ok);
  MeanStderr mr = fold(rhs, ok);
  MeanStderr md = fold(diff, ok);
  MomentCheck out;
  out.lhs = ml.mean;
  out.rhs = mr.mean;
  out.diff_stderr = md.se;
  out.z = md.se > 0.0 ? md.mean / md.se : 0.0;
  out.trials = trials;
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::string out = "experiment,model,graph,n,delta,r,trials,estimate,stderr,excluded,seed\n";
  for (const ReportRow& r : rows) {
    out += r.experiment + "," + r.model + "," + r.graph + "," + std::to_string(r.n) + "," +
           std::to_string(r.delta) + "," + std::to_string(r.r) + "," +
           std::to_string(r.trials) + "," + format_double(r.estimate) + "," +
           format_double(r.stderr_) + "," + std::to_string(r.excluded) + "," +
           std::to_string(r.seed) + "\n";
  }
  return out;
}

}  // namespace cavitylab
