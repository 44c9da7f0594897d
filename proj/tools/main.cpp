#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cavitylab/cavity.hpp"
#include "cavitylab/exact.hpp"
#include "cavitylab/experiments.hpp"
#include "cavitylab/instance_io.hpp"
#include "cavitylab/models.hpp"
#include "cavitylab/mwis.hpp"

using nlohmann::json;
using namespace cavitylab;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidParams("cannot open output file: " + path);
  out << text;
}

json ext_json(ExtReal v) { return v.is_neg_inf() ? json("-inf") : json(v.v); }

// Model/graph flag bundle shared by gen, the experiment commands and
// check-conditions.
struct ModelCli {
  std::string model = "uniform";
  double i1 = 1.0, i2 = 0.04;
  double sigma_e = 0.1, sigma_p = 1.0;
  std::vector<double> mu{0, 0, 0, 0};
  std::vector<double> cov;
  double mu_p = 0.0;
  double rho = 26.0;
  int delta_mix = 2;
  double p_cause = 0.5, sigma_obs = 1.0;

  std::string graph = "cycle";
  int n = 10;
  int rows = 3, cols = 3;
  int degree = 3;
  double p = 0.2;
  int dmax = 4;

  std::uint64_t seed = 0;

  void add_model_flags(CLI::App* cmd) {
    cmd->add_option("--model", model, "uniform|gauss|gauss-corr|mwis-exp|mwis-mixture|map-bg")
        ->default_val(model);
    cmd->add_option("--i1", i1, "uniform: node potential range [-i1, i1]");
    cmd->add_option("--i2", i2, "uniform: edge entry range [-i2, i2]");
    cmd->add_option("--sigma-e", sigma_e, "gauss: edge entry std dev");
    cmd->add_option("--sigma-p", sigma_p, "gauss: node potential std dev");
    cmd->add_option("--mu", mu, "gauss-corr: 4 means (00,01,10,11)")->expected(4);
    cmd->add_option("--cov", cov, "gauss-corr: 16 covariance entries, row-major")->expected(16);
    cmd->add_option("--mu-p", mu_p, "gauss-corr: node potential mean");
    cmd->add_option("--rho", rho, "mwis-mixture: rate base (alpha_j = rho^j)");
    cmd->add_option("--delta-mix", delta_mix, "mwis-mixture: number of mixture components");
    cmd->add_option("--p-cause", p_cause, "map-bg: Bernoulli cause probability");
    cmd->add_option("--sigma-obs", sigma_obs, "map-bg: observation noise std dev");
  }

  void add_graph_flags(CLI::App* cmd) {
    cmd->add_option("--graph", graph, "cycle|path|grid|rr|er|tree")->default_val(graph);
    cmd->add_option("--n", n, "number of nodes");
    cmd->add_option("--rows", rows, "grid rows");
    cmd->add_option("--cols", cols, "grid cols");
    cmd->add_option("--degree", degree, "rr: degree");
    cmd->add_option("--p", p, "er: edge probability");
    cmd->add_option("--dmax", dmax, "er: max degree");
  }

  void add_seed_flag(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "master seed (env CAVITYLAB_SEED is the fallback)")
        ->envname("CAVITYLAB_SEED");
  }

  GraphSpec graph_spec() const {
    if (graph == "cycle") return GraphSpec::cycle(n);
    if (graph == "path") return GraphSpec::path(n);
    if (graph == "grid") return GraphSpec::grid(rows, cols);
    if (graph == "rr") return GraphSpec::random_regular(n, degree, seed);
    if (graph == "er") return GraphSpec::erdos_renyi(n, p, dmax, seed);
    if (graph == "tree") return GraphSpec::random_tree(n, seed);
    throw InvalidParams("--graph: unknown kind '" + graph + "'");
  }

  ModelSpec model_spec() const {
    GraphSpec g = graph_spec();
    if (model == "uniform") return ModelSpec::uniform(i1, i2, g, seed);
    if (model == "gauss") return ModelSpec::gaussian(sigma_e, sigma_p, g, seed);
    if (model == "gauss-corr") {
      std::array<double, 4> m{mu[0], mu[1], mu[2], mu[3]};
      std::array<std::array<double, 4>, 4> s{};
      if (cov.size() != 16) {
        throw InvalidParams("--cov: gauss-corr requires 16 covariance entries");
      }
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) s[i][j] = cov[static_cast<std::size_t>(i * 4 + j)];
      }
      return ModelSpec::gaussian_correlated(m, s, mu_p, sigma_p, g, seed);
    }
    if (model == "mwis-exp") return ModelSpec::mwis_exp(g, seed);
    if (model == "mwis-mixture") return ModelSpec::mwis_mixture(rho, delta_mix, g, seed);
    if (model == "map-bg") return ModelSpec::map_bernoulli_gauss(p_cause, sigma_obs, g, seed);
    throw InvalidParams("--model: unknown kind '" + model + "'");
  }

  json config_json() const {
    json cfg;
    cfg["model"] = model;
    cfg["graph"] = graph_spec().describe();
    cfg["seed"] = seed;
    if (model == "uniform") cfg["params"] = {{"i1", i1}, {"i2", i2}};
    if (model == "gauss") cfg["params"] = {{"sigma_e", sigma_e}, {"sigma_p", sigma_p}};
    if (model == "gauss-corr") {
      cfg["params"] = {{"mu", mu}, {"cov", cov}, {"mu_p", mu_p}, {"sigma_p", sigma_p}};
    }
    if (model == "mwis-mixture") cfg["params"] = {{"rho", rho}, {"delta", delta_mix}};
    if (model == "map-bg") cfg["params"] = {{"p_cause", p_cause}, {"sigma_obs", sigma_obs}};
    return cfg;
  }
};

BoundaryCondition parse_bc(const std::string& text) {
  if (text == "zero") return BoundaryCondition::zero();
  if (text == "potential-gap") return BoundaryCondition::potential_gap();
  if (text.rfind("const:", 0) == 0) {
    return BoundaryCondition::constant_value(std::stod(text.substr(6)));
  }
  if (text.rfind("seeded:", 0) == 0) {
    std::string rest = text.substr(7);
    double lo, hi;
    unsigned long long s;
    if (std::sscanf(rest.c_str(), "%lf,%lf,%llu", &lo, &hi, &s) != 3) {
      throw InvalidParams("--bc: seeded form is seeded:lo,hi,seed");
    }
    return BoundaryCondition::seeded_uniform(lo, hi, s);
  }
  throw InvalidParams("--bc: unknown boundary condition '" + text + "'");
}

json mwis_run_json(const MwisRun& run) {
  return json{{"epsilon", run.epsilon}, {"depth", run.depth},  {"seed", run.seed},
              {"kept_nodes", run.kept_nodes}, {"chosen_set", run.chosen_set},
              {"weight", run.weight}};
}

// The CSV bytes are the experiment contract; the JSON mirror carries the
// fully-resolved config next to the rows.
void write_experiment(const std::string& out_path, const std::string& json_path,
                      const std::vector<ReportRow>& rows, const json& config) {
  write_output(out_path, report_csv(rows));
  std::string mirror = json_path;
  if (mirror.empty() && !out_path.empty() && out_path != "-" &&
      out_path.size() > 4 && out_path.substr(out_path.size() - 4) == ".csv") {
    mirror = out_path.substr(0, out_path.size() - 4) + ".json";
  }
  if (mirror.empty()) return;
  json j;
  j["config"] = config;
  j["rows"] = json::array();
  for (const ReportRow& r : rows) {
    j["rows"].push_back({{"experiment", r.experiment}, {"model", r.model}, {"graph", r.graph},
                         {"n", r.n}, {"delta", r.delta}, {"r", r.r}, {"trials", r.trials},
                         {"estimate", r.estimate}, {"stderr", r.stderr_},
                         {"excluded", r.excluded}, {"seed", r.seed}});
  }
  write_output(mirror, j.dump(2) + "\n");
}

std::vector<int> parse_depths(const std::vector<int>& depths) {
  if (depths.empty()) throw InvalidParams("--depths: at least one depth is required");
  return depths;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cavitylab: decision-network optimization via cavity expansion"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap (default: logical cores)");

  // ---- gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  ModelCli gen_cli;
  gen_cli.add_model_flags(gen);
  gen_cli.add_graph_flags(gen);
  gen_cli.add_seed_flag(gen);
  std::string gen_out;
  gen->add_option("-o,--output", gen_out, "output path (default stdout)");

  // ---- solve-exact ---------------------------------------------------------
  auto* solve = app.add_subcommand("solve-exact", "exact optimum of an instance");
  std::string solve_in, solve_out, solve_method = "auto";
  bool solve_cavities = false;
  solve->add_option("input", solve_in, "instance JSON path")->required();
  solve->add_option("--method", solve_method, "auto|brute|tree|bnb");
  solve->add_flag("--cavities", solve_cavities, "also report per-node exact cavities");
  solve->add_option("-o,--output", solve_out, "output path (default stdout)");

  // ---- ce -------------------------------------------------------------------
  auto* cecmd = app.add_subcommand("ce", "cavity expansion decisions for every node");
  std::string ce_in, ce_out, ce_bc = "zero";
  int ce_depth = 4;
  bool ce_use_full = false;
  cecmd->add_option("input", ce_in, "instance JSON path")->required();
  cecmd->add_option("--depth", ce_depth, "computation depth r");
  cecmd->add_flag("--full", ce_use_full, "expand fully (exact cavities)");
  cecmd->add_option("--bc", ce_bc, "zero|potential-gap|const:c|seeded:lo,hi,seed");
  cecmd->add_option("-o,--output", ce_out, "output path (default stdout)");

  // ---- mwis -----------------------------------------------------------------
  auto* mwis = app.add_subcommand("mwis", "two-phase MWIS via nonnegative cavities");
  std::string mwis_in, mwis_out;
  double mwis_eps = 0.15;
  int mwis_depth = -1;
  std::uint64_t mwis_seed = 0;
  mwis->add_option("input", mwis_in, "weighted-graph JSON or MWIS-encoded instance")->required();
  mwis->add_option("--epsilon", mwis_eps, "accuracy parameter in (0,1)");
  mwis->add_option("--depth", mwis_depth, "even recursion depth (default suggested_depth)");
  mwis->add_option("--seed", mwis_seed, "deletion-phase seed")->envname("CAVITYLAB_SEED");
  mwis->add_option("-o,--output", mwis_out, "output path (default stdout)");

  // ---- experiments ------------------------------------------------------------
  auto* decay = app.add_subcommand("decay", "correlation decay vs depth");
  ModelCli decay_cli;
  decay_cli.add_model_flags(decay);
  decay_cli.add_graph_flags(decay);
  decay_cli.add_seed_flag(decay);
  std::vector<int> decay_depths{0, 2, 4};
  int decay_trials = 200;
  std::string decay_bc1 = "zero", decay_bc2 = "potential-gap";
  std::string decay_out, decay_json;
  decay->add_option("--depths", decay_depths, "depths to measure")->delimiter(',');
  decay->add_option("--trials", decay_trials, "Monte-Carlo trials per depth");
  decay->add_option("--bc1", decay_bc1, "first boundary condition");
  decay->add_option("--bc2", decay_bc2, "second boundary condition");
  decay->add_option("-o,--output", decay_out, "CSV output path (default stdout)");
  decay->add_option("--json-out", decay_json, "JSON mirror path");

  auto* misclass = app.add_subcommand("misclass", "misclassification rate vs depth");
  ModelCli mis_cli;
  mis_cli.add_model_flags(misclass);
  mis_cli.add_graph_flags(misclass);
  mis_cli.add_seed_flag(misclass);
  std::vector<int> mis_depths{1, 4};
  int mis_trials = 200;
  std::string mis_out, mis_json;
  misclass->add_option("--depths", mis_depths, "depths to measure")->delimiter(',');
  misclass->add_option("--trials", mis_trials, "Monte-Carlo trials per depth");
  misclass->add_option("-o,--output", mis_out, "CSV output path (default stdout)");
  misclass->add_option("--json-out", mis_json, "JSON mirror path");

  auto* subopt = app.add_subcommand("subopt", "suboptimality gap vs depth");
  ModelCli sub_cli;
  sub_cli.add_model_flags(subopt);
  sub_cli.add_graph_flags(subopt);
  sub_cli.add_seed_flag(subopt);
  std::vector<int> sub_depths{1, 4};
  int sub_trials = 200;
  std::string sub_out, sub_json;
  subopt->add_option("--depths", sub_depths, "depths to measure")->delimiter(',');
  subopt->add_option("--trials", sub_trials, "Monte-Carlo trials per depth");
  subopt->add_option("-o,--output", sub_out, "CSV output path (default stdout)");
  subopt->add_option("--json-out", sub_json, "JSON mirror path");

  auto* ratio = app.add_subcommand("mwis-ratio", "E[W(I*)] / |I^M| on a fixed topology");
  ModelCli ratio_cli;
  ratio_cli.add_graph_flags(ratio);
  ratio_cli.add_seed_flag(ratio);
  int ratio_trials = 1000;
  std::string ratio_out, ratio_json;
  ratio->add_option("--trials", ratio_trials, "Monte-Carlo trials");
  ratio->add_option("-o,--output", ratio_out, "CSV output path (default stdout)");
  ratio->add_option("--json-out", ratio_json, "JSON mirror path");

  auto* moment = app.add_subcommand("moment-check", "exp-moment identity z-check");
  ModelCli mom_cli;
  mom_cli.add_graph_flags(moment);
  mom_cli.add_seed_flag(moment);
  int mom_node = 0;
  int mom_trials = 10000;
  std::string mom_out, mom_json;
  moment->add_option("--node", mom_node, "root node of the identity");
  moment->add_option("--trials", mom_trials, "Monte-Carlo trials");
  moment->add_option("-o,--output", mom_out, "CSV output path (default stdout)");
  moment->add_option("--json-out", mom_json, "JSON mirror path");

  auto* cond = app.add_subcommand("check-conditions", "decay-condition flags for a model");
  ModelCli cond_cli;
  cond_cli.add_model_flags(cond);
  cond_cli.add_seed_flag(cond);
  int cond_delta = 3;
  std::string cond_out;
  cond->add_option("--delta", cond_delta, "degree bound Delta")->required();
  cond->add_option("-o,--output", cond_out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage error
  }

  try {
    MeasureOptions mopts;
    mopts.threads = threads;

    if (*gen) {
      Instance inst = generate(gen_cli.model_spec());
      if (std::holds_alternative<DecisionNetwork>(inst)) {
        write_output(gen_out, save_instance(std::get<DecisionNetwork>(inst)));
      } else {
        write_output(gen_out, save_weighted_graph(std::get<WeightedGraph>(inst)));
      }
    } else if (*solve) {
      std::string text = read_file(solve_in);
      json out;
      out["config"] = {{"input", solve_in}, {"method", solve_method}};
      if (looks_like_weighted_graph(text) || solve_method == "bnb") {
        WeightedGraph g = load_weighted_graph(text);
        ExactSolution sol = solve_mwis_bnb(g);
        out["method"] = "bnb";
        out["optimum"] = ext_json(sol.optimum);
        out["argmax"] = sol.argmax;
        out["unique"] = sol.unique;
      } else {
        DecisionNetwork net = load_instance(text);
        bool use_tree = solve_method == "tree" ||
                        (solve_method == "auto" && is_forest(net));
        if (solve_method != "auto" && solve_method != "brute" && solve_method != "tree") {
          throw InvalidParams("--method: unknown method '" + solve_method + "'");
        }
        json cavities = json::array();
        ExactSolution sol;
        if (use_tree) {
          TreeSolution ts = solve_tree(net);
          sol = ts.solution;
          out["method"] = "tree";
          if (solve_cavities) {
            for (const CavityVector& cv : ts.cavities) {
              json row = json::array();
              for (ExtReal b : cv.values) row.push_back(ext_json(b));
              cavities.push_back(row);
            }
          }
        } else {
          sol = solve_brute(net);
          out["method"] = "brute";
          if (solve_cavities) {
            for (const CavityVector& cv : cavity_exact_all(net)) {
              json row = json::array();
              for (ExtReal b : cv.values) row.push_back(ext_json(b));
              cavities.push_back(row);
            }
          }
        }
        out["optimum"] = ext_json(sol.optimum);
        out["argmax"] = sol.argmax;
        out["unique"] = sol.unique;
        if (solve_cavities) out["cavities"] = cavities;
      }
      write_output(solve_out, out.dump(2) + "\n");
    } else if (*cecmd) {
      DecisionNetwork net = load_instance(read_file(ce_in));
      BoundaryCondition bc = parse_bc(ce_bc);
      json out;
      out["config"] = {{"input", ce_in}, {"depth", ce_use_full ? -1 : ce_depth},
                       {"full", ce_use_full}, {"bc", bc.describe()}, {"threads", threads}};
      CeDecideOutput res;
      if (ce_use_full) {
        SubnetworkView view(net);
        res.results.resize(static_cast<std::size_t>(net.num_nodes()));
        res.node_errors.assign(static_cast<std::size_t>(net.num_nodes()), "");
        res.decisions.assign(static_cast<std::size_t>(net.num_nodes()), 0);
        for (int v = 0; v < net.num_nodes(); ++v) {
          CeResult r;
          r.node = v;
          r.depth = -1;
          try {
            CeStats st;
            r.estimates = ce_full_vector(view, v, CeOptions{}, &st);
            res.total_calls += st.calls;
          } catch (const Error& e) {
            res.node_errors[static_cast<std::size_t>(v)] = std::string(e.code()) + ": " + e.what();
            r.estimates.values.assign(static_cast<std::size_t>(net.num_actions()), ExtReal{0.0});
          }
          int best = 0;
          for (int x = 1; x < net.num_actions(); ++x) {
            if (r.estimates.values[static_cast<std::size_t>(x)] >
                r.estimates.values[static_cast<std::size_t>(best)]) {
              best = x;
            }
          }
          r.decision = best;
          res.decisions[static_cast<std::size_t>(v)] = best;
          res.results[static_cast<std::size_t>(v)] = std::move(r);
        }
        res.total = evaluate(net, res.decisions);
      } else {
        res = ce_decide_all(net, ce_depth, bc, CeOptions{}, threads);
      }
      out["nodes"] = json::array();
      for (int v = 0; v < net.num_nodes(); ++v) {
        const CeResult& r = res.results[static_cast<std::size_t>(v)];
        json estimates = json::array();
        for (ExtReal b : r.estimates.values) estimates.push_back(ext_json(b));
        json rec = {{"node", r.node}, {"depth", r.depth}, {"estimates", estimates},
                    {"decision", r.decision}};
        if (!res.node_errors[static_cast<std::size_t>(v)].empty()) {
          rec["error"] = res.node_errors[static_cast<std::size_t>(v)];
        }
        out["nodes"].push_back(rec);
      }
      out["total"] = ext_json(res.total);
      out["calls"] = res.total_calls;
      write_output(ce_out, out.dump(2) + "\n");
    } else if (*mwis) {
      std::string text = read_file(mwis_in);
      WeightedGraph g = [&] {
        if (looks_like_weighted_graph(text)) return load_weighted_graph(text);
        // General instance JSON carrying the MWIS encoding.
        DecisionNetwork net = load_instance(text);
        if (net.num_actions() != 2) throw EncodeError("MWIS instances are binary");
        std::vector<double> w(static_cast<std::size_t>(net.num_nodes()));
        for (int v = 0; v < net.num_nodes(); ++v) {
          if (net.node_potential(v, 0) != 0.0 || net.node_potential(v, 1) < 0.0) {
            throw EncodeError("node " + std::to_string(v) +
                              ": not an MWIS encoding (needs Phi(0)=0, Phi(1)>=0)");
          }
          w[static_cast<std::size_t>(v)] = net.node_potential(v, 1);
        }
        std::vector<std::pair<int, int>> edges;
        for (int e = 0; e < net.num_edges(); ++e) {
          const EdgeSpec& ed = net.edge(e);
          bool shape = ed.table[0] == ExtReal{0.0} && ed.table[1] == ExtReal{0.0} &&
                       ed.table[2] == ExtReal{0.0} && ed.table[3].is_neg_inf();
          if (!shape) {
            throw EncodeError("edge " + std::to_string(e) +
                              ": not an MWIS encoding (needs zeros and Phi(1,1)=-inf)");
          }
          edges.emplace_back(ed.u, ed.v);
        }
        return WeightedGraph(net.num_nodes(), std::move(edges), std::move(w));
      }();
      int depth = mwis_depth >= 0 ? mwis_depth : suggested_depth(mwis_eps);
      MwisRun run = run_two_phase(g, mwis_eps, depth, mwis_seed, threads);
      json out = mwis_run_json(run);
      out["config"] = {{"input", mwis_in}, {"epsilon", mwis_eps}, {"depth", depth},
                       {"seed", mwis_seed}, {"threads", threads}};
      write_output(mwis_out, out.dump(2) + "\n");
    } else if (*decay) {
      ModelSpec spec = decay_cli.model_spec();
      auto depths = parse_depths(decay_depths);
      auto rows = measure_decay(spec, depths, decay_trials,
                                {parse_bc(decay_bc1), parse_bc(decay_bc2)}, decay_cli.seed,
                                mopts);
      GraphTopology topo = generate_graph(spec.graph);
      std::vector<ReportRow> report;
      for (const DecayEstimate& e : rows) {
        report.push_back({"decay", decay_cli.model, spec.graph.describe(), topo.n,
                          topo.max_degree(), e.depth, e.trials, e.mean_gap, e.stderr_,
                          e.excluded, decay_cli.seed});
      }
      json cfg = decay_cli.config_json();
      cfg["depths"] = depths;
      cfg["trials"] = decay_trials;
      cfg["bc_pair"] = {decay_bc1, decay_bc2};
      cfg["threads"] = threads;
      write_experiment(decay_out, decay_json, report, cfg);
    } else if (*misclass) {
      ModelSpec spec = mis_cli.model_spec();
      auto depths = parse_depths(mis_depths);
      auto rows = measure_misclassification(spec, depths, mis_trials, mis_cli.seed, mopts);
      GraphTopology topo = generate_graph(spec.graph);
      std::vector<ReportRow> report;
      for (const MisclassRow& e : rows) {
        report.push_back({"misclass", mis_cli.model, spec.graph.describe(), topo.n,
                          topo.max_degree(), e.depth, e.trials, e.rate, e.stderr_, e.excluded,
                          mis_cli.seed});
      }
      json cfg = mis_cli.config_json();
      cfg["depths"] = depths;
      cfg["trials"] = mis_trials;
      cfg["threads"] = threads;
      write_experiment(mis_out, mis_json, report, cfg);
    } else if (*subopt) {
      ModelSpec spec = sub_cli.model_spec();
      auto depths = parse_depths(sub_depths);
      auto rows = measure_suboptimality(spec, depths, sub_trials, sub_cli.seed, mopts);
      GraphTopology topo = generate_graph(spec.graph);
      std::vector<ReportRow> report;
      for (const SuboptRow& e : rows) {
        report.push_back({"subopt", sub_cli.model, spec.graph.describe(), topo.n,
                          topo.max_degree(), e.depth, e.trials, e.mean_gap, e.stderr_,
                          e.infeasible, sub_cli.seed});
      }
      json cfg = sub_cli.config_json();
      cfg["depths"] = depths;
      cfg["trials"] = sub_trials;
      cfg["threads"] = threads;
      write_experiment(sub_out, sub_json, report, cfg);
    } else if (*ratio) {
      GraphSpec gs = ratio_cli.graph_spec();
      MwisRatioRow row = measure_mwis_ratio(gs, ratio_trials, ratio_cli.seed, mopts);
      std::vector<ReportRow> report{{"mwis-ratio", "mwis-exp", gs.describe(), row.n, row.delta,
                                     0, row.trials, row.ratio, row.ratio_stderr, 0,
                                     ratio_cli.seed}};
      json cfg = {{"graph", gs.describe()}, {"trials", ratio_trials}, {"seed", ratio_cli.seed},
                  {"threads", threads},     {"mean_w_star", row.mean_w_star},
                  {"stderr_w", row.stderr_w}, {"max_cardinality", row.max_cardinality},
                  {"lower_bound_ok", row.lower_bound_ok},
                  {"upper_bound_10logDelta",
                   row.delta >= 2 ? json(10.0 * std::log(row.delta)) : json()}};
      write_experiment(ratio_out, ratio_json, report, cfg);
    } else if (*moment) {
      GraphTopology topo = generate_graph(mom_cli.graph_spec());
      MomentCheck mc = measure_moment_identity(topo, mom_node, mom_trials, mom_cli.seed, mopts);
      std::vector<ReportRow> report{{"moment-check", "mwis-exp", mom_cli.graph_spec().describe(),
                                     topo.n, topo.max_degree(), 0, mc.trials, mc.lhs - mc.rhs,
                                     mc.diff_stderr, 0, mom_cli.seed}};
      json cfg = {{"graph", mom_cli.graph_spec().describe()}, {"node", mom_node},
                  {"trials", mom_trials}, {"seed", mom_cli.seed}, {"threads", threads},
                  {"lhs", mc.lhs}, {"rhs", mc.rhs}, {"z", mc.z}};
      write_experiment(mom_out, mom_json, report, cfg);
    } else if (*cond) {
      ModelSpec spec = cond_cli.model_spec();
      ConditionReport rep = check_conditions(spec, cond_delta);
      auto flag = [](const std::optional<bool>& b) { return b ? json(*b) : json(); };
      json out;
      out["config"] = cond_cli.config_json();
      out["config"]["delta"] = cond_delta;
      out["thm1"] = flag(rep.thm1);
      out["thm2"] = flag(rep.thm2);
      out["cond_first"] = flag(rep.cond_first);
      out["cond_third"] = flag(rep.cond_third);
      out["mixture_ok"] = flag(rep.mixture_ok);
      if (rep.beta) out["beta"] = *rep.beta;
      if (rep.theta) out["theta"] = *rep.theta;
      if (rep.coupling) {
        out["coupling"] = {{"a", rep.coupling->a}, {"b", rep.coupling->b},
                           {"k_phi", rep.coupling->k_phi}};
        out["coupling"]["k_y"] = rep.coupling->k_y ? json(*rep.coupling->k_y) : json();
      }
      write_output(cond_out, out.dump(2) + "\n");
    }
  } catch (const Error& e) {
    json err = {{"error", e.code()}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err = {{"error", "InternalError"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 0;
}
