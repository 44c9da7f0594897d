#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cavitylab/cavity.hpp"
#include "cavitylab/exact.hpp"
#include "cavitylab/experiments.hpp"
#include "cavitylab/instance_io.hpp"
#include "cavitylab/models.hpp"
#include "cavitylab/mwis.hpp"

namespace py = pybind11;
using namespace cavitylab;

namespace {

std::vector<double> cavity_to_list(const CavityVector& cv) {
  std::vector<double> out;
  out.reserve(cv.values.size());
  for (ExtReal b : cv.values) out.push_back(b.v);
  return out;
}

py::dict solution_to_dict(const ExactSolution& sol) {
  py::dict d;
  d["optimum"] = sol.optimum.v;
  d["argmax"] = sol.argmax;
  d["unique"] = sol.unique;
  return d;
}

std::vector<ExtReal> list_to_cavity(const std::vector<double>& b) {
  return std::vector<ExtReal>(b.begin(), b.end());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "cavitylab core: decision networks, exact oracles, cavity expansion, MWIS";

  py::register_exception<Error>(m, "CavitylabError");

  py::class_<DecisionNetwork>(m, "DecisionNetwork")
      .def(py::init([](int num_actions, std::vector<std::vector<double>> potentials,
                       std::vector<std::tuple<int, int, std::vector<std::vector<double>>>> edges) {
             std::vector<EdgeSpec> es;
             for (auto& [u, v, table] : edges) {
               EdgeSpec e{u, v, {}};
               for (const auto& row : table) {
                 for (double x : row) e.table.push_back(ExtReal{x});
               }
               es.push_back(std::move(e));
             }
             return DecisionNetwork(num_actions, std::move(potentials), std::move(es));
           }),
           py::arg("num_actions"), py::arg("potentials"), py::arg("edges"))
      .def_property_readonly("num_nodes", &DecisionNetwork::num_nodes)
      .def_property_readonly("num_actions", &DecisionNetwork::num_actions)
      .def_property_readonly("num_edges", &DecisionNetwork::num_edges)
      .def("node_potential", &DecisionNetwork::node_potential)
      .def("to_json", [](const DecisionNetwork& net) { return save_instance(net); });

  py::class_<WeightedGraph>(m, "WeightedGraph")
      .def(py::init<int, std::vector<std::pair<int, int>>, std::vector<double>>(),
           py::arg("n"), py::arg("edges"), py::arg("weights"))
      .def_property_readonly("num_nodes", &WeightedGraph::num_nodes)
      .def_property_readonly("max_degree", &WeightedGraph::max_degree)
      .def("weight", &WeightedGraph::weight)
      .def("to_json", [](const WeightedGraph& g) { return save_weighted_graph(g); });

  py::class_<BoundaryCondition>(m, "BoundaryCondition")
      .def_static("zero", &BoundaryCondition::zero)
      .def_static("potential_gap", &BoundaryCondition::potential_gap)
      .def_static("constant", &BoundaryCondition::constant_value, py::arg("c"))
      .def_static("seeded_uniform", &BoundaryCondition::seeded_uniform, py::arg("lo"),
                  py::arg("hi"), py::arg("seed"))
      .def("__repr__", [](const BoundaryCondition& bc) { return "BoundaryCondition(" + bc.describe() + ")"; });

  m.def("load_instance", [](const std::string& s) { return load_instance(s); });
  m.def("load_weighted_graph", [](const std::string& s) { return load_weighted_graph(s); });

  m.def("evaluate",
        [](const DecisionNetwork& net, const Assignment& a) { return evaluate(net, a).v; });

  m.def("solve_brute",
        [](const DecisionNetwork& net) { return solution_to_dict(solve_brute(net)); });
  m.def("solve_tree", [](const DecisionNetwork& net) {
    TreeSolution ts = solve_tree(net);
    py::dict d = solution_to_dict(ts.solution);
    py::list cavities;
    for (const CavityVector& cv : ts.cavities) cavities.append(cavity_to_list(cv));
    d["cavities"] = cavities;
    return d;
  });
  m.def("solve_mwis_bnb",
        [](const WeightedGraph& g) { return solution_to_dict(solve_mwis_bnb(g)); });
  m.def("cavity_exact", [](const DecisionNetwork& net, int v) {
    return cavity_to_list(cavity_exact(net, v));
  });
  m.def("cavity_exact_all", [](const DecisionNetwork& net) {
    std::vector<std::vector<double>> out;
    for (const CavityVector& cv : cavity_exact_all(net)) out.push_back(cavity_to_list(cv));
    return out;
  });

  m.def("mu", [](const DecisionNetwork& net, int edge, int from, int x, std::vector<double> b) {
    return mu(net, edge, from, x, list_to_cavity(b)).v;
  });
  m.def(
      "ce",
      [](const DecisionNetwork& net, int u, int r, int x, const BoundaryCondition& bc) {
        return ce(SubnetworkView(net), u, r, x, bc).v;
      },
      py::arg("net"), py::arg("u"), py::arg("r"), py::arg("x"),
      py::arg("bc") = BoundaryCondition::zero());
  m.def("ce_full", [](const DecisionNetwork& net, int u, int x) {
    return ce_full(SubnetworkView(net), u, x).v;
  });
  m.def(
      "ce_decide_all",
      [](const DecisionNetwork& net, int r, const BoundaryCondition& bc, int threads) {
        CeDecideOutput res = ce_decide_all(net, r, bc, CeOptions{}, threads);
        py::dict d;
        py::list nodes;
        for (const CeResult& cr : res.results) {
          py::dict rec;
          rec["node"] = cr.node;
          rec["estimates"] = cavity_to_list(cr.estimates);
          rec["decision"] = cr.decision;
          nodes.append(rec);
        }
        d["nodes"] = nodes;
        d["decisions"] = res.decisions;
        d["total"] = res.total.v;
        d["calls"] = res.total_calls;
        return d;
      },
      py::arg("net"), py::arg("r"), py::arg("bc") = BoundaryCondition::zero(),
      py::arg("threads") = 0);

  m.def("c_exact", [](const WeightedGraph& g, int i) { return c_exact(g, i); });
  m.def("c_bound", [](const WeightedGraph& g, int i, int r, const std::string& sign) {
    if (sign != "minus" && sign != "plus") throw InvalidParams("sign must be minus or plus");
    return c_bound(g, i, r, sign == "minus" ? CBoundSign::Minus : CBoundSign::Plus);
  });
  m.def(
      "run_two_phase",
      [](const WeightedGraph& g, double epsilon, int r, std::uint64_t seed, int threads) {
        MwisRun run = run_two_phase(g, epsilon, r, seed, threads);
        py::dict d;
        d["epsilon"] = run.epsilon;
        d["depth"] = run.depth;
        d["seed"] = run.seed;
        d["kept_nodes"] = run.kept_nodes;
        d["chosen_set"] = run.chosen_set;
        d["weight"] = run.weight;
        return d;
      },
      py::arg("g"), py::arg("epsilon"), py::arg("r"), py::arg("seed") = 0,
      py::arg("threads") = 0);
  m.def("greedy_mis", [](const WeightedGraph& g) { return greedy_mis(g); });
  m.def(
      "sample_weights",
      [](int n, const std::string& dist, std::uint64_t seed, double rho, int delta) {
        if (dist == "exp1") return sample_weights(n, WeightDist::exp1(), seed);
        if (dist == "mixture") return sample_weights(n, WeightDist::mixture(rho, delta), seed);
        throw InvalidParams("dist must be exp1 or mixture");
      },
      py::arg("n"), py::arg("dist") = "exp1", py::arg("seed") = 0, py::arg("rho") = 26.0,
      py::arg("delta") = 2);
  m.def("mixture_matrix_check", [](double rho, int delta) {
    MixtureCheck mc = mixture_matrix_check(rho, delta);
    return py::make_tuple(mc.theta, mc.holds);
  });
  m.def("suggested_depth", &suggested_depth);

  py::class_<GraphSpec>(m, "GraphSpec")
      .def_static("cycle", &GraphSpec::cycle)
      .def_static("path", &GraphSpec::path)
      .def_static("grid", &GraphSpec::grid)
      .def_static("random_regular", &GraphSpec::random_regular)
      .def_static("erdos_renyi", &GraphSpec::erdos_renyi)
      .def_static("random_tree", &GraphSpec::random_tree)
      .def("__repr__", [](const GraphSpec& g) { return g.describe(); });

  py::class_<ModelSpec>(m, "ModelSpec")
      .def_static("uniform", &ModelSpec::uniform, py::arg("i1"), py::arg("i2"),
                  py::arg("graph"), py::arg("seed"))
      .def_static("gaussian", &ModelSpec::gaussian, py::arg("sigma_e"), py::arg("sigma_p"),
                  py::arg("graph"), py::arg("seed"))
      .def_static("mwis_exp", &ModelSpec::mwis_exp, py::arg("graph"), py::arg("seed"))
      .def_static("mwis_mixture", &ModelSpec::mwis_mixture, py::arg("rho"), py::arg("delta"),
                  py::arg("graph"), py::arg("seed"))
      .def("__repr__", [](const ModelSpec& s) { return s.describe(); });

  m.def("generate", [](const ModelSpec& spec) -> py::object {
    Instance inst = generate(spec);
    if (std::holds_alternative<DecisionNetwork>(inst)) {
      return py::cast(std::get<DecisionNetwork>(std::move(inst)));
    }
    return py::cast(std::get<WeightedGraph>(std::move(inst)));
  });
  m.def("generate_network", &generate_network);
  m.def("encode_mwis", &encode_mwis);

  m.def("coupling_params", [](const ModelSpec& spec) {
    CouplingParams cp = coupling_params(spec);
    py::dict d;
    d["a"] = cp.a;
    d["b"] = cp.b;
    d["k_y"] = cp.k_y ? py::cast(*cp.k_y) : py::none();
    d["k_phi"] = cp.k_phi;
    return d;
  });
  m.def("check_conditions", [](const ModelSpec& spec, int delta) {
    ConditionReport rep = check_conditions(spec, delta);
    auto flag = [](const std::optional<bool>& b) {
      return b ? py::cast(*b) : py::object(py::none());
    };
    py::dict d;
    d["thm1"] = flag(rep.thm1);
    d["thm2"] = flag(rep.thm2);
    d["cond_first"] = flag(rep.cond_first);
    d["cond_third"] = flag(rep.cond_third);
    d["mixture_ok"] = flag(rep.mixture_ok);
    return d;
  });
}
