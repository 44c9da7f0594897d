#include "cavitylab/instance_io.hpp"

#include <cmath>
#include <string>

#include <json.hpp>

#include "cavitylab/errors.hpp"

namespace cavitylab {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

ExtReal table_entry(const json& j, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "-inf") return ExtReal::neg_inf();
    throw ParseError(where + ": the only string value allowed is \"-inf\"");
  }
  if (!j.is_number()) throw ParseError(where + ": expected a number or \"-inf\"");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(where + ": non-finite number");
  return ExtReal{v};
}

json encode_ext(ExtReal v) {
  if (v.is_neg_inf()) return json("-inf");
  return json(v.v);
}

}  // namespace

DecisionNetwork load_instance(std::string_view text) {
  json j = parse_json(text);
  if (!j.is_object()) throw ParseError("top level: expected an object");
  if (!j.contains("num_actions") || !j["num_actions"].is_number_integer()) {
    throw ParseError("num_actions: missing or not an integer");
  }
  const int T = j["num_actions"].get<int>();
  if (T < 2) throw ParseError("num_actions: must be >= 2");
  if (!j.contains("nodes") || !j["nodes"].is_array()) {
    throw ParseError("nodes: missing or not an array");
  }
  const auto& jnodes = j["nodes"];
  const int n = static_cast<int>(jnodes.size());
  std::vector<std::vector<double>> pots(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < n; ++k) {
    const std::string where = "nodes[" + std::to_string(k) + "]";
    const auto& jn = jnodes[static_cast<std::size_t>(k)];
    if (!jn.is_object() || !jn.contains("id") || !jn["id"].is_number_integer()) {
      throw ParseError(where + ": expected an object with an integer id");
    }
    int id = jn["id"].get<int>();
    if (id < 0 || id >= n) {
      throw ParseError(where + ".id: " + std::to_string(id) + " outside [0, " +
                       std::to_string(n) + ")");
    }
    if (seen[static_cast<std::size_t>(id)]) throw ParseError(where + ".id: duplicate id");
    seen[static_cast<std::size_t>(id)] = 1;
    if (!jn.contains("potential") || !jn["potential"].is_array() ||
        static_cast<int>(jn["potential"].size()) != T) {
      throw ParseError(where + ".potential: expected an array of " + std::to_string(T) +
                       " numbers");
    }
    std::vector<double> pot;
    for (int x = 0; x < T; ++x) {
      double v = number_at(jn["potential"][static_cast<std::size_t>(x)],
                           where + ".potential[" + std::to_string(x) + "]");
      if (!std::isfinite(v)) {
        throw ParseError(where + ".potential[" + std::to_string(x) +
                         "]: node potentials must be finite");
      }
      pot.push_back(v);
    }
    pots[static_cast<std::size_t>(id)] = std::move(pot);
  }

  std::vector<EdgeSpec> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ParseError("edges: expected an array");
    int k = 0;
    for (const auto& je : j["edges"]) {
      const std::string where = "edges[" + std::to_string(k) + "]";
      if (!je.is_object() || !je.contains("u") || !je.contains("v") || !je.contains("table")) {
        throw ParseError(where + ": expected an object with u, v, table");
      }
      EdgeSpec e;
      if (!je["u"].is_number_integer() || !je["v"].is_number_integer()) {
        throw ParseError(where + ": u and v must be integers");
      }
      e.u = je["u"].get<int>();
      e.v = je["v"].get<int>();
      if (e.u < 0 || e.v >= n || e.u >= e.v) {
        throw ParseError(where + ": requires 0 <= u < v < " + std::to_string(n));
      }
      const auto& jt = je["table"];
      if (!jt.is_array() || static_cast<int>(jt.size()) != T) {
        throw ParseError(where + ".table: expected " + std::to_string(T) + " rows");
      }
      for (int a = 0; a < T; ++a) {
        const auto& row = jt[static_cast<std::size_t>(a)];
        if (!row.is_array() || static_cast<int>(row.size()) != T) {
          throw ParseError(where + ".table[" + std::to_string(a) + "]: expected " +
                           std::to_string(T) + " entries");
        }
        for (int b = 0; b < T; ++b) {
          e.table.push_back(table_entry(row[static_cast<std::size_t>(b)],
                                        where + ".table[" + std::to_string(a) + "][" +
                                            std::to_string(b) + "]"));
        }
      }
      edges.push_back(std::move(e));
      ++k;
    }
  }
  try {
    return DecisionNetwork(T, std::move(pots), std::move(edges));
  } catch (const InvalidParams& e) {
    throw ParseError(e.what());  // duplicate edges etc. detected by the constructor
  }
}

std::string save_instance(const DecisionNetwork& net) {
  json j;
  j["num_actions"] = net.num_actions();
  j["nodes"] = json::array();
  for (int v = 0; v < net.num_nodes(); ++v) {
    json pot = json::array();
    for (int x = 0; x < net.num_actions(); ++x) pot.push_back(net.node_potential(v, x));
    j["nodes"].push_back({{"id", v}, {"potential", pot}});
  }
  j["edges"] = json::array();
  for (int e = 0; e < net.num_edges(); ++e) {
    const EdgeSpec& ed = net.edge(e);
    json table = json::array();
    for (int a = 0; a < net.num_actions(); ++a) {
      json row = json::array();
      for (int b = 0; b < net.num_actions(); ++b) {
        row.push_back(encode_ext(ed.table[static_cast<std::size_t>(a) * net.num_actions() + b]));
      }
      table.push_back(row);
    }
    j["edges"].push_back({{"u", ed.u}, {"v", ed.v}, {"table", table}});
  }
  return j.dump(2) + "\n";
}

WeightedGraph load_weighted_graph(std::string_view text) {
  json j = parse_json(text);
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array()) {
    throw ParseError("nodes: missing or not an array");
  }
  const int n = static_cast<int>(j["nodes"].size());
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  int k = 0;
  for (const auto& jn : j["nodes"]) {
    const std::string where = "nodes[" + std::to_string(k++) + "]";
    if (!jn.is_object() || !jn.contains("id") || !jn["id"].is_number_integer() ||
        !jn.contains("w")) {
      throw ParseError(where + ": expected {id, w}");
    }
    int id = jn["id"].get<int>();
    if (id < 0 || id >= n) throw ParseError(where + ".id: out of range");
    if (seen[static_cast<std::size_t>(id)]) throw ParseError(where + ".id: duplicate id");
    seen[static_cast<std::size_t>(id)] = 1;
    double wv = number_at(jn["w"], where + ".w");
    if (!(wv >= 0) || !std::isfinite(wv)) {
      throw ParseError(where + ".w: weights must be finite and >= 0");
    }
    w[static_cast<std::size_t>(id)] = wv;
  }
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ParseError("edges: expected an array");
    k = 0;
    for (const auto& je : j["edges"]) {
      const std::string where = "edges[" + std::to_string(k++) + "]";
      if (!je.is_array() || je.size() != 2 || !je[0].is_number_integer() ||
          !je[1].is_number_integer()) {
        throw ParseError(where + ": expected [u, v]");
      }
      edges.emplace_back(je[0].get<int>(), je[1].get<int>());
    }
  }
  try {
    return WeightedGraph(n, std::move(edges), std::move(w));
  } catch (const InvalidParams& e) {
    throw ParseError(e.what());
  }
}

std::string save_weighted_graph(const WeightedGraph& g) {
  json j;
  j["nodes"] = json::array();
  for (int v = 0; v < g.num_nodes(); ++v) {
    j["nodes"].push_back({{"id", v}, {"w", g.weight(v)}});
  }
  j["edges"] = json::array();
  for (const auto& [u, v] : g.edges()) j["edges"].push_back({u, v});
  return j.dump(2) + "\n";
}

bool looks_like_weighted_graph(std::string_view text) {
  json j = parse_json(text);
  return j.is_object() && !j.contains("num_actions") && j.contains("nodes");
}

}  // namespace cavitylab
