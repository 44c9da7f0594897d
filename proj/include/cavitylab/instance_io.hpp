#pragma once

#include <string>
#include <string_view>

#include "cavitylab/mwis.hpp"
#include "cavitylab/network.hpp"

namespace cavitylab {

// Instance JSON:
//   {"num_actions": T,
//    "nodes": [{"id": 0, "potential": [0.0, 1.5]}, ...],
//    "edges": [{"u": 0, "v": 1, "table": [[0, 0], [0, "-inf"]]}, ...]}
// u < v; table row index = action of u; -inf encoded as the string "-inf".
DecisionNetwork load_instance(std::string_view json_text);
std::string save_instance(const DecisionNetwork& net);

// Compact weighted-graph JSON: {"nodes":[{"id":0,"w":1.5},...],"edges":[[0,1],...]}
WeightedGraph load_weighted_graph(std::string_view json_text);
std::string save_weighted_graph(const WeightedGraph& g);

// True if the JSON text looks like the compact weighted-graph schema rather
// than the general instance schema (no "num_actions" key).
bool looks_like_weighted_graph(std::string_view json_text);

}  // namespace cavitylab
