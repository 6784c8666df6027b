#pragma once

#include <string>

#include "json.hpp"

#include "partseq/oracle.hpp"

namespace partseq {

// {"n", "labels", "s", "t", "function": {"kind": ..., ...}}
//   graph_cut:      "edges": [[u, v, w], ...] or [{"u", "v", "weight"}, ...]
//   hypergraph_cut: "edges": [{"members": [...], "weight"}, ...]
//   coverage:       "covering": [[items of element 0], ...], optional "item_weights"
//   table:          "values": 2^n entries indexed by bitmask, optional "flags"
// Weights are integers or strings like "25/48".
struct Instance {
  GroundSet ground;
  Oracle f;
  std::string kind;
};

Instance instance_from_json(const nlohmann::json& j);
Instance load_instance(const std::string& path);

Rational rational_from_json(const nlohmann::json& j);

}  // namespace partseq
