#include <fstream>
#include <sstream>

#include "partseq/errors.hpp"
#include "partseq/instance.hpp"

namespace partseq {

using nlohmann::json;

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw InvalidInput("weights must be integers or rational strings, got " + j.dump());
}

namespace {

int vertex(const GroundSet& g, const json& j) {
  if (j.is_string()) return g.index_of(j.get<std::string>());
  if (j.is_number_integer()) {
    int v = j.get<int>();
    if (v < 0 || v >= g.n) throw InvalidInput("vertex index " + std::to_string(v) + " out of range");
    return v;
  }
  throw InvalidInput("vertex must be a label or an index");
}

ElementSet members(const GroundSet& g, const json& arr) {
  ElementSet m = 0;
  for (const auto& x : arr) m |= bit(vertex(g, x));
  return m;
}

GroundSet ground_of(const json& j) {
  int n = j.at("n").get<int>();
  if (n < 1 || n > 64) throw InvalidInput("n must lie in [1, 64]");
  GroundSet g = j.contains("labels") ? GroundSet(j.at("labels").get<std::vector<std::string>>()) : GroundSet(n);
  if (g.n != n) throw InvalidInput("label count differs from n");
  if (j.contains("s")) g.s_index = vertex(g, j.at("s"));
  if (j.contains("t")) g.t_index = vertex(g, j.at("t"));
  g.validate();
  return g;
}

}  // namespace

Instance instance_from_json(const json& j) {
  try {
    Instance in;
    in.ground = ground_of(j);
    const auto& fj = j.at("function");
    in.kind = fj.at("kind").get<std::string>();
    const GroundSet& g = in.ground;
    if (in.kind == "graph_cut") {
      std::vector<WeightedEdge> edges;
      for (const auto& e : fj.at("edges")) {
        WeightedEdge w;
        if (e.is_array()) {
          if (e.size() < 2 || e.size() > 3) throw InvalidInput("graph edge must be [u, v] or [u, v, w]");
          w.u = vertex(g, e[0]);
          w.v = vertex(g, e[1]);
          if (e.size() == 3) w.weight = rational_from_json(e[2]);
        } else {
          w.u = vertex(g, e.at("u"));
          w.v = vertex(g, e.at("v"));
          if (e.contains("weight")) w.weight = rational_from_json(e.at("weight"));
        }
        edges.push_back(w);
      }
      in.f = make_graph_cut(g, edges);
    } else if (in.kind == "hypergraph_cut") {
      std::vector<WeightedHyperedge> edges;
      for (const auto& e : fj.at("edges")) {
        WeightedHyperedge w;
        w.members = members(g, e.at("members"));
        if (e.contains("weight")) w.weight = rational_from_json(e.at("weight"));
        edges.push_back(w);
      }
      in.f = make_hypergraph_cut(g, edges);
    } else if (in.kind == "coverage") {
      auto covering = fj.at("covering").get<std::vector<std::vector<int>>>();
      if (static_cast<int>(covering.size()) != g.n) throw InvalidInput("covering needs one item list per element");
      int items = 0;
      for (const auto& c : covering)
        for (int x : c) {
          if (x < 0) throw InvalidInput("item indices must be nonnegative");
          items = std::max(items, x + 1);
        }
      std::vector<Rational> weights(items, Rational(1));
      if (fj.contains("item_weights")) {
        const auto& wj = fj.at("item_weights");
        if (static_cast<int>(wj.size()) < items) throw InvalidInput("item_weights shorter than the item range");
        weights.clear();
        for (const auto& w : wj) weights.push_back(rational_from_json(w));
      }
      in.f = make_coverage(g, covering, weights);
    } else if (in.kind == "table") {
      if (g.n > 20) throw InvalidInput("table instances are limited to n <= 20");
      const auto& vj = fj.at("values");
      if (vj.size() != (std::size_t{1} << g.n)) throw InvalidInput("table needs 2^n values");
      std::vector<Value> values;
      for (const auto& v : vj) values.push_back(Value(rational_from_json(v)));
      OracleFlags flags;
      if (fj.contains("flags")) {
        for (const auto& name : fj.at("flags")) {
          auto s = name.get<std::string>();
          if (s == "symmetric") flags.symmetric = true;
          else if (s == "monotone") flags.monotone = true;
          else if (s == "posimodular") flags.posimodular = true;
          else if (s == "nonnegative") flags.nonnegative = true;
          else throw InvalidInput("unknown flag '" + s + "'");
        }
      }
      in.f = make_table(g, std::move(values), flags);
    } else {
      throw InvalidInput("unknown function kind '" + in.kind + "'");
    }
    return in;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed instance: ") + e.what());
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
  return instance_from_json(j);
}

}  // namespace partseq
