#include <sstream>

#include "partseq/orientation.hpp"

namespace partseq {

namespace {

struct ParsedEdge {
  Hyperedge edge;
  std::vector<int> heads;
  int line = 0;
};

struct Parsed {
  GroundSet ground;
  std::vector<ParsedEdge> edges;
  bool any_heads = false;
};

int resolve_vertex(const GroundSet& g, const std::string& tok, int line) {
  auto it = std::find(g.labels.begin(), g.labels.end(), tok);
  if (it != g.labels.end()) return static_cast<int>(it - g.labels.begin());
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used == tok.size() && v >= 0 && v < g.n) return v;
  } catch (const std::exception&) {
  }
  throw InvalidInput("line " + std::to_string(line) + ": unknown vertex '" + tok + "'");
}

Parsed parse_text(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  int n = -1;
  long long m = -1;
  Parsed out;
  std::vector<std::string> labels;
  std::optional<std::pair<std::string, std::string>> terminals;
  std::vector<std::pair<int, std::vector<std::string>>> edge_lines;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    if (n < 0) {
      if (tok.size() != 2) throw InvalidInput("line " + std::to_string(line_no) + ": expected header 'n m'");
      try {
        n = std::stoi(tok[0]);
        m = std::stoll(tok[1]);
      } catch (const std::exception&) {
        throw InvalidInput("line " + std::to_string(line_no) + ": header must be two integers");
      }
      if (n < 1 || m < 0) throw InvalidInput("line " + std::to_string(line_no) + ": bad header values");
      continue;
    }
    if (tok[0] == "labels") {
      labels.assign(tok.begin() + 1, tok.end());
      if (static_cast<int>(labels.size()) != n)
        throw InvalidInput("line " + std::to_string(line_no) + ": expected " + std::to_string(n) + " labels");
      continue;
    }
    if (tok[0] == "terminals") {
      if (tok.size() != 3) throw InvalidInput("line " + std::to_string(line_no) + ": expected 'terminals s t'");
      terminals = std::make_pair(tok[1], tok[2]);
      continue;
    }
    edge_lines.emplace_back(line_no, std::move(tok));
  }
  if (n < 0) throw InvalidInput("missing header 'n m'");
  if (static_cast<long long>(edge_lines.size()) != m)
    throw InvalidInput("header announces " + std::to_string(m) + " edges, found " +
                       std::to_string(edge_lines.size()));
  GroundSet g = labels.empty() ? GroundSet(n) : GroundSet(labels);
  if (terminals) {
    g.s_index = resolve_vertex(g, terminals->first, 0);
    g.t_index = resolve_vertex(g, terminals->second, 0);
  }
  g.validate();
  out.ground = g;
  for (auto& [ln, tok] : edge_lines) {
    ParsedEdge pe;
    pe.line = ln;
    try {
      std::size_t used = 0;
      pe.edge.multiplicity = std::stoll(tok[0], &used);
      if (used != tok[0].size()) throw std::invalid_argument("mult");
    } catch (const std::exception&) {
      throw InvalidInput("line " + std::to_string(ln) + ": multiplicity must be an integer");
    }
    for (std::size_t i = 1; i < tok.size(); ++i) {
      if (tok[i].rfind("head=", 0) == 0) {
        pe.heads.push_back(resolve_vertex(g, tok[i].substr(5), ln));
        out.any_heads = true;
      } else {
        int v = resolve_vertex(g, tok[i], ln);
        if (contains(pe.edge.members, v)) throw InvalidInput("line " + std::to_string(ln) + ": repeated vertex");
        pe.edge.members |= bit(v);
      }
    }
    if (set_size(pe.edge.members) < 2)
      throw InvalidInput("line " + std::to_string(ln) + ": hyperedges need at least two vertices");
    out.edges.push_back(std::move(pe));
  }
  return out;
}

std::string header(const GroundSet& g, std::size_t m) {
  std::ostringstream os;
  os << g.n << ' ' << m << '\n';
  bool default_labels = true;
  for (int i = 0; i < g.n; ++i) default_labels = default_labels && g.labels[i] == std::to_string(i);
  if (!default_labels) {
    os << "labels";
    for (const auto& l : g.labels) os << ' ' << l;
    os << '\n';
  }
  if (g.has_terminals()) os << "terminals " << g.labels[*g.s_index] << ' ' << g.labels[*g.t_index] << '\n';
  return os.str();
}

void edge_line(std::ostream& os, const GroundSet& g, const Hyperedge& e) {
  os << e.multiplicity;
  for (int v : elements_of(e.members)) os << ' ' << g.labels[v];
}

}  // namespace

Hypergraph parse_hypergraph_text(const std::string& text) {
  Parsed p = parse_text(text);
  std::vector<Hyperedge> edges;
  for (auto& pe : p.edges) edges.push_back(pe.edge);
  return Hypergraph(p.ground, std::move(edges));
}

std::string format_hypergraph_text(const Hypergraph& g) {
  std::ostringstream os;
  os << header(g.ground(), g.edges().size());
  for (const auto& e : g.edges()) {
    edge_line(os, g.ground(), e);
    os << '\n';
  }
  return os.str();
}

Orientation parse_orientation_text(const std::string& text) {
  Parsed p = parse_text(text);
  std::vector<Hyperedge> edges;
  std::vector<std::vector<int>> heads;
  for (auto& pe : p.edges) {
    if (static_cast<long long>(pe.heads.size()) != pe.edge.multiplicity)
      throw InvalidInput("line " + std::to_string(pe.line) + ": expected one head= per copy");
    edges.push_back(pe.edge);
    heads.push_back(pe.heads);
  }
  Orientation o{Hypergraph(p.ground, std::move(edges)), std::move(heads)};
  o.validate();
  return o;
}

std::string format_orientation_text(const Orientation& o) {
  std::ostringstream os;
  const auto& g = o.graph;
  os << header(g.ground(), g.edges().size());
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    edge_line(os, g.ground(), g.edges()[i]);
    for (int h : o.heads[i]) os << " head=" << g.ground().labels[h];
    os << '\n';
  }
  return os.str();
}

namespace {

GroundSet ground_from_json(const nlohmann::json& j) {
  int n = j.at("n").get<int>();
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  GroundSet g = labels.empty() ? GroundSet(n) : GroundSet(labels);
  if (g.n != n) throw InvalidInput("label count differs from n");
  if (j.contains("s")) g.s_index = g.index_of(j.at("s").get<std::string>());
  if (j.contains("t")) g.t_index = g.index_of(j.at("t").get<std::string>());
  g.validate();
  return g;
}

nlohmann::json ground_to_json(const GroundSet& g) {
  nlohmann::json j;
  j["n"] = g.n;
  j["labels"] = g.labels;
  if (g.s_index) j["s"] = g.labels[*g.s_index];
  if (g.t_index) j["t"] = g.labels[*g.t_index];
  return j;
}

nlohmann::json members_json(const GroundSet& g, ElementSet m) {
  auto a = nlohmann::json::array();
  for (int v : elements_of(m)) a.push_back(g.labels[v]);
  return a;
}

}  // namespace

nlohmann::json hypergraph_to_json(const Hypergraph& g) {
  auto j = ground_to_json(g.ground());
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges())
    j["edges"].push_back({{"members", members_json(g.ground(), e.members)}, {"multiplicity", e.multiplicity}});
  return j;
}

Hypergraph hypergraph_from_json(const nlohmann::json& j) {
  try {
    GroundSet g = ground_from_json(j);
    std::vector<Hyperedge> edges;
    for (const auto& e : j.at("edges")) {
      Hyperedge h;
      for (const auto& m : e.at("members")) {
        int v = g.index_of(m.get<std::string>());
        if (contains(h.members, v)) throw InvalidInput("repeated vertex in hyperedge");
        h.members |= bit(v);
      }
      h.multiplicity = e.value("multiplicity", 1LL);
      edges.push_back(h);
    }
    return Hypergraph(g, std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed hypergraph JSON: ") + e.what());
  }
}

nlohmann::json orientation_to_json(const Orientation& o) {
  auto j = hypergraph_to_json(o.graph);
  for (std::size_t i = 0; i < o.heads.size(); ++i) {
    auto h = nlohmann::json::array();
    for (int v : o.heads[i]) h.push_back(o.graph.ground().labels[v]);
    j["edges"][i]["heads"] = h;
  }
  return j;
}

Orientation orientation_from_json(const nlohmann::json& j) {
  Hypergraph g = hypergraph_from_json(j);
  try {
    Orientation o{g, {}};
    for (const auto& e : j.at("edges")) {
      std::vector<int> hs;
      for (const auto& h : e.at("heads")) hs.push_back(g.ground().index_of(h.get<std::string>()));
      o.heads.push_back(std::move(hs));
    }
    o.validate();
    return o;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed orientation JSON: ") + e.what());
  }
}

}  // namespace partseq
