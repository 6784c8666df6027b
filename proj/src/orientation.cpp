#include <algorithm>
#include <map>
#include <tuple>

#include "partseq/detail/flow.hpp"
#include "partseq/orientation.hpp"
#include "partseq/pps.hpp"

namespace partseq {

Hypergraph::Hypergraph(GroundSet ground, std::vector<Hyperedge> edges)
    : ground_(std::move(ground)), edges_(std::move(edges)) {
  ground_.validate();
  for (const auto& e : edges_) {
    if (!is_subset(e.members, ground_.all())) throw InvalidInput("hyperedge outside the vertex set");
    if (set_size(e.members) < 2) throw InvalidInput("hyperedges need at least two vertices");
    if (e.multiplicity < 1) throw InvalidInput("multiplicities must be positive");
  }
}

long long Hypergraph::total_copies() const {
  long long c = 0;
  for (const auto& e : edges_) c += e.multiplicity;
  return c;
}

long long Hypergraph::delta(const Partition& p) const {
  if (p.ground_size() != n()) throw InvalidInput("partition over a different vertex set");
  long long c = 0;
  for (const auto& e : edges_) {
    int hit = 0;
    for (ElementSet b : p.blocks()) hit += (b & e.members) != 0 ? 1 : 0;
    if (hit >= 2) c += e.multiplicity;
  }
  return c;
}

long long Hypergraph::crossing(ElementSet u) const {
  long long c = 0;
  for (const auto& e : edges_)
    if ((e.members & u) != 0 && (e.members & ~u) != 0) c += e.multiplicity;
  return c;
}

long long Hypergraph::inside(ElementSet u) const {
  long long c = 0;
  for (const auto& e : edges_)
    if (is_subset(e.members, u)) c += e.multiplicity;
  return c;
}

void Orientation::validate() const {
  const auto& E = graph.edges();
  if (heads.size() != E.size()) throw InvalidInput("head list does not match the edges");
  for (std::size_t i = 0; i < E.size(); ++i) {
    if (static_cast<long long>(heads[i].size()) != E[i].multiplicity)
      throw InvalidInput("edge " + std::to_string(i) + " needs one head per copy");
    for (int h : heads[i])
      if (h < 0 || h >= graph.n() || !contains(E[i].members, h))
        throw InvalidInput("head outside its hyperedge");
  }
}

std::vector<long long> Orientation::indegrees() const {
  std::vector<long long> x(graph.n(), 0);
  for (const auto& hs : heads)
    for (int h : hs) ++x[h];
  return x;
}

long long Orientation::in_degree(ElementSet u) const {
  long long c = 0;
  const auto& E = graph.edges();
  for (std::size_t i = 0; i < E.size(); ++i) {
    if ((E[i].members & ~u) == 0) continue;
    for (int h : heads[i]) c += contains(u, h) ? 1 : 0;
  }
  return c;
}

Orientation arbitrary_orientation(const Hypergraph& g) {
  Orientation o{g, {}};
  for (const auto& e : g.edges()) o.heads.emplace_back(e.multiplicity, lowest_element(e.members));
  return o;
}

Oracle make_indegree(const Orientation& o) {
  std::map<std::pair<ElementSet, int>, long long> groups;
  const auto& E = o.graph.edges();
  for (std::size_t i = 0; i < E.size(); ++i)
    for (int h : o.heads[i]) ++groups[{E[i].members, h}];
  std::vector<DirectedHyperarc> arcs;
  for (const auto& [key, c] : groups) arcs.push_back({key.first, key.second, c});
  return make_indegree(o.graph.ground(), arcs);
}

Oracle make_cut(const Hypergraph& g) {
  std::vector<WeightedHyperedge> edges;
  for (const auto& e : g.edges()) edges.push_back({e.members, Rational(e.multiplicity)});
  return make_hypergraph_cut(g.ground(), edges);
}

long long delta_partition(const Hypergraph& g, const Partition& p) { return g.delta(p); }

long long p_stkl(ElementSet x, ElementSet all, int s, int t, long long k, long long l) {
  if (x == 0 || x == all) return 0;
  if (contains(x, t) && !contains(x, s)) return std::max(k, l);
  return k;
}

long long p_stkl_partition(const Partition& p, int s, int t, long long k, long long l) {
  long long c = 0;
  const ElementSet all = full_set(p.ground_size());
  for (ElementSet b : p.blocks()) c += p_stkl(b, all, s, t, k, l);
  return c;
}

namespace {

long long as_integer(const Rational& r) {
  if (!r.is_integer()) throw InternalInconsistency("non-integral value in an integral problem");
  return r.to_int64();
}

void check_terminals(const Hypergraph& g, int s, int t) {
  if (s < 0 || t < 0 || s >= g.n() || t >= g.n()) throw InvalidInput("terminal out of range");
  if (s == t) throw InvalidInput("s and t must differ");
}

void check_params(long long k, long long l) {
  if (k < 0 || l < 0) throw InvalidInput("k and l must be nonnegative");
}

Oracle materialize_if_small(const Oracle& f) { return f->n() <= 16 ? materialize(f) : f; }

// |δ(P)| = d_in(P) for any orientation.
Oracle delta_oracle(const Hypergraph& g) { return materialize_if_small(make_indegree(arbitrary_orientation(g))); }

struct NontrivialMin {
  long long value = 0;
  Partition partition;
};

// min over partitions with at least two blocks of |δ(P)| − k|P|
NontrivialMin nontrivial_min(const SetFunction& f, int root, long long k, SfmBackend backend) {
  NontrivialMin best;
  bool first = true;
  for (int u = 0; u < f.n(); ++u) {
    if (u == root) continue;
    auto r = min_st_partition(f, Rational(k), root, u, backend);
    long long v = as_integer(r.value.base);
    if (first || v < best.value) {
      best = {v, r.partition};
      first = false;
    }
  }
  return best;
}

}  // namespace

FeasibilityResult check_feasibility(const Hypergraph& g, int s, int t, long long k, long long l, SfmBackend backend) {
  check_terminals(g, s, t);
  check_params(k, l);
  Oracle f = delta_oracle(g);
  FeasibilityResult out;
  auto a = nontrivial_min(*f, s, k, backend);
  out.nontrivial_min = a.value;
  auto b = min_st_partition(*f, Rational(k), s, t, backend);
  out.st_min = as_integer(b.value.base) - (std::max(k, l) - k);
  // coarsest violator as witness
  if (a.value < 0) {
    out.feasible = false;
    for (int u = 0; u < g.n(); ++u) {
      if (u == s) continue;
      auto r = min_st_partition_extremal(f, Rational(k), s, u, Extremal::min_card, backend);
      if (as_integer(r.value.base) != a.value) continue;
      if (!out.witness || r.partition.size() < out.witness->size() ||
          (r.partition.size() == out.witness->size() && r.partition < *out.witness))
        out.witness = r.partition;
    }
  } else if (out.st_min < 0) {
    out.feasible = false;
    out.witness = min_st_partition_extremal(f, Rational(k), s, t, Extremal::min_card, backend).partition;
  }
  if (out.witness && g.delta(*out.witness) >= p_stkl_partition(*out.witness, s, t, k, l))
    throw InternalInconsistency("infeasibility witness does not violate the partition condition");
  return out;
}

namespace {

struct Minor {
  Hypergraph graph;
  std::vector<int> to_new;  // -1 for the deleted vertex
  std::vector<int> to_old;
};

// G − v: v and its incident edges deleted, vertices renumbered.
Minor delete_vertex(const Hypergraph& g, int v) {
  Minor m;
  m.to_new.assign(g.n(), -1);
  std::vector<std::string> labels;
  for (int u = 0; u < g.n(); ++u) {
    if (u == v) continue;
    m.to_new[u] = static_cast<int>(m.to_old.size());
    m.to_old.push_back(u);
    labels.push_back(g.ground().labels[u]);
  }
  std::vector<Hyperedge> edges;
  for (const auto& e : g.edges()) {
    if (contains(e.members, v)) continue;
    ElementSet mem = 0;
    for (int u : elements_of(e.members)) mem |= bit(m.to_new[u]);
    edges.push_back({mem, e.multiplicity});
  }
  m.graph = Hypergraph(GroundSet(labels), std::move(edges));
  return m;
}

}  // namespace

std::vector<long long> compute_x(const Hypergraph& g, int s, int t, long long k, long long l, XvVariant variant,
                                 SfmBackend backend) {
  check_terminals(g, s, t);
  check_params(k, l);
  const int n = g.n();
  const long long bonus = std::max(k, l) - k;
  auto p_single = [&](int u) { return u == t ? std::max(k, l) : k; };
  std::vector<long long> x(n, 0);
  std::vector<bool> done(n, false);
  for (int v = 0; v < n; ++v) {
    Minor m = delete_vertex(g, v);
    Oracle din = make_indegree(arbitrary_orientation(m.graph));
    std::vector<Value> lift(m.graph.n(), Value(0));
    if (variant == XvVariant::sequential_tightening)
      for (int u = 0; u < m.graph.n(); ++u)
        if (done[m.to_old[u]]) lift[u] = Value(x[m.to_old[u]] - p_single(m.to_old[u]));
    Oracle fp = make_function(
        m.graph.ground(),
        [din, lift](ElementSet u) {
          Value val = din->eval(u);
          if (set_size(u) == 1) val -= lift[lowest_element(u)];
          return val;
        },
        {}, Rational(1));
    fp = materialize_if_small(fp);
    const int ns = m.to_new[s];
    const int nt = m.to_new[t];
    long long y = as_integer(min_partition(*fp, Rational(k), backend).value.base);
    if (nt < 0) {
      // t deleted: no part can carry max{k,l}
    } else if (ns < 0) {
      y -= bonus;
    } else {
      long long st = as_integer(min_st_partition(*fp, Rational(k), ns, nt, backend).value.base) - bonus;
      y = std::min(y, st);
    }
    switch (variant) {
      case XvVariant::sequential_tightening:
      case XvVariant::offset:
        x[v] = g.degree(v) + y;
        break;
      case XvVariant::verbatim:
        x[v] = g.degree(v) + y - p_single(v);
        break;
    }
    done[v] = true;
  }
  return x;
}

Orientation realize_indegree(const Hypergraph& g, const std::vector<long long>& x) {
  const int n = g.n();
  if (static_cast<int>(x.size()) != n) throw InvalidInput("indegree vector has the wrong length");
  long long sum = 0;
  for (long long v : x) {
    if (v < 0) throw InvalidInput("indegrees must be nonnegative");
    sum += v;
  }
  const long long total = g.total_copies();
  if (sum != total) throw IndegreeInfeasible("indegrees sum to " + std::to_string(sum) + ", expected " +
                                                 std::to_string(total), g.ground().all());
  const int m = static_cast<int>(g.edges().size());
  const int source = 0;
  const int sink = m + n + 1;
  detail::FlowNetwork net(m + n + 2);
  std::vector<std::vector<std::pair<int, int>>> member_arcs(m);
  for (int i = 0; i < m; ++i) {
    const auto& e = g.edges()[i];
    net.add_arc(source, 1 + i, e.multiplicity);
    for (int v : elements_of(e.members)) member_arcs[i].emplace_back(v, net.add_arc(1 + i, 1 + m + v, total + 1));
  }
  for (int v = 0; v < n; ++v) net.add_arc(1 + m + v, sink, x[v]);
  long long flow = net.max_flow(source, sink);
  if (flow < total) {
    auto side = net.source_side(source);
    ElementSet Y = 0;
    for (int v = 0; v < n; ++v)
      if (side[1 + m + v]) Y |= bit(v);
    long long xy = 0;
    for (int v : elements_of(Y)) xy += x[v];
    if (xy >= g.inside(Y)) throw InternalInconsistency("min cut did not expose a deficient set");
    throw IndegreeInfeasible("no orientation with these indegrees; x(Y) < i(Y) for Y = {" +
                                 g.ground().format_set(Y) + "}",
                             Y);
  }
  Orientation o{g, std::vector<std::vector<int>>(m)};
  for (int i = 0; i < m; ++i)
    for (auto [v, arc] : member_arcs[i])
      for (long long c = 0; c < net.flow(arc); ++c) o.heads[i].push_back(v);
  o.validate();
  return o;
}

namespace {

// Vertex nodes 0..n-1; each (edge, head) group of c copies is a pair in→out of capacity c.
struct ArcModel {
  detail::FlowNetwork net;
  struct Group {
    int edge;
    int head;
    std::vector<int> copies;
    int in_node;
    int out_node;
  };
  std::vector<Group> groups;
  std::vector<int> group_of_node;

  explicit ArcModel(const Orientation& o) : net(0) {
    const int n = o.graph.n();
    std::vector<std::tuple<int, int, std::vector<int>>> gs;
    const auto& E = o.graph.edges();
    for (std::size_t i = 0; i < E.size(); ++i) {
      std::map<int, std::vector<int>> by_head;
      for (std::size_t c = 0; c < o.heads[i].size(); ++c) by_head[o.heads[i][c]].push_back(static_cast<int>(c));
      for (auto& [h, cs] : by_head) gs.emplace_back(static_cast<int>(i), h, cs);
    }
    net = detail::FlowNetwork(n + 2 * static_cast<int>(gs.size()));
    group_of_node.assign(n + 2 * gs.size(), -1);
    for (auto& [e, h, cs] : gs) {
      Group grp{e, h, cs, n + 2 * static_cast<int>(groups.size()), n + 2 * static_cast<int>(groups.size()) + 1};
      const long long cap = static_cast<long long>(cs.size());
      for (int v : elements_of(E[e].members))
        if (v != h) net.add_arc(v, grp.in_node, cap);
      net.add_arc(grp.in_node, grp.out_node, cap);
      net.add_arc(grp.out_node, h, cap);
      group_of_node[grp.in_node] = group_of_node[grp.out_node] = static_cast<int>(groups.size());
      groups.push_back(std::move(grp));
    }
  }

  // Vertices on the sink side of the last cut.
  ElementSet sink_side(int source, int n) const {
    auto side = net.source_side(source);
    ElementSet u = 0;
    for (int v = 0; v < n; ++v)
      if (!side[v]) u |= bit(v);
    return u;
  }
};

VerifyResult check_flow(ArcModel& model, const Orientation& o, int from, int to, long long need,
                        const std::string& cond) {
  if (need <= 0) return {};
  long long f = model.net.max_flow(from, to);
  if (f >= need) return {};
  ElementSet u = model.sink_side(from, o.graph.n());
  if (o.in_degree(u) >= need) throw InternalInconsistency("cut set does not certify the violation");
  return {false, u, cond};
}

}  // namespace

VerifyResult verify_thresholds(const Orientation& o, int s, int t, long long k, long long k1, long long k2) {
  o.validate();
  check_terminals(o.graph, s, t);
  ArcModel model(o);
  const int n = o.graph.n();
  for (int v = 0; v < n && k > 0; ++v) {
    if (v == s) continue;
    if (auto r = check_flow(model, o, s, v, k, "k"); !r.ok) return r;
    if (auto r = check_flow(model, o, v, s, k, "k"); !r.ok) return r;
  }
  if (auto r = check_flow(model, o, s, t, k1, "k1"); !r.ok) return r;
  if (auto r = check_flow(model, o, t, s, k2, "k2"); !r.ok) return r;
  return {};
}

VerifyResult verify_orientation(const Orientation& o, int s, int t, long long k, long long l) {
  o.validate();
  check_terminals(o.graph, s, t);
  ArcModel model(o);
  const int n = o.graph.n();
  for (int v = 0; v < n && k > 0; ++v) {
    if (v == s) continue;
    if (auto r = check_flow(model, o, s, v, k, "k"); !r.ok) return r;
    if (auto r = check_flow(model, o, v, s, k, "k"); !r.ok) return r;
  }
  return check_flow(model, o, s, t, l, "l");
}

PathPacking st_path_packing(const Orientation& o, int s, int t) {
  o.validate();
  check_terminals(o.graph, s, t);
  ArcModel model(o);
  PathPacking out;
  out.count = model.net.max_flow(s, t);
  const int nodes = model.net.nodes();
  std::vector<std::vector<int>> out_arcs(nodes);
  std::vector<long long> rest(model.net.arcs());
  for (int a = 0; a < model.net.arcs(); ++a) {
    rest[a] = model.net.flow(a);
    if (rest[a] > 0) out_arcs[model.net.arc_from(a)].push_back(a);
  }
  std::vector<std::size_t> next_copy(model.groups.size(), 0);
  for (long long p = 0; p < out.count; ++p) {
    std::vector<int> nodes_on{s};
    std::vector<int> arcs_on;
    std::vector<int> pos(nodes, -1);
    pos[s] = 0;
    while (nodes_on.back() != t) {
      int u = nodes_on.back();
      int arc = -1;
      for (int a : out_arcs[u])
        if (rest[a] > 0) {
          arc = a;
          break;
        }
      if (arc < 0) throw InternalInconsistency("flow decomposition got stuck");
      int w = model.net.arc_to(arc);
      if (pos[w] >= 0) {
        // cancel the cycle and continue from w
        rest[arc] -= 1;
        for (std::size_t j = pos[w]; j < arcs_on.size(); ++j) rest[arcs_on[j]] -= 1;
        for (std::size_t j = pos[w] + 1; j < nodes_on.size(); ++j) pos[nodes_on[j]] = -1;
        nodes_on.resize(pos[w] + 1);
        arcs_on.resize(pos[w]);
        continue;
      }
      pos[w] = static_cast<int>(nodes_on.size());
      nodes_on.push_back(w);
      arcs_on.push_back(arc);
    }
    for (int a : arcs_on) rest[a] -= 1;
    std::vector<PathStep> path;
    for (std::size_t j = 0; j + 1 < nodes_on.size(); ++j) {
      int gidx = model.group_of_node[nodes_on[j + 1]];
      if (gidx < 0 || nodes_on[j + 1] != model.groups[gidx].in_node) continue;
      auto& grp = model.groups[gidx];
      if (next_copy[gidx] >= grp.copies.size()) throw InternalInconsistency("copy used twice");
      path.push_back({grp.edge, grp.copies[next_copy[gidx]++], nodes_on[j], grp.head});
    }
    out.paths.push_back(std::move(path));
  }
  return out;
}

EllResult max_ell_given_k(const Hypergraph& g, int s, int t, long long k, SfmBackend backend) {
  check_terminals(g, s, t);
  check_params(k, 0);
  Oracle f = delta_oracle(g);
  auto a = nontrivial_min(*f, s, k, backend);
  if (a.value < 0) throw InfeasibleError("no k-hyperarc-connected orientation exists", a.partition);
  // coarsest tight certificate
  auto r = min_st_partition_extremal(f, Rational(k), s, t, Extremal::min_card, backend);
  return {as_integer(r.value.base) + k, r.partition};
}

KResult max_k_given_ell(const Hypergraph& g, int s, int t, long long l, SfmBackend backend) {
  check_terminals(g, s, t);
  check_params(0, l);
  Oracle cut = make_cut(g);
  auto mc = sfm_constrained(*cut, bit(s), bit(t), backend);
  if (as_integer(mc.value.base) < l) {
    ElementSet u = mc.minimizer;
    throw InfeasibleError("fewer than l hyperedge-disjoint s-t paths",
                          Partition(g.n(), {u, g.ground().all() & ~u}));
  }
  Oracle f = delta_oracle(g);
  KResult out;
  std::optional<Rational> lambda_a;
  for (int u = 0; u < g.n(); ++u) {
    if (u == s) continue;
    auto c = curve(f, CurveMode::st, s, u, {backend});
    for (const auto& seg : c.segments) {
      Rational root = seg.value / Rational(seg.attainer.size());
      if (!lambda_a || root < *lambda_a) {
        lambda_a = root;
        out.alpha_certificate = seg.attainer;
      }
    }
  }
  out.alpha = lambda_a->floor().to_int64();
  std::optional<Rational> lambda_b;
  auto c = curve(f, CurveMode::st, s, t, {backend});
  for (const auto& seg : c.segments) {
    Rational root = (seg.value - Rational(l)) / Rational(seg.attainer.size() - 1);
    if (!lambda_b || root < *lambda_b) {
      lambda_b = root;
      out.beta_certificate = seg.attainer;
    }
  }
  out.beta = lambda_b->floor().to_int64();
  out.k = std::min(out.alpha, out.beta);
  return out;
}

OrientationCertificate find_orientation(const Hypergraph& g, int s, int t, long long k, long long l,
                                        const OrientationOptions& options) {
  OrientationCertificate cert;
  auto feas = check_feasibility(g, s, t, k, l, options.backend);
  cert.checked.push_back("partition condition over nontrivial partitions");
  cert.checked.push_back("partition condition over st-separating partitions");
  if (!feas.feasible) {
    cert.witness = feas.witness;
    return cert;
  }
  cert.x = compute_x(g, s, t, k, l, options.variant, options.backend);
  Orientation o;
  try {
    o = realize_indegree(g, cert.x);
  } catch (const IndegreeInfeasible& e) {
    throw InternalInconsistency(std::string("indegree vector not realizable: ") + e.what());
  }
  cert.checked.push_back("indegree vector realized");
  auto v = verify_orientation(o, s, t, k, l);
  if (!v.ok)
    throw InternalInconsistency("orientation fails the " + v.condition + " condition on {" +
                                g.ground().format_set(*v.violating) + "}");
  cert.checked.push_back("k-hyperarc-connectivity");
  cert.checked.push_back("l hyperedge-disjoint s-t paths");
  cert.feasible = true;
  cert.orientation = std::move(o);
  return cert;
}

Orientation reorient_k1_k2(const Hypergraph& g, int s, int t, long long k, long long l, long long k1, long long k2,
                           const OrientationOptions& options) {
  check_params(k, l);
  if (k1 < k || k2 < k) throw InvalidInput("k1 and k2 must be at least k");
  if (k1 + k2 != l + k) throw InvalidInput("k1 + k2 must equal l + k");
  auto cert = find_orientation(g, s, t, k, l, options);
  if (!cert.feasible) throw InfeasibleError("no (k,(s,t),l)-orientation exists", *cert.witness);
  Orientation o = *cert.orientation;
  if (k2 > k) {
    auto packing = st_path_packing(o, s, t);
    if (packing.count < k2 - k) throw InternalInconsistency("too few s-t paths to reverse");
    for (long long p = 0; p < k2 - k; ++p)
      for (const auto& step : packing.paths[p]) o.heads[step.edge][step.copy] = step.from;
  }
  auto v = verify_thresholds(o, s, t, k, k1, k2);
  if (!v.ok)
    throw InternalInconsistency("reoriented graph fails the " + v.condition + " threshold on {" +
                                g.ground().format_set(*v.violating) + "}");
  return o;
}

}  // namespace partseq
