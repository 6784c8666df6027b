#include <queue>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

#include "partseq/detail/flow.hpp"

namespace partseq::detail {

namespace {

using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using Graph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, long long,
                    boost::property<boost::edge_residual_capacity_t, long long,
                                    boost::property<boost::edge_reverse_t, Traits::edge_descriptor>>>>;
using Edge = Traits::edge_descriptor;

}  // namespace

struct FlowNetwork::Impl {
  Graph g;
  std::vector<Edge> forward;
  std::vector<std::pair<int, int>> ends;
};

FlowNetwork::FlowNetwork(int nodes) : impl_(std::make_unique<Impl>()) { impl_->g = Graph(nodes); }
FlowNetwork::~FlowNetwork() = default;
FlowNetwork::FlowNetwork(FlowNetwork&&) noexcept = default;
FlowNetwork& FlowNetwork::operator=(FlowNetwork&&) noexcept = default;

int FlowNetwork::add_arc(int from, int to, long long capacity) {
  auto& g = impl_->g;
  Edge e = boost::add_edge(from, to, g).first;
  Edge r = boost::add_edge(to, from, g).first;
  auto cap = boost::get(boost::edge_capacity, g);
  auto rev = boost::get(boost::edge_reverse, g);
  auto res = boost::get(boost::edge_residual_capacity, g);
  cap[e] = capacity;
  cap[r] = 0;
  res[e] = capacity;
  res[r] = 0;
  rev[e] = r;
  rev[r] = e;
  impl_->forward.push_back(e);
  impl_->ends.emplace_back(from, to);
  return static_cast<int>(impl_->forward.size()) - 1;
}

long long FlowNetwork::max_flow(int source, int sink) {
  if (source == sink) return 0;
  return boost::push_relabel_max_flow(impl_->g, source, sink);
}

long long FlowNetwork::flow(int arc) const {
  const auto& g = impl_->g;
  Edge e = impl_->forward[arc];
  return boost::get(boost::edge_capacity, g)[e] - boost::get(boost::edge_residual_capacity, g)[e];
}

int FlowNetwork::arc_from(int arc) const { return impl_->ends[arc].first; }
int FlowNetwork::arc_to(int arc) const { return impl_->ends[arc].second; }
int FlowNetwork::arcs() const { return static_cast<int>(impl_->forward.size()); }
int FlowNetwork::nodes() const { return static_cast<int>(boost::num_vertices(impl_->g)); }

std::vector<bool> FlowNetwork::source_side(int source) const {
  const auto& g = impl_->g;
  auto res = boost::get(boost::edge_residual_capacity, g);
  std::vector<bool> seen(boost::num_vertices(g), false);
  std::queue<int> q;
  q.push(source);
  seen[source] = true;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (auto [it, end] = boost::out_edges(u, g); it != end; ++it) {
      int v = static_cast<int>(boost::target(*it, g));
      if (!seen[v] && res[*it] > 0) {
        seen[v] = true;
        q.push(v);
      }
    }
  }
  return seen;
}

}  // namespace partseq::detail
