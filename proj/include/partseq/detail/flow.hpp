#pragma once

#include <memory>
#include <vector>

namespace partseq::detail {

// Integer-capacity directed network; a thin layer over Boost.Graph push-relabel.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes);
  ~FlowNetwork();
  FlowNetwork(FlowNetwork&&) noexcept;
  FlowNetwork& operator=(FlowNetwork&&) noexcept;

  int add_arc(int from, int to, long long capacity);
  long long max_flow(int source, int sink);
  // Flow on an arc after the last max_flow call.
  long long flow(int arc) const;
  int arc_from(int arc) const;
  int arc_to(int arc) const;
  int nodes() const;
  int arcs() const;
  // Nodes reachable from source in the residual network of the last max_flow.
  std::vector<bool> source_side(int source) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace partseq::detail
