#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "partseq/kpartition.hpp"
#include "partseq/oracle.hpp"
#include "partseq/pps.hpp"

namespace partseq {

class Hypergraph;
struct Orientation;

namespace reference {

struct EnumerationBudget {
  int max_n = 9;
  long long max_orientations = 100000;
};

struct PartitionFilter {
  enum class Kind { all, st_separating, exact_blocks, singleton_part };
  Kind kind = Kind::all;
  int s = -1;
  int t = -1;
  int k = 0;
  int v = -1;

  static PartitionFilter any() { return {}; }
  static PartitionFilter st(int s, int t) { return {Kind::st_separating, s, t, 0, -1}; }
  static PartitionFilter blocks(int k) { return {Kind::exact_blocks, -1, -1, k, -1}; }
  static PartitionFilter singleton(int v) { return {Kind::singleton_part, -1, -1, 0, v}; }
  bool accepts(const std::vector<int>& rgs, int nblocks) const;
};

// Restricted growth strings, generated lazily. Every matching partition appears once.
class PartitionStream {
 public:
  PartitionStream(int n, std::vector<PartitionFilter> filters, EnumerationBudget budget = {});
  std::optional<Partition> next();

 private:
  bool advance();
  int n_;
  std::vector<PartitionFilter> filters_;
  std::vector<int> a_;
  std::vector<int> prefix_max_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<Partition> enumerate_partitions(int n, std::vector<PartitionFilter> filters = {},
                                            EnumerationBudget budget = {});

PiecewiseLinearCurve brute_curve(const SetFunction& f, CurveMode mode, std::optional<int> s = {},
                                 std::optional<int> t = {}, EnumerationBudget budget = {});

// Calls visit for every head assignment; stops early when visit returns false.
void for_each_orientation(const Hypergraph& g, const std::function<bool(const Orientation&)>& visit,
                          EnumerationBudget budget = {});
std::vector<Orientation> brute_orientations(const Hypergraph& g, EnumerationBudget budget = {});

KPartitionResult brute_best_k_partition(const SetFunction& f, int s, int t, int k, EnumerationBudget budget = {});

}  // namespace reference
}  // namespace partseq
