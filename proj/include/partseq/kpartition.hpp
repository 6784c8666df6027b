#pragma once

#include <optional>
#include <string>
#include <vector>

#include "partseq/pps.hpp"

namespace partseq {

struct NamedValue {
  std::string name;
  Value value;
};

// An upper or lower bound of the analysis, evaluated on this run.
struct BoundCheck {
  std::string name;
  Rational bound;
  bool holds = true;
  bool lower = false;  // lower bounds on OPT; holds is only meaningful for upper bounds
};

struct KPartitionResult {
  Partition partition;
  Value value;
  // exact_from_sequence | interpolated(refinement) | interpolated(sigma1|sigma2|pi) | exhaustive
  std::string mode;
  std::vector<NamedValue> candidates;
  std::vector<BoundCheck> bounds;
  int lower_index = -1;  // i-1 (0-based) of the bracketing pair, when interpolated
};

KPartitionResult approx_st_k_partition(const Oracle& f, int s, int t, int k, const PpsOptions& options = {});
// Algorithm on a given sequence; rejects sequences whose sizes are not strictly increasing.
KPartitionResult approx_st_k_partition_from_sequence(const SetFunction& f, const PartitionSequence& seq, int k);

constexpr int kExactKPartitionBound = 9;
KPartitionResult exact_st_k_partition(const SetFunction& f, int s, int t, int k, int max_n = kExactKPartitionBound);

}  // namespace partseq
