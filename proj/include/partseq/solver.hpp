#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "partseq/oracle.hpp"

namespace partseq {

enum class SfmBackend { automatic, exhaustive, min_norm_point };
enum class Extremal { min_card, max_card };

// Above this many free atoms the automatic backend switches to min-norm-point.
constexpr int kExhaustiveAtomLimit = 20;

struct SolverStats {
  std::uint64_t oracle_calls = 0;
  std::string backend;
};

struct SetMinimum {
  ElementSet minimizer = 0;
  Value value;
  SolverStats stats;
};

// Partition of a subset S (blocks in canonical order).
struct BlocksMinimum {
  std::vector<ElementSet> blocks;
  Value value;
  SolverStats stats;
};

struct PartitionMinimum {
  Partition partition;
  Value value;
  SolverStats stats;
};

SetMinimum sfm(const SetFunction& f, SfmBackend backend = SfmBackend::automatic);
// Minimizes over include ⊆ U ⊆ V∖exclude.
SetMinimum sfm_constrained(const SetFunction& f, ElementSet include, ElementSet exclude,
                           SfmBackend backend = SfmBackend::automatic);

// argmin over partitions 𝒫 of S of f(𝒫) − λ|𝒫|.
BlocksMinimum dilworth_truncation(const SetFunction& f, const Rational& lambda, ElementSet S,
                                  SfmBackend backend = SfmBackend::automatic);

PartitionMinimum min_partition(const SetFunction& f, const Rational& lambda,
                               SfmBackend backend = SfmBackend::automatic);
// Minimizes b(U) = f(U) − λ + m(U) over s ∈ U ⊆ V−t.
PartitionMinimum min_st_partition(const SetFunction& f, const Rational& lambda, int s, int t,
                                  SfmBackend backend = SfmBackend::automatic);

// Attainers of least / most cardinality, via the ε_card tier. Values are returned without the tier.
PartitionMinimum min_partition_extremal(const Oracle& f, const Rational& lambda, Extremal which,
                                        SfmBackend backend = SfmBackend::automatic);
PartitionMinimum min_st_partition_extremal(const Oracle& f, const Rational& lambda, int s, int t,
                                           Extremal which, SfmBackend backend = SfmBackend::automatic);

// f(𝒫) − λ|𝒫|
Value partition_objective(const SetFunction& f, const Partition& p, const Rational& lambda);

namespace detail {

using SetEval = std::function<Value(ElementSet)>;

struct AtomMinimum {
  std::uint64_t chosen = 0;  // bitmask over atoms
  ElementSet set = 0;        // base ∪ chosen atoms
  Value value;
};

// Minimizes F(base ∪ ⋃_{j∈J} atoms[j]) − Σ_{j∈J} weights[j] over J. Atoms must be disjoint and
// disjoint from base. Ties go to the numerically smallest J.
AtomMinimum minimize_over_atoms(const SetEval& F, const std::vector<ElementSet>& atoms, ElementSet base,
                                const std::vector<Value>* weights, SfmBackend backend,
                                std::string* backend_used = nullptr);

}  // namespace detail

}  // namespace partseq
