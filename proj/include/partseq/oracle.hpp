#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "partseq/element_set.hpp"
#include "partseq/partition.hpp"
#include "partseq/value.hpp"

namespace partseq {

struct OracleFlags {
  bool symmetric = false;
  bool monotone = false;
  bool posimodular = false;
  bool nonnegative = false;
};

// A set function on a ground set of at most 64 elements. Evaluation must be pure.
class SetFunction {
 public:
  SetFunction(GroundSet ground, OracleFlags flags, std::optional<Rational> granularity);
  virtual ~SetFunction() = default;
  SetFunction(const SetFunction&) = delete;
  SetFunction& operator=(const SetFunction&) = delete;

  const GroundSet& ground() const { return ground_; }
  int n() const { return ground_.n; }
  const OracleFlags& flags() const { return flags_; }
  const std::optional<Rational>& granularity() const { return granularity_; }

  Value eval(ElementSet u) const {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return evaluate(u);
  }
  Value operator()(ElementSet u) const { return eval(u); }
  std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }

  // True when values carry the ε_card tier (at most one layer allowed).
  virtual bool uses_tier() const { return false; }
  // Explicit value tables expose their storage, indexed by bitmask.
  virtual const std::vector<Value>* table() const { return nullptr; }

 protected:
  virtual Value evaluate(ElementSet u) const = 0;

 private:
  GroundSet ground_;
  OracleFlags flags_;
  std::optional<Rational> granularity_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

using Oracle = std::shared_ptr<const SetFunction>;

Value evaluate_partition(const SetFunction& f, const Partition& p);

struct WeightedEdge {
  int u = 0;
  int v = 0;
  Rational weight = 1;
};

struct WeightedHyperedge {
  ElementSet members = 0;
  Rational weight = 1;
};

struct DirectedHyperarc {
  ElementSet members = 0;
  int head = 0;
  long long copies = 1;
};

Oracle make_graph_cut(GroundSet g, const std::vector<WeightedEdge>& edges);
Oracle make_hypergraph_cut(GroundSet g, const std::vector<WeightedHyperedge>& edges);
// covering[v] lists the items covered by element v; f(U) = weight of items covered by U.
Oracle make_coverage(GroundSet g, const std::vector<std::vector<int>>& covering,
                     const std::vector<Rational>& item_weights);
// d^in(U) = copies of arcs with head in U and some member outside U.
Oracle make_indegree(GroundSet g, const std::vector<DirectedHyperarc>& arcs);
// values[mask] for every mask in [0, 2^n); n <= 20.
Oracle make_table(GroundSet g, std::vector<Value> values, OracleFlags flags = {},
                  std::optional<Rational> granularity = {});
Oracle make_function(GroundSet g, std::function<Value(ElementSet)> fn, OracleFlags flags = {},
                     std::optional<Rational> granularity = {});

// Nonempty U ↦ (f(U), sign); ∅ unchanged.
Oracle perturb_cardinality(const Oracle& f, int sign);

enum class StrictMode { symmetric, monotone, automatic };
// h = f + eps·|X||V∖X| (symmetric) or h = f + eps·(|X||V∖X| + C(|X|,2)) (monotone).
Oracle perturb_strict(const Oracle& f, StrictMode mode, const Rational& eps);

// Caches every value in a table (n <= 20). Tables are returned unchanged.
Oracle materialize(const Oracle& f);

// The oracle's granularity, or the gcd of all values when it can be enumerated (n <= 20).
std::optional<Rational> effective_granularity(const SetFunction& f);

// eps safe for strictness perturbation at granularity gamma: gamma / (2·C(n,2)·n + 1).
Rational strict_perturbation_eps(int n, const Rational& gamma);

struct PropertyCheck {
  bool holds = true;
  std::optional<std::pair<ElementSet, ElementSet>> witness;
};

constexpr int kDefaultCheckBound = 12;

// strict_on_intersecting: require strict inequality for every intersecting pair.
PropertyCheck check_submodular(const SetFunction& f, bool strict_on_intersecting = false,
                               int max_n = kDefaultCheckBound);
PropertyCheck check_posimodular(const SetFunction& f, int max_n = kDefaultCheckBound);
PropertyCheck check_monotone(const SetFunction& f, int max_n = kDefaultCheckBound);
PropertyCheck check_symmetric(const SetFunction& f, int max_n = kDefaultCheckBound);

}  // namespace partseq
