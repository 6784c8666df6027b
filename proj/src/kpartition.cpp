#include <algorithm>

#include "partseq/errors.hpp"
#include "partseq/kpartition.hpp"
#include "partseq/reference.hpp"

namespace partseq {

namespace {

Rational fvalue(const SetFunction& f, const Partition& p) { return evaluate_partition(f, p).base; }

std::vector<ElementSet> without(const std::vector<ElementSet>& blocks, ElementSet drop) {
  std::vector<ElementSet> out;
  for (ElementSet b : blocks)
    if (b != drop) out.push_back(b);
  return out;
}

ElementSet union_range(const std::vector<ElementSet>& B, int from, int to) {
  ElementSet u = 0;
  for (int j = from; j <= to; ++j) u |= B[j - 1];
  return u;
}

}  // namespace

KPartitionResult approx_st_k_partition_from_sequence(const SetFunction& f, const PartitionSequence& seq, int k) {
  const int n = f.n();
  if (seq.kind != SequenceKind::st) throw InvalidInput("k-partition needs an st-separating sequence");
  if (k < 2 || k > n) throw InvalidInput("k must lie in [2, n]");
  const auto& P = seq.partitions;
  if (P.empty()) throw InvalidInput("empty sequence");
  for (std::size_t j = 0; j + 1 < P.size(); ++j)
    if (P[j].size() >= P[j + 1].size()) throw InvalidInput("sequence sizes are not strictly increasing");

  KPartitionResult out;
  for (const auto& p : P)
    if (p.size() == k) {
      out.partition = p;
      out.value = evaluate_partition(f, p);
      out.mode = "exact_from_sequence";
      return out;
    }
  int i = -1;
  for (std::size_t j = 1; j < P.size(); ++j)
    if (P[j - 1].size() < k && k < P[j].size()) i = static_cast<int>(j);
  if (i < 0) throw InvalidInput("no bracketing pair in the sequence");
  out.lower_index = i - 1;
  const Partition& prev = P[i - 1];
  const Partition& next = P[i];
  const int a = k - prev.size();

  auto sorted_parts = [&](ElementSet X) {
    std::vector<ElementSet> B;
    for (ElementSet b : next.blocks())
      if (is_subset(b, X)) B.push_back(b);
    std::stable_sort(B.begin(), B.end(), [&](ElementSet x, ElementSet y) {
      Value fx = f.eval(x), fy = f.eval(y);
      if (fx != fy) return fx < fy;
      return lowest_element(x) < lowest_element(y);
    });
    return B;
  };

  if (auto X = is_refinement_up_to_one_set(next, prev)) {
    auto B = sorted_parts(*X);
    const int m = static_cast<int>(B.size());
    if (a + 1 > m) throw InternalInconsistency("too few refined parts for interpolation");
    auto blocks = without(prev.blocks(), *X);
    for (int j = 1; j <= a; ++j) blocks.push_back(B[j - 1]);
    blocks.push_back(union_range(B, a + 1, m));
    out.partition = Partition(n, std::move(blocks));
    out.value = evaluate_partition(f, out.partition);
    out.mode = "interpolated(refinement)";
    out.candidates.push_back({"refinement", out.value});
  } else if (auto xy = is_st_refinement_up_to_two_sets(next, prev, seq.s, seq.t)) {
    const ElementSet X = xy->first;
    const ElementSet Y = xy->second;
    auto B = sorted_parts(X);
    const int m = static_cast<int>(B.size());
    if (a > m || next.size() - k + 1 > m || a < 1)
      throw InternalInconsistency("index ranges of the interpolation are empty");
    auto base = without(prev.blocks(), X);

    auto s1 = base;
    for (int j = 1; j <= a; ++j) s1.push_back(B[j - 1]);
    s1.push_back((X & Y) | union_range(B, a + 1, m));

    auto s2 = base;
    for (int j = 1; j <= a - 1; ++j) s2.push_back(B[j - 1]);
    s2.push_back(X & Y);
    s2.push_back(union_range(B, a, m));

    // merge the |P_i|-k+1 most expensive parts inside X
    const int merged = next.size() - k + 1;
    const int first = m - merged + 1;
    std::vector<ElementSet> pi;
    for (ElementSet b : next.blocks()) {
      bool inside = false;
      for (int j = first; j <= m; ++j) inside = inside || b == B[j - 1];
      if (!inside) pi.push_back(b);
    }
    pi.push_back(union_range(B, first, m));

    std::vector<std::pair<std::string, Partition>> cands = {{"sigma1", Partition(n, s1)},
                                                            {"sigma2", Partition(n, s2)},
                                                            {"pi", Partition(n, pi)}};
    bool first_c = true;
    for (auto& [name, p] : cands) {
      if (p.size() != k || !p.is_st_separating(seq.s, seq.t))
        throw InternalInconsistency("candidate " + name + " is not an st-separating k-partition");
      Value v = evaluate_partition(f, p);
      out.candidates.push_back({name, v});
      if (first_c || v < out.value) {
        out.partition = p;
        out.value = v;
        out.mode = "interpolated(" + name + ")";
        first_c = false;
      }
    }
  } else {
    throw InvalidInput("bracketing step is neither kind of refinement");
  }

  if (out.partition.size() != k || !out.partition.is_st_separating(seq.s, seq.t))
    throw InternalInconsistency("result is not an st-separating k-partition");

  const Rational fp = out.value.base;
  const Rational f_prev = fvalue(f, prev);
  const Rational f_next = fvalue(f, next);
  const Rational ratio = Rational(a) / Rational(next.size() - prev.size() + 1);
  out.bounds.push_back({"upper f(P_i)", f_next, fp <= f_next});
  if (f.flags().posimodular) {
    Rational b = f_prev + Rational(2) * ratio * f_next;
    out.bounds.push_back({"upper posimodular", b, fp <= b});
  }
  if (f.flags().monotone) {
    Rational b = f_prev + ratio * f_next;
    out.bounds.push_back({"upper monotone", b, fp <= b});
  }
  const Rational span(next.size() - prev.size());
  out.bounds.push_back({"lower f(P_{i-1})", f_prev, true, true});
  out.bounds.push_back({"lower interpolation",
                        (Rational(next.size() - k) / span) * f_prev + (Rational(a) / span) * f_next, true, true});
  return out;
}

KPartitionResult approx_st_k_partition(const Oracle& f, int s, int t, int k, const PpsOptions& options) {
  if (k < 2 || k > f->n()) throw InvalidInput("k must lie in [2, n]");
  auto seq = compute_st_pps(f, s, t, options);
  return approx_st_k_partition_from_sequence(*f, seq, k);
}

KPartitionResult exact_st_k_partition(const SetFunction& f, int s, int t, int k, int max_n) {
  reference::EnumerationBudget budget;
  budget.max_n = max_n;
  return reference::brute_best_k_partition(f, s, t, k, budget);
}

}  // namespace partseq
