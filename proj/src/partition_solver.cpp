#include <algorithm>
#include <unordered_map>

#include "partseq/errors.hpp"
#include "partseq/solver.hpp"

namespace partseq {

namespace {

constexpr int kTabulateLimit = 16;

// Tables make the inner loops lookups; small instances are always tabulated.
Oracle tabulated(const SetFunction& f) {
  Oracle view(std::shared_ptr<const SetFunction>(&f, [](const SetFunction*) {}));
  if (f.table() != nullptr || f.n() > kTabulateLimit) return view;
  return materialize(view);
}

detail::SetEval evaluator(const SetFunction& f) {
  if (const auto* t = f.table()) return [t](ElementSet u) { return (*t)[u]; };
  return [&f](ElementSet u) { return f.eval(u); };
}

void sort_blocks(std::vector<ElementSet>& blocks) {
  std::sort(blocks.begin(), blocks.end(),
            [](ElementSet a, ElementSet b) { return lowest_element(a) < lowest_element(b); });
}

BlocksMinimum dilworth_impl(const detail::SetEval& F, const Rational& lambda, ElementSet S, SfmBackend backend) {
  std::vector<ElementSet> blocks;
  std::vector<Value> pv;
  Value total;
  BlocksMinimum out;
  for (int v : elements_of(S)) {
    auto p = [&](ElementSet u) { return F(u) - Value(lambda); };
    std::string used;
    auto r = detail::minimize_over_atoms(p, blocks, bit(v), &pv, backend, &used);
    if (out.stats.backend.empty() || used != "exhaustive") out.stats.backend = used;
    total += r.value;
    std::vector<ElementSet> nb;
    std::vector<Value> np;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if ((r.chosen >> j) & 1U) continue;
      nb.push_back(blocks[j]);
      np.push_back(pv[j]);
    }
    nb.push_back(r.set);
    np.push_back(p(r.set));
    blocks = std::move(nb);
    pv = std::move(np);
  }
  sort_blocks(blocks);
  out.blocks = std::move(blocks);
  out.value = std::move(total);
  return out;
}

}  // namespace

Value partition_objective(const SetFunction& f, const Partition& p, const Rational& lambda) {
  return evaluate_partition(f, p) - Value(lambda * Rational(p.size()));
}

BlocksMinimum dilworth_truncation(const SetFunction& f, const Rational& lambda, ElementSet S, SfmBackend backend) {
  if (S == 0) throw InvalidInput("Dilworth truncation needs a nonempty set");
  if (!is_subset(S, f.ground().all())) throw InvalidInput("set outside ground set");
  Oracle t = tabulated(f);
  std::uint64_t before = f.calls();
  BlocksMinimum out = dilworth_impl(evaluator(*t), lambda, S, backend);
  out.stats.oracle_calls = f.calls() - before;
  return out;
}

PartitionMinimum min_partition(const SetFunction& f, const Rational& lambda, SfmBackend backend) {
  auto r = dilworth_truncation(f, lambda, f.ground().all(), backend);
  return {Partition(f.n(), std::move(r.blocks)), std::move(r.value), std::move(r.stats)};
}

PartitionMinimum min_st_partition(const SetFunction& f, const Rational& lambda, int s, int t, SfmBackend backend) {
  if (s == t) throw InvalidInput("s and t must differ");
  if (s < 0 || t < 0 || s >= f.n() || t >= f.n()) throw InvalidInput("terminal out of range");
  Oracle tab = tabulated(f);
  auto F = evaluator(*tab);
  std::uint64_t before = f.calls();
  const ElementSet all = f.ground().all();
  std::unordered_map<ElementSet, BlocksMinimum> memo;
  std::string inner_backend;
  auto m = [&](ElementSet u) -> const BlocksMinimum& {
    auto it = memo.find(u);
    if (it != memo.end()) return it->second;
    auto r = dilworth_impl(F, lambda, all & ~u, backend);
    inner_backend = r.stats.backend;
    return memo.emplace(u, std::move(r)).first->second;
  };
  auto b = [&](ElementSet u) { return F(u) - Value(lambda) + m(u).value; };
  std::vector<ElementSet> atoms;
  for (int v : elements_of(all & ~(bit(s) | bit(t)))) atoms.push_back(bit(v));
  PartitionMinimum out;
  auto r = detail::minimize_over_atoms(b, atoms, bit(s), nullptr, backend, &out.stats.backend);
  std::vector<ElementSet> blocks = m(r.set).blocks;
  blocks.push_back(r.set);
  out.partition = Partition(f.n(), std::move(blocks));
  out.value = r.value;
  if (!inner_backend.empty() && inner_backend != out.stats.backend) out.stats.backend += "+" + inner_backend;
  out.stats.oracle_calls = f.calls() - before;
  return out;
}

namespace {

Value strip(Value v) {
  v.eps_card = Rational();
  return v;
}

}  // namespace

PartitionMinimum min_partition_extremal(const Oracle& f, const Rational& lambda, Extremal which,
                                        SfmBackend backend) {
  auto g = perturb_cardinality(f, which == Extremal::min_card ? 1 : -1);
  std::uint64_t before = f->calls();
  auto r = min_partition(*g, lambda, backend);
  r.value = strip(std::move(r.value));
  r.stats.oracle_calls = f->calls() - before;
  return r;
}

PartitionMinimum min_st_partition_extremal(const Oracle& f, const Rational& lambda, int s, int t, Extremal which,
                                           SfmBackend backend) {
  auto g = perturb_cardinality(f, which == Extremal::min_card ? 1 : -1);
  std::uint64_t before = f->calls();
  auto r = min_st_partition(*g, lambda, s, t, backend);
  r.value = strip(std::move(r.value));
  r.stats.oracle_calls = f->calls() - before;
  return r;
}

}  // namespace partseq
