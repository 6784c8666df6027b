#include <map>

#include "partseq/errors.hpp"
#include "partseq/orientation.hpp"
#include "partseq/reference.hpp"

namespace partseq::reference {

bool PartitionFilter::accepts(const std::vector<int>& rgs, int nblocks) const {
  switch (kind) {
    case Kind::all:
      return true;
    case Kind::st_separating:
      return rgs[s] != rgs[t];
    case Kind::exact_blocks:
      return nblocks == k;
    case Kind::singleton_part:
      for (std::size_t i = 0; i < rgs.size(); ++i)
        if (static_cast<int>(i) != v && rgs[i] == rgs[v]) return false;
      return true;
  }
  return false;
}

PartitionStream::PartitionStream(int n, std::vector<PartitionFilter> filters, EnumerationBudget budget)
    : n_(n), filters_(std::move(filters)) {
  if (n < 1) throw InvalidInput("n must be positive");
  if (n > budget.max_n) throw BudgetExceeded("partition enumeration refused above n = " + std::to_string(budget.max_n));
  for (const auto& f : filters_) {
    if (f.kind == PartitionFilter::Kind::st_separating &&
        (f.s < 0 || f.t < 0 || f.s >= n || f.t >= n || f.s == f.t))
      throw InvalidInput("bad terminals in filter");
    if (f.kind == PartitionFilter::Kind::singleton_part && (f.v < 0 || f.v >= n))
      throw InvalidInput("bad vertex in filter");
  }
  a_.assign(n, 0);
  prefix_max_.assign(n, 0);
}

// Next restricted growth string: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
bool PartitionStream::advance() {
  if (!started_) {
    started_ = true;
    return true;
  }
  for (int i = n_ - 1; i >= 1; --i) {
    if (a_[i] <= prefix_max_[i - 1]) {
      ++a_[i];
      prefix_max_[i] = std::max(prefix_max_[i - 1], a_[i]);
      for (int j = i + 1; j < n_; ++j) {
        a_[j] = 0;
        prefix_max_[j] = prefix_max_[i];
      }
      return true;
    }
  }
  return false;
}

std::optional<Partition> PartitionStream::next() {
  while (!done_) {
    if (!advance()) {
      done_ = true;
      break;
    }
    const int blocks = prefix_max_[n_ - 1] + 1;
    bool ok = true;
    for (const auto& f : filters_) ok = ok && f.accepts(a_, blocks);
    if (!ok) continue;
    std::vector<ElementSet> b(blocks, 0);
    for (int i = 0; i < n_; ++i) b[a_[i]] |= bit(i);
    return Partition(n_, std::move(b));
  }
  return std::nullopt;
}

std::vector<Partition> enumerate_partitions(int n, std::vector<PartitionFilter> filters, EnumerationBudget budget) {
  PartitionStream stream(n, std::move(filters), budget);
  std::vector<Partition> out;
  while (auto p = stream.next()) out.push_back(std::move(*p));
  return out;
}

PiecewiseLinearCurve brute_curve(const SetFunction& f, CurveMode mode, std::optional<int> s, std::optional<int> t,
                                 EnumerationBudget budget) {
  const int n = f.n();
  std::vector<PartitionFilter> filters;
  if (mode == CurveMode::st) {
    int ss = s ? *s : f.ground().s_index.value_or(-1);
    int tt = t ? *t : f.ground().t_index.value_or(-1);
    if (ss < 0 || tt < 0) throw InvalidInput("st mode requires terminals");
    filters.push_back(PartitionFilter::st(ss, tt));
  }
  // Cheapest partition of every size; ties to the canonically smallest.
  std::map<int, std::pair<Rational, Partition>> best;
  PartitionStream stream(n, filters, budget);
  while (auto p = stream.next()) {
    Value v = evaluate_partition(f, *p);
    auto it = best.find(p->size());
    if (it == best.end() || v.base < it->second.first || (v.base == it->second.first && *p < it->second.second))
      best[p->size()] = {v.base, *p};
  }
  // Lower envelope of the lines F(c) − λc equals the lower convex hull of the points (c, F(c)).
  std::vector<std::pair<int, Rational>> hull;
  for (const auto& [c, fp] : best) {
    const Rational& y = fp.first;
    while (hull.size() >= 2) {
      const auto& [c1, y1] = hull[hull.size() - 2];
      const auto& [c2, y2] = hull.back();
      // drop the middle point unless it lies strictly below the chord
      if ((y2 - y1) * Rational(c - c2) >= (y - y2) * Rational(c2 - c1))
        hull.pop_back();
      else
        break;
    }
    hull.emplace_back(c, y);
  }
  PiecewiseLinearCurve out;
  out.mode = mode;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    out.segments.push_back({best.at(hull[i].first).second, hull[i].second});
    if (i > 0)
      out.breakpoints.push_back((hull[i].second - hull[i - 1].second) / Rational(hull[i].first - hull[i - 1].first));
  }
  return out;
}

void for_each_orientation(const Hypergraph& g, const std::function<bool(const Orientation&)>& visit,
                          EnumerationBudget budget) {
  // one slot per copy
  std::vector<std::pair<int, std::vector<int>>> slots;
  long long product = 1;
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    for (long long c = 0; c < e.multiplicity; ++c) {
      slots.emplace_back(static_cast<int>(i), elements_of(e.members));
      product *= set_size(e.members);
      if (product > budget.max_orientations)
        throw BudgetExceeded("orientation enumeration refused above " + std::to_string(budget.max_orientations));
    }
  }
  std::vector<std::size_t> choice(slots.size(), 0);
  Orientation o{g, std::vector<std::vector<int>>(g.edges().size())};
  while (true) {
    for (auto& h : o.heads) h.clear();
    for (std::size_t i = 0; i < slots.size(); ++i) o.heads[slots[i].first].push_back(slots[i].second[choice[i]]);
    if (!visit(o)) return;
    std::size_t i = 0;
    while (i < slots.size()) {
      if (++choice[i] < slots[i].second.size()) break;
      choice[i] = 0;
      ++i;
    }
    if (i == slots.size()) return;
  }
}

std::vector<Orientation> brute_orientations(const Hypergraph& g, EnumerationBudget budget) {
  std::vector<Orientation> out;
  for_each_orientation(
      g,
      [&](const Orientation& o) {
        out.push_back(o);
        return true;
      },
      budget);
  return out;
}

KPartitionResult brute_best_k_partition(const SetFunction& f, int s, int t, int k, EnumerationBudget budget) {
  const int n = f.n();
  if (k < 2 || k > n) throw InvalidInput("k must lie in [2, n]");
  PartitionStream stream(n, {PartitionFilter::st(s, t), PartitionFilter::blocks(k)}, budget);
  KPartitionResult out;
  bool found = false;
  while (auto p = stream.next()) {
    Value v = evaluate_partition(f, *p);
    if (!found || v < out.value || (v == out.value && *p < out.partition)) {
      out.partition = *p;
      out.value = v;
      found = true;
    }
  }
  if (!found) throw InvalidInput("no st-separating k-partition");
  out.mode = "exhaustive";
  return out;
}

}  // namespace partseq::reference
