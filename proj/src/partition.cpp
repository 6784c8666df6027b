#include "partseq/partition.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "partseq/errors.hpp"
#include "partseq/value.hpp"

namespace partseq {

std::string Value::to_string() const {
  if (eps_card.is_zero()) return base.to_string();
  return base.to_string() + (eps_card.sign() > 0 ? "+" : "") + eps_card.to_string() + "e";
}

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.to_string(); }

GroundSet::GroundSet(int count) : n(count) {
  for (int i = 0; i < count; ++i) labels.push_back(std::to_string(i));
  validate();
}

GroundSet::GroundSet(std::vector<std::string> names, std::optional<int> s, std::optional<int> t)
    : n(static_cast<int>(names.size())), labels(std::move(names)), s_index(s), t_index(t) {
  validate();
}

void GroundSet::validate() const {
  if (n < 1) throw InvalidInput("ground set must be nonempty");
  if (n > kMaxElements) throw InvalidInput("ground set larger than 64 elements");
  if (static_cast<int>(labels.size()) != n) throw InvalidInput("label count differs from n");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (static_cast<int>(seen.size()) != n) throw InvalidInput("labels must be distinct");
  for (const auto& l : labels) {
    if (l.empty() || l.find_first_of("|, \t\n") != std::string::npos)
      throw InvalidInput("label '" + l + "' is empty or contains a separator");
  }
  for (auto idx : {s_index, t_index}) {
    if (idx && (*idx < 0 || *idx >= n)) throw InvalidInput("terminal index out of range");
  }
  if (s_index && t_index && *s_index == *t_index) throw InvalidInput("s and t must differ");
}

int GroundSet::index_of(const std::string& label) const {
  for (int i = 0; i < n; ++i)
    if (labels[i] == label) return i;
  throw InvalidInput("unknown element '" + label + "'");
}

std::string GroundSet::format_set(ElementSet x) const {
  std::string out;
  for (int v : elements_of(x)) {
    if (!out.empty()) out += ',';
    out += labels[v];
  }
  return out;
}

Partition::Partition(int n, std::vector<ElementSet> blocks) : n_(n), blocks_(std::move(blocks)) {
  ElementSet seen = 0;
  for (ElementSet b : blocks_) {
    if (b == 0) throw InvalidInput("partition block is empty");
    if ((seen & b) != 0) throw InvalidInput("partition blocks overlap");
    seen |= b;
  }
  if (seen != full_set(n)) throw InvalidInput("partition does not cover the ground set");
  std::sort(blocks_.begin(), blocks_.end(),
            [](ElementSet a, ElementSet b) { return lowest_element(a) < lowest_element(b); });
}

Partition Partition::singletons(int n) {
  std::vector<ElementSet> b;
  for (int i = 0; i < n; ++i) b.push_back(bit(i));
  return Partition(n, std::move(b));
}

Partition Partition::whole(int n) { return Partition(n, {full_set(n)}); }

bool Partition::has_block(ElementSet b) const {
  return std::find(blocks_.begin(), blocks_.end(), b) != blocks_.end();
}

ElementSet Partition::block_of(int v) const {
  for (ElementSet b : blocks_)
    if (contains(b, v)) return b;
  throw InvalidInput("element outside partition");
}

bool Partition::is_st_separating(int s, int t) const {
  ElementSet st = bit(s) | bit(t);
  return std::none_of(blocks_.begin(), blocks_.end(), [&](ElementSet b) { return (b & st) == st; });
}

std::string format_partition(const Partition& p, const GroundSet& g) {
  std::string out;
  for (ElementSet b : p.blocks()) {
    if (!out.empty()) out += '|';
    out += g.format_set(b);
  }
  return out;
}

namespace {

std::string trim(std::string_view s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return {};
  size_t b = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Partition parse_partition(std::string_view text, const GroundSet& g) {
  std::vector<ElementSet> blocks;
  ElementSet seen = 0;
  for (auto part : split(text, '|')) {
    ElementSet b = 0;
    for (auto tok : split(part, ',')) {
      std::string label = trim(tok);
      if (label.empty()) throw InvalidInput("empty element in partition text '" + std::string(text) + "'");
      int v = g.index_of(label);
      if (contains(seen | b, v)) throw InvalidInput("element '" + label + "' repeated in partition");
      b |= bit(v);
    }
    seen |= b;
    blocks.push_back(b);
  }
  return Partition(g.n, std::move(blocks));
}

bool is_st_separating(const Partition& p, int s, int t) { return p.is_st_separating(s, t); }

namespace {

void require_distinct(const Partition& q, const Partition& p) {
  if (q.ground_size() != p.ground_size()) throw InvalidInput("partitions over different ground sets");
  if (q == p) throw InvalidInput("refinement predicates need distinct partitions");
}

bool inside_some(ElementSet b, const Partition& p) {
  for (ElementSet a : p.blocks())
    if (is_subset(b, a)) return true;
  return false;
}

void require_separating(const Partition& q, const Partition& p, int s, int t) {
  if (s == t) throw InvalidInput("s and t must differ");
  if (!q.is_st_separating(s, t) || !p.is_st_separating(s, t))
    throw InvalidInput("{s,t}-refinement needs {s,t}-separating partitions");
}

}  // namespace

bool is_refinement(const Partition& q, const Partition& p) {
  require_distinct(q, p);
  for (ElementSet b : q.blocks())
    if (!inside_some(b, p)) return false;
  return true;
}

std::optional<ElementSet> is_refinement_up_to_one_set(const Partition& q, const Partition& p) {
  if (!is_refinement(q, p)) return std::nullopt;
  // The only candidate is the (unique) block of p missing from q.
  std::optional<ElementSet> x;
  for (ElementSet a : p.blocks()) {
    if (q.has_block(a)) continue;
    if (x) return std::nullopt;
    x = a;
  }
  if (!x) return std::nullopt;
  for (ElementSet b : q.blocks()) {
    bool strict_sub = is_subset(b, *x) && b != *x;
    if (!strict_sub && !p.has_block(b)) return std::nullopt;
  }
  return x;
}

bool is_st_refinement_along(const Partition& q, const Partition& p, ElementSet x, ElementSet y, int s,
                            int t) {
  require_distinct(q, p);
  require_separating(q, p, s, t);
  if (!p.has_block(x) || q.has_block(x)) return false;
  if (!q.has_block(y) || p.has_block(y)) return false;
  // (a)
  if (!is_intersecting(x, y) || is_st_uncrossable(x, y, s, t)) return false;
  // (b)
  for (ElementSet b : q.blocks())
    if (b != y && !inside_some(b, p)) return false;
  // (c)
  for (ElementSet a : p.blocks())
    if (a != x && (a & y) != 0 && !is_subset(a, y)) return false;
  // (d)
  int in_y = 0, in_x = 0;
  for (ElementSet a : p.blocks()) in_y += is_subset(a, y);
  for (ElementSet b : q.blocks()) in_x += is_subset(b, x);
  return in_y <= in_x;
}

std::optional<std::pair<ElementSet, ElementSet>> is_st_refinement(const Partition& q, const Partition& p,
                                                                  int s, int t) {
  require_distinct(q, p);
  require_separating(q, p, s, t);
  for (ElementSet x : p.blocks()) {
    if (q.has_block(x)) continue;
    for (ElementSet y : q.blocks()) {
      if (p.has_block(y)) continue;
      if (is_st_refinement_along(q, p, x, y, s, t)) return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

std::optional<std::pair<ElementSet, ElementSet>> is_st_refinement_up_to_two_sets(const Partition& q,
                                                                                 const Partition& p,
                                                                                 int s, int t) {
  require_distinct(q, p);
  require_separating(q, p, s, t);
  for (ElementSet x : p.blocks()) {
    if (q.has_block(x)) continue;
    for (ElementSet y : q.blocks()) {
      if (p.has_block(y)) continue;
      if (!is_st_refinement_along(q, p, x, y, s, t)) continue;
      ElementSet outside = ~(x | y);
      bool kept = true;
      for (ElementSet a : p.blocks())
        if (is_subset(a, outside) && !q.has_block(a)) kept = false;
      if (kept) return std::make_pair(x, y);
    }
  }
  return std::nullopt;
}

std::vector<std::pair<ElementSet, ElementSet>> intersecting_pairs(const std::vector<ElementSet>& family) {
  std::vector<std::pair<ElementSet, ElementSet>> out;
  for (size_t i = 0; i < family.size(); ++i)
    for (size_t j = i + 1; j < family.size(); ++j)
      if (is_intersecting(family[i], family[j])) out.emplace_back(family[i], family[j]);
  return out;
}

}  // namespace partseq
