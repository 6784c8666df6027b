#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "partseq/element_set.hpp"

namespace partseq {

// Blocks sorted by smallest element, so equality is structural.
class Partition {
 public:
  Partition() = default;
  // Validates disjointness, nonempty blocks and cover of {0..n-1}.
  Partition(int n, std::vector<ElementSet> blocks);

  static Partition singletons(int n);
  static Partition whole(int n);

  int ground_size() const { return n_; }
  int size() const { return static_cast<int>(blocks_.size()); }
  const std::vector<ElementSet>& blocks() const { return blocks_; }
  ElementSet block(int i) const { return blocks_[i]; }
  bool has_block(ElementSet b) const;
  ElementSet block_of(int v) const;
  bool is_st_separating(int s, int t) const;

  friend bool operator==(const Partition&, const Partition&) = default;
  // lexicographic on the canonical block list; used for tie-breaking
  friend auto operator<=>(const Partition& a, const Partition& b) {
    return a.blocks_ <=> b.blocks_;
  }

 private:
  int n_ = 0;
  std::vector<ElementSet> blocks_;
};

struct GroundSet;

std::string format_partition(const Partition& p, const GroundSet& g);
Partition parse_partition(std::string_view text, const GroundSet& g);

bool is_st_separating(const Partition& p, int s, int t);

bool is_refinement(const Partition& q, const Partition& p);
// Returns the refined block X of p when q refines p up to one set.
std::optional<ElementSet> is_refinement_up_to_one_set(const Partition& q, const Partition& p);

bool is_st_refinement_along(const Partition& q, const Partition& p, ElementSet x, ElementSet y, int s,
                            int t);
// Return the witnessing (X, Y) if any.
std::optional<std::pair<ElementSet, ElementSet>> is_st_refinement(const Partition& q, const Partition& p,
                                                                  int s, int t);
std::optional<std::pair<ElementSet, ElementSet>> is_st_refinement_up_to_two_sets(const Partition& q,
                                                                                 const Partition& p,
                                                                                 int s, int t);

std::vector<std::pair<ElementSet, ElementSet>> intersecting_pairs(const std::vector<ElementSet>& family);

}  // namespace partseq
