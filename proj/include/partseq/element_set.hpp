#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace partseq {

// Subsets of {0..n-1}, n <= 64, as bitmasks.
using ElementSet = std::uint64_t;

constexpr int kMaxElements = 64;

constexpr ElementSet bit(int i) { return ElementSet{1} << i; }
constexpr ElementSet full_set(int n) { return n >= 64 ? ~ElementSet{0} : (ElementSet{1} << n) - 1; }
constexpr int set_size(ElementSet s) { return std::popcount(s); }
constexpr bool contains(ElementSet s, int i) { return (s >> i) & 1U; }
constexpr bool is_subset(ElementSet a, ElementSet b) { return (a & ~b) == 0; }
constexpr int lowest_element(ElementSet s) { return std::countr_zero(s); }

inline std::vector<int> elements_of(ElementSet s) {
  std::vector<int> out;
  out.reserve(set_size(s));
  while (s != 0) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

// X, Y intersecting: X∩Y, X∖Y, Y∖X all nonempty.
constexpr bool is_intersecting(ElementSet x, ElementSet y) {
  return (x & y) != 0 && (x & ~y) != 0 && (y & ~x) != 0;
}

// Intersecting pair that does not split s from t across the two differences.
constexpr bool is_st_uncrossable(ElementSet x, ElementSet y, int s, int t) {
  ElementSet st = bit(s) | bit(t);
  return is_intersecting(x, y) && (set_size(st & x & ~y) != 1 || set_size(st & y & ~x) != 1);
}

struct GroundSet {
  int n = 0;
  std::vector<std::string> labels;
  std::optional<int> s_index;
  std::optional<int> t_index;

  GroundSet() = default;
  // Labels default to "0".."n-1".
  explicit GroundSet(int n);
  GroundSet(std::vector<std::string> labels, std::optional<int> s = {}, std::optional<int> t = {});

  ElementSet all() const { return full_set(n); }
  int index_of(const std::string& label) const;  // throws InvalidInput
  bool has_terminals() const { return s_index.has_value() && t_index.has_value(); }
  std::string format_set(ElementSet x) const;
  void validate() const;
};

}  // namespace partseq
