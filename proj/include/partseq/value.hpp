#pragma once

#include <compare>
#include <iosfwd>
#include <string>

#include "partseq/rational.hpp"

namespace partseq {

// Exact scalar with one symbolic infinitesimal tier: base + eps_card * ε,
// compared lexicographically.
struct Value {
  Rational base;
  Rational eps_card;

  Value() = default;
  Value(Rational b) : base(std::move(b)) {}  // NOLINT
  Value(long long b) : base(b) {}            // NOLINT
  Value(int b) : base(b) {}                  // NOLINT
  Value(Rational b, Rational e) : base(std::move(b)), eps_card(std::move(e)) {}

  bool has_tier() const { return !eps_card.is_zero(); }

  Value& operator+=(const Value& o) {
    base += o.base;
    if (!o.eps_card.is_zero()) eps_card += o.eps_card;
    return *this;
  }
  Value& operator-=(const Value& o) {
    base -= o.base;
    if (!o.eps_card.is_zero()) eps_card -= o.eps_card;
    return *this;
  }
  Value operator-() const { return Value(-base, -eps_card); }
  friend Value operator+(Value a, const Value& b) { return a += b; }
  friend Value operator-(Value a, const Value& b) { return a -= b; }
  friend Value operator*(const Rational& k, const Value& v) { return Value(k * v.base, k * v.eps_card); }

  friend bool operator==(const Value& a, const Value& b) = default;
  friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
    if (auto c = a.base <=> b.base; c != 0) return c;
    return a.eps_card <=> b.eps_card;
  }

  std::string to_string() const;
};

std::ostream& operator<<(std::ostream& os, const Value& v);

}  // namespace partseq
