#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace partseq {

// Exact rational. Values that fit in int64 numerator/denominator stay inline;
// anything larger is promoted to a shared immutable GMP rational.
class Rational {
 public:
  Rational() = default;
  Rational(long long n);  // NOLINT: implicit from integers is intended
  Rational(int n) : Rational(static_cast<long long>(n)) {}
  Rational(long long num, long long den);
  explicit Rational(const mpq_class& q);

  static Rational parse(std::string_view text);

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b);
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  // floor and ceil as exact integers (promoted when large)
  Rational floor() const;
  Rational ceil() const;

  // Throws if the value is not an integer fitting in int64.
  long long to_int64() const;
  double to_double() const;
  mpq_class to_mpq() const;
  std::string to_string() const;

  bool is_small() const { return !big_; }

 private:
  void assign_normalized(__int128 num, __int128 den);
  void assign_big(mpq_class q);

  long long num_ = 0;
  long long den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

// gcd over positive rationals: the largest r with a/r and b/r both integers.
Rational rational_gcd(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace partseq
