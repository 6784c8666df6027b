#include "partseq/rational.hpp"

#include <limits>
#include <numeric>
#include <ostream>

#include "partseq/errors.hpp"

namespace partseq {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr long long kMin = std::numeric_limits<long long>::min();
constexpr long long kMax = std::numeric_limits<long long>::max();

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0 && ((a >> 64) != 0 || (b >> 64) != 0)) {
    u128 r = a % b;
    a = b;
    b = r;
  }
  if (b == 0) return a;
  return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
}

bool fits(i128 v) { return v >= kMin && v <= kMax; }

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(long long n) : num_(n), den_(1) {}

Rational::Rational(long long num, long long den) {
  if (den == 0) throw InvalidInput("rational with zero denominator");
  assign_normalized(num, den);
}

Rational::Rational(const mpq_class& q) { assign_big(q); }

void Rational::assign_normalized(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return;
  }
  if (den != 1) {
    u128 g = gcd128(uabs(num), static_cast<u128>(den));
    if (g > 1) {
      num /= static_cast<i128>(g);
      den /= static_cast<i128>(g);
    }
  }
  if (fits(num) && fits(den)) {
    num_ = static_cast<long long>(num);
    den_ = static_cast<long long>(den);
    big_.reset();
    return;
  }
  mpq_class q(to_mpz(num), to_mpz(den));
  q.canonicalize();
  big_ = std::make_shared<const mpq_class>(std::move(q));
}

void Rational::assign_big(mpq_class q) {
  q.canonicalize();
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p()) {
    num_ = n.get_si();
    den_ = d.get_si();
    big_.reset();
    return;
  }
  big_ = std::make_shared<const mpq_class>(std::move(q));
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  return q;
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  if (s.empty()) throw InvalidInput("empty rational literal");
  // decimal literals are accepted exactly: "0.25" -> 1/4
  auto dot = s.find('.');
  try {
    if (dot != std::string::npos) {
      std::string intpart = s.substr(0, dot);
      std::string frac = s.substr(dot + 1);
      bool neg = !intpart.empty() && intpart[0] == '-';
      if (neg || (!intpart.empty() && intpart[0] == '+')) intpart.erase(0, 1);
      if (intpart.empty()) intpart = "0";
      if (frac.find_first_not_of("0123456789") != std::string::npos ||
          intpart.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidInput("bad rational literal '" + s + "'");
      mpz_class num(intpart + frac);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      mpq_class q(num, den);
      if (neg) q = -q;
      return Rational(q);
    }
    if (s.find_first_not_of("+-0123456789/") != std::string::npos)
      throw InvalidInput("bad rational literal '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    mpq_class q(s);
    if (q.get_den() == 0) throw InvalidInput("rational with zero denominator");
    return Rational(q);
  } catch (const std::invalid_argument&) {
    throw InvalidInput("bad rational literal '" + s + "'");
  }
}

Rational Rational::operator-() const {
  Rational r;
  if (!big_ && num_ != kMin) {
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  r.assign_big(-to_mpq());
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      long long out;
      if (!__builtin_add_overflow(num_, o.num_, &out)) {
        num_ = out;
        return *this;
      }
    }
    if (den_ == o.den_) {
      assign_normalized(static_cast<i128>(num_) + o.num_, den_);
      return *this;
    }
    i128 n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
    i128 d = static_cast<i128>(den_) * o.den_;
    assign_normalized(n, d);
    return *this;
  }
  assign_big(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      long long out;
      if (!__builtin_sub_overflow(num_, o.num_, &out)) {
        num_ = out;
        return *this;
      }
    }
    if (den_ == o.den_) {
      assign_normalized(static_cast<i128>(num_) - o.num_, den_);
      return *this;
    }
    i128 n = static_cast<i128>(num_) * o.den_ - static_cast<i128>(o.num_) * den_;
    i128 d = static_cast<i128>(den_) * o.den_;
    assign_normalized(n, d);
    return *this;
  }
  assign_big(to_mpq() - o.to_mpq());
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      long long out;
      if (!__builtin_mul_overflow(num_, o.num_, &out)) {
        num_ = out;
        return *this;
      }
    }
    assign_normalized(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
    return *this;
  }
  assign_big(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InvalidInput("division by zero");
  if (!big_ && !o.big_) {
    assign_normalized(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
    return *this;
  }
  assign_big(to_mpq() / o.to_mpq());
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // canonical: a big value never equals a small one
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

Rational Rational::floor() const {
  if (!big_) {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return Rational(q);
  }
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return Rational(mpq_class(r));
}

Rational Rational::ceil() const { return -((-*this).floor()); }

long long Rational::to_int64() const {
  if (big_ || den_ != 1) throw InvalidInput("rational " + to_string() + " is not a machine integer");
  return num_;
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational rational_gcd(const Rational& a, const Rational& b) {
  if (a.is_zero()) return b.abs();
  if (b.is_zero()) return a.abs();
  mpq_class x = a.to_mpq(), y = b.to_mpq();
  mpz_class n, d;
  mpz_gcd(n.get_mpz_t(), x.get_num_mpz_t(), y.get_num_mpz_t());
  mpz_lcm(d.get_mpz_t(), x.get_den_mpz_t(), y.get_den_mpz_t());
  return Rational(mpq_class(n, d));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace partseq
