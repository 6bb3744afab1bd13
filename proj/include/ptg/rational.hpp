#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace ptg {

using BigInt = mpz_class;

// Exact rational number, always kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : q_(static_cast<signed long>(n)) {}  // NOLINT implicit
  Rational(int n) : q_(static_cast<signed long>(n)) {}            // NOLINT implicit
  explicit Rational(const BigInt& n) : q_(n) {}
  Rational(const BigInt& num, const BigInt& den);
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  // Accepts "p", "-p", "p/q". Throws ArithmeticError on malformed input or zero denominator.
  static Rational parse(std::string_view text);

  std::string str() const;  // "p" or "p/q"
  // Decimal expansion rounded half away from zero to `digits` places, trailing zeros kept.
  std::string decimal(int digits) const;
  double to_double() const { return q_.get_d(); }

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  BigInt floor() const;
  BigInt ceil() const;
  Rational abs() const { return Rational(::abs(q_)); }

  const mpq_class& raw() const { return q_; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

}  // namespace ptg

template <>
struct std::hash<ptg::Rational> {
  std::size_t operator()(const ptg::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
