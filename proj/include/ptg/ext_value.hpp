#pragma once

#include "ptg/rational.hpp"

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace ptg {

// A rational extended with -inf and +inf.
class ExtValue {
 public:
  enum class Kind { MinusInf, Finite, PlusInf };

  ExtValue() = default;  // finite zero
  ExtValue(const Rational& v) : kind_(Kind::Finite), v_(v) {}  // NOLINT implicit
  ExtValue(std::int64_t v) : kind_(Kind::Finite), v_(v) {}     // NOLINT implicit
  ExtValue(int v) : kind_(Kind::Finite), v_(v) {}              // NOLINT implicit

  static ExtValue plus_inf() { return ExtValue(Kind::PlusInf); }
  static ExtValue minus_inf() { return ExtValue(Kind::MinusInf); }
  // "+inf", "-inf" or a rational literal.
  static ExtValue parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_plus_inf() const { return kind_ == Kind::PlusInf; }
  bool is_minus_inf() const { return kind_ == Kind::MinusInf; }
  // Throws NotFinite when infinite.
  const Rational& value() const;

  std::string str() const;

  // x + inf = inf; (+inf) + (-inf) throws ArithmeticError.
  friend ExtValue operator+(const ExtValue& a, const ExtValue& b);
  friend ExtValue operator-(const ExtValue& a);

  friend bool operator==(const ExtValue& a, const ExtValue& b);
  friend std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b);

  friend std::ostream& operator<<(std::ostream& os, const ExtValue& v) { return os << v.str(); }

 private:
  explicit ExtValue(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  Rational v_;
};

ExtValue min(const ExtValue& a, const ExtValue& b);
ExtValue max(const ExtValue& a, const ExtValue& b);

}  // namespace ptg
