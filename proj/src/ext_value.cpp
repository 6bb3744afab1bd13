#include "ptg/ext_value.hpp"

#include "ptg/errors.hpp"

namespace ptg {

ExtValue ExtValue::parse(std::string_view text) {
  if (text == "+inf" || text == "inf") return plus_inf();
  if (text == "-inf") return minus_inf();
  return ExtValue(Rational::parse(text));
}

const Rational& ExtValue::value() const {
  if (kind_ != Kind::Finite) throw NotFinite("value is " + str());
  return v_;
}

std::string ExtValue::str() const {
  switch (kind_) {
    case Kind::PlusInf: return "+inf";
    case Kind::MinusInf: return "-inf";
    default: return v_.str();
  }
}

ExtValue operator+(const ExtValue& a, const ExtValue& b) {
  if (a.is_finite() && b.is_finite()) return ExtValue(a.v_ + b.v_);
  if ((a.is_plus_inf() && b.is_minus_inf()) || (a.is_minus_inf() && b.is_plus_inf()))
    throw ArithmeticError("+inf + -inf is undefined");
  return a.is_finite() ? b : a;
}

ExtValue operator-(const ExtValue& a) {
  switch (a.kind_) {
    case ExtValue::Kind::PlusInf: return ExtValue::minus_inf();
    case ExtValue::Kind::MinusInf: return ExtValue::plus_inf();
    default: return ExtValue(-a.v_);
  }
}

bool operator==(const ExtValue& a, const ExtValue& b) {
  if (a.kind_ != b.kind_) return false;
  return !a.is_finite() || a.v_ == b.v_;
}

std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b) {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  if (!a.is_finite()) return std::strong_ordering::equal;
  return a.v_ <=> b.v_;
}

ExtValue min(const ExtValue& a, const ExtValue& b) { return b < a ? b : a; }
ExtValue max(const ExtValue& a, const ExtValue& b) { return a < b ? b : a; }

}  // namespace ptg
