#include "ptg/rational.hpp"

#include "ptg/errors.hpp"

#include <cctype>

namespace ptg {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ArithmeticError("zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(std::int64_t num, std::int64_t den)
    : Rational(BigInt(static_cast<signed long>(num)), BigInt(static_cast<signed long>(den))) {}

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) throw ArithmeticError("division by zero");
  q_ /= o.q_;
  return *this;
}

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  std::string_view n = text.substr(0, slash);
  std::string_view d = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(n, true) || !valid_integer(d, false))
    throw ArithmeticError("malformed rational '" + std::string(text) + "'");
  std::string ns(n);
  if (ns[0] == '+') ns.erase(0, 1);
  BigInt num(ns, 10), den(std::string(d), 10);
  return Rational(num, den);
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  mpq_class scaled = ::abs(q_) * scale;
  // round half away from zero
  BigInt twice = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  std::string s = twice.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  if (sgn(q_) < 0 && twice != 0) s.insert(0, "-");
  return s;
}

BigInt Rational::floor() const {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

BigInt Rational::ceil() const {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace ptg
