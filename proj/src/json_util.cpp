#include "ptg/json_util.hpp"

#include "ptg/errors.hpp"

#include <fstream>
#include <sstream>

namespace ptg::jsonio {

using json = nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SyntaxError(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SyntaxError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const json& field(const json& obj, const char* key, json::value_t type) {
  if (!obj.is_object() || !obj.contains(key))
    throw ValidationError(ValidationKind::Malformed, std::string("missing field '") + key + "'");
  const json& v = obj[key];
  bool ok = v.type() == type || (type == json::value_t::number_integer && v.is_number_integer());
  if (!ok) throw ValidationError(ValidationKind::Malformed, std::string("field '") + key + "' has the wrong type");
  return v;
}

std::string string_field(const json& obj, const char* key) {
  return field(obj, key, json::value_t::string).get<std::string>();
}

std::int64_t int_field(const json& obj, const char* key) {
  return field(obj, key, json::value_t::number_integer).get<std::int64_t>();
}

Rational to_rational(const json& v) {
  try {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_string()) return Rational::parse(v.get<std::string>());
  } catch (const ArithmeticError& e) {
    throw ValidationError(ValidationKind::Malformed, e.what());
  }
  throw ValidationError(ValidationKind::Malformed, "expected a rational, got " + v.dump());
}

ExtValue to_ext(const json& v) {
  if (v.is_string()) {
    auto s = v.get<std::string>();
    if (s == "+inf" || s == "-inf") return ExtValue::parse(s);
  }
  return ExtValue(to_rational(v));
}

Rational rational_field(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key))
    throw ValidationError(ValidationKind::Malformed, std::string("missing field '") + key + "'");
  const json& v = obj[key];
  if (v.is_string() && (v == "+inf" || v == "-inf"))
    throw ValidationError(ValidationKind::GuardOutOfBounds, std::string("infinite '") + key + "'");
  return to_rational(v);
}

}  // namespace ptg::jsonio
