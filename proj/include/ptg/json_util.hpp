#pragma once

#include "ptg/ext_value.hpp"
#include "ptg/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace ptg::jsonio {

// Throws SyntaxError on malformed JSON.
nlohmann::json parse(const std::string& text);
// Throws SyntaxError when the file cannot be read.
std::string read_file(const std::string& path);

// Field accessors throwing ValidationError(Malformed) on missing or mistyped fields.
const nlohmann::json& field(const nlohmann::json& obj, const char* key, nlohmann::json::value_t type);
std::string string_field(const nlohmann::json& obj, const char* key);
std::int64_t int_field(const nlohmann::json& obj, const char* key);
// Accepts "p/q" strings and JSON integers.
Rational rational_field(const nlohmann::json& obj, const char* key);
Rational to_rational(const nlohmann::json& v);
ExtValue to_ext(const nlohmann::json& v);

}  // namespace ptg::jsonio
