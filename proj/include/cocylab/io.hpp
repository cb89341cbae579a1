#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "cocylab/coeff.hpp"
#include "cocylab/error.hpp"
#include "cocylab/extension.hpp"
#include "cocylab/sl2.hpp"
#include "cocylab/words.hpp"

namespace cocylab {

enum class ElementKind { Free, FreeProduct, SL2Z, SL2Q };

inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte == 0 ? 0 : e.byte - 1, "invalid JSON");
  }
}

/// [["p/q","p/q"],["p/q","p/q"]] with determinant 1.
inline MatQ parse_matrix(std::string_view text) {
  MatQ m = matq_from_json(parse_json(text));
  require_unimodular(m);
  return m;
}

/// Matrix JSON, an S,T word, "I" or "-I".
inline MatZ parse_sl2z(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  if (i < text.size() && text[i] == '[') return to_integer(parse_matrix(text));
  return evaluate(parse_st_word(text));
}

inline MatQ parse_sl2q(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  if (i < text.size() && text[i] == '[') return parse_matrix(text);
  return to_rational(evaluate(parse_st_word(text)));
}

/// {"a": [...], "g": <element text or matrix JSON>}.
inline AsaiElement parse_ext_element(std::string_view text, const AsaiExt& grp) {
  nlohmann::json j = parse_json(text);
  if (!j.is_object() || !j.contains("a") || !j.contains("g")) throw ParseError(0, "expected {\"a\": [...], \"g\": ...}");
  CoeffValue a = coeff_from_json(j["a"], grp.coeffs());
  MatZ g = j["g"].is_string() ? parse_sl2z(j["g"].get<std::string>()) : to_integer(matq_from_json(j["g"]));
  require_unimodular(g);
  return {a, g};
}

inline std::string encode(const MatZ& m) { return to_string(st_decompose(m)); }

}  // namespace cocylab
