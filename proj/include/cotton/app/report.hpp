#pragma once

#include <json.hpp>

#include <span>
#include <string>
#include <vector>

#include "cotton/rational.hpp"

namespace cotton::app {

/// Objects keep their keys sorted, which makes dumps canonical.
using Json = nlohmann::json;

/// Shortest decimal that reads back as the same double.
std::string shortest(double x);

inline std::string scalar_text(const Rational& x) { return x.to_string(); }
inline std::string scalar_text(double x) { return shortest(x); }

/// Rationals as "p/q" strings, doubles as JSON numbers.
inline Json scalar_json(const Rational& x) { return x.to_string(); }
inline Json scalar_json(double x) { return x; }

template <class S>
Json vector_json(std::span<const S> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_json(x));
  return out;
}

/// Two-space indented dump with a trailing newline.
std::string dump_json(const Json& j);

/// Index label: "tx" when every coordinate name is one character,
/// otherwise "{t,x}".
std::string index_label(const std::vector<std::string>& coords, std::span<const std::size_t> idx);

/// Comma-joined coordinate names, used as JSON keys.
std::string index_key(const std::vector<std::string>& coords, std::span<const std::size_t> idx);

}  // namespace cotton::app
