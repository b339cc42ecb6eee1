#pragma once

#include "kstab/realfn.hpp"

#include "json.hpp"

#include <string>

namespace kstab {

/// Builds a RealFn on `carrier` from a config.
///
/// Inline form: terms joined by '+', each `[weight*]kind[:params]`:
///   quadratic:m11,...,mkk,a1,...,ak   (k*k form entries row-major, then k additive weights)
///   additive:w1,...,wk
///   pattern:aabb        pattern-tilde:aabb
///   eta                 eta-tilde          (pattern aabb)
///   noise:seed,amplitude[,even|odd]
///   zero
/// e.g. "quadratic:1,0 + 1/10*noise:7,1,even".
///
/// JSON form: an object with a "kind" key (quadratic, additive, pattern,
/// pattern-tilde, pullback, table, sum, noise, power, limit, inline), see the
/// README for the fields of each kind. Numbers may be JSON numbers or
/// strings such as "-3/4" or "0.25"; both are read exactly.
RealFn parse_fn(const Carrier& carrier, const std::string& text);
RealFn parse_fn_json(const Carrier& carrier, const nlohmann::json& config);

/// Reads `spec` as a JSON file when it names an existing file, as JSON when
/// it starts with '{', and as the inline form otherwise.
RealFn load_fn(const Carrier& carrier, const std::string& spec);

Rational json_rational(const nlohmann::json& value);

}  // namespace kstab
