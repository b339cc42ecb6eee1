#include "kstab/fn_config.hpp"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace kstab {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) {
    ++a;
  }
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
    --b;
  }
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    out.push_back(trim(item));
  }
  if (!s.empty() && s.back() == sep) {
    out.emplace_back();
  }
  return out;
}

Rational rational_literal(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) {
    throw DomainError("empty number");
  }
  return parse_rational(t[0] == '+' ? t.substr(1) : t);
}

std::vector<Rational> numbers(const std::string& params) {
  std::vector<Rational> out;
  if (trim(params).empty()) {
    return out;
  }
  for (const auto& item : split(params, ',')) {
    out.push_back(rational_literal(item));
  }
  return out;
}

Alphabet pattern_alphabet(const Carrier& carrier) {
  if (carrier.kind == Carrier::Kind::FreeWord && carrier.alphabet) {
    return *carrier.alphabet;
  }
  return Alphabet("ab");
}

RealFn quadratic_from(const std::vector<Rational>& v) {
  const double root = (std::sqrt(1.0 + 4.0 * static_cast<double>(v.size())) - 1.0) / 2.0;
  const auto k = static_cast<std::size_t>(std::llround(root));
  if (k == 0 || k * k + k != v.size()) {
    throw DomainError("quadratic: expected k*k + k numbers, got " + std::to_string(v.size()));
  }
  const auto n = static_cast<Eigen::Index>(k);
  RationalMatrix m(n, n);
  RationalVector a(n);
  for (std::size_t i = 0; i < k * k; ++i) {
    m(static_cast<Eigen::Index>(i / k), static_cast<Eigen::Index>(i % k)) = v[i];
  }
  for (std::size_t i = 0; i < k; ++i) {
    a[static_cast<Eigen::Index>(i)] = v[k * k + i];
  }
  return RealFn::quadratic(std::move(m), std::move(a));
}

RationalVector vector_from(const std::vector<Rational>& v) {
  RationalVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = v[i];
  }
  return out;
}

NoiseSymmetry symmetry_from(const std::string& s) {
  if (s.empty() || s == "none") {
    return NoiseSymmetry::None;
  }
  if (s == "even") {
    return NoiseSymmetry::Even;
  }
  if (s == "odd") {
    return NoiseSymmetry::Odd;
  }
  throw DomainError("noise symmetry must be none, even or odd, got '" + s + "'");
}

std::uint64_t seed_from(const std::string& s) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(s, &used);
    if (used != s.size()) {
      throw DomainError("");
    }
    return v;
  } catch (const std::exception&) {
    throw DomainError("malformed seed '" + s + "'");
  }
}

RealFn inline_term(const Carrier& carrier, const std::string& term) {
  std::string body = term;
  Rational weight = 1;
  if (auto star = term.find('*'); star != std::string::npos) {
    weight = rational_literal(term.substr(0, star));
    body = trim(term.substr(star + 1));
  }
  std::string kind = body, params;
  if (auto colon = body.find(':'); colon != std::string::npos) {
    kind = trim(body.substr(0, colon));
    params = trim(body.substr(colon + 1));
  }

  RealFn f = RealFn::zero();
  if (kind == "quadratic") {
    f = quadratic_from(numbers(params));
  } else if (kind == "additive") {
    auto w = numbers(params);
    if (w.empty()) {
      throw DomainError("additive: no weights");
    }
    f = RealFn::additive(vector_from(w));
  } else if (kind == "pattern" || kind == "pattern-tilde" || kind == "eta" || kind == "eta-tilde") {
    const bool tilde = kind.ends_with("tilde");
    const std::string pattern = kind.starts_with("eta") ? "aabb" : params;
    PatternCounter counter(pattern, pattern_alphabet(carrier));
    f = tilde ? RealFn::pattern_tilde(counter) : RealFn::pattern_count(counter);
  } else if (kind == "noise") {
    auto parts = split(params, ',');
    if (parts.size() < 2 || parts.size() > 3) {
      throw DomainError("noise: expected seed,amplitude[,even|odd]");
    }
    f = RealFn::noise(seed_from(parts[0]), rational_literal(parts[1]),
                      symmetry_from(parts.size() == 3 ? parts[2] : ""));
  } else if (kind == "zero") {
    f = RealFn::zero();
  } else {
    throw DomainError("unknown function kind '" + kind + "'");
  }
  if (weight == 1) {
    return f;
  }
  return weight * f;
}

std::string text_of(const json& v) {
  if (v.is_string()) {
    return v.get<std::string>();
  }
  return v.dump();
}

const json& field(const json& obj, const char* key) {
  if (!obj.contains(key)) {
    throw DomainError(std::string("function config: missing field '") + key + "'");
  }
  return obj.at(key);
}

std::vector<Rational> rational_list(const json& v) {
  if (!v.is_array()) {
    throw DomainError("function config: expected an array of numbers");
  }
  std::vector<Rational> out;
  for (const auto& item : v) {
    out.push_back(json_rational(item));
  }
  return out;
}

Homomorphism hom_from(const json& h) {
  const std::string kind = h.is_string() ? h.get<std::string>() : field(h, "kind").get<std::string>();
  if (kind == "identity") {
    return Homomorphism::identity();
  }
  if (kind == "abelianize") {
    return Homomorphism::abelianize(Alphabet(h.is_object() && h.contains("alphabet") ? h["alphabet"].get<std::string>() : "ab"));
  }
  if (kind == "slot-sum") {
    return Homomorphism::slot_sum(parse_carrier(h.is_object() && h.contains("base") ? h["base"].get<std::string>() : "Z"));
  }
  if (kind == "project") {
    return Homomorphism::project(field(h, "index").get<std::size_t>());
  }
  if (kind == "top") {
    return Homomorphism::top();
  }
  throw DomainError("unknown homomorphism '" + kind + "'");
}

LimitOptions limit_options_from(const json& cfg) {
  LimitOptions o;
  if (cfg.contains("nmax")) {
    o.nmax = cfg["nmax"].get<unsigned>();
  }
  if (cfg.contains("tol")) {
    o.tol = cfg["tol"].get<double>();
  }
  if (cfg.contains("base")) {
    o.base = cfg["base"].get<unsigned>();
  }
  if (cfg.contains("path")) {
    const auto p = cfg["path"].get<std::string>();
    if (p == "auto") {
      o.path = LimitPath::Auto;
    } else if (p == "iterative") {
      o.path = LimitPath::Iterative;
    } else if (p == "closed-form") {
      o.path = LimitPath::ClosedForm;
    } else {
      throw DomainError("limit path must be auto, iterative or closed-form");
    }
  }
  return o;
}

}  // namespace

Rational json_rational(const json& value) {
  if (value.is_number_integer()) {
    return Rational(Integer(value.dump()));
  }
  if (value.is_number_float() || value.is_string()) {
    return rational_literal(text_of(value));
  }
  throw DomainError("expected a number, got " + value.dump());
}

RealFn parse_fn(const Carrier& carrier, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) {
    throw DomainError("empty function config");
  }
  std::vector<std::pair<Rational, RealFn>> terms;
  for (const auto& term : split(t, '+')) {
    if (term.empty()) {
      throw DomainError("empty term in '" + t + "'");
    }
    terms.emplace_back(1, inline_term(carrier, term));
  }
  if (terms.size() == 1) {
    return terms.front().second;
  }
  return RealFn::sum(std::move(terms));
}

RealFn parse_fn_json(const Carrier& carrier, const json& cfg) {
  if (!cfg.is_object()) {
    throw DomainError("function config must be a JSON object");
  }
  const std::string kind = field(cfg, "kind").get<std::string>();
  RealFn f = RealFn::zero();
  if (kind == "quadratic") {
    const json& form = field(cfg, "form");
    std::vector<Rational> flat;
    for (const auto& row : form) {
      auto r = rational_list(row);
      if (r.size() != form.size()) {
        throw DomainError("quadratic: form must be square");
      }
      flat.insert(flat.end(), r.begin(), r.end());
    }
    std::vector<Rational> a = cfg.contains("additive") ? rational_list(cfg["additive"])
                                                       : std::vector<Rational>(form.size(), Rational(0));
    flat.insert(flat.end(), a.begin(), a.end());
    f = quadratic_from(flat);
  } else if (kind == "additive") {
    f = RealFn::additive(vector_from(rational_list(field(cfg, "weights"))));
  } else if (kind == "pattern" || kind == "pattern-tilde") {
    const std::string pattern = cfg.value("pattern", std::string("aabb"));
    Alphabet alphabet = cfg.contains("alphabet") ? Alphabet(cfg["alphabet"].get<std::string>()) : pattern_alphabet(carrier);
    PatternCounter counter(pattern, alphabet);
    f = kind == "pattern" ? RealFn::pattern_count(counter) : RealFn::pattern_tilde(counter);
  } else if (kind == "pullback") {
    Homomorphism h = hom_from(field(cfg, "hom"));
    f = RealFn::pullback(h, parse_fn_json(codomain(h, carrier), field(cfg, "inner")));
  } else if (kind == "table") {
    std::vector<std::pair<Element, Number>> rows;
    const json& entries = field(cfg, "entries");
    if (entries.is_object()) {
      for (const auto& [key, value] : entries.items()) {
        rows.emplace_back(parse_element(carrier, key), Number(json_rational(value)));
      }
    } else {
      for (const auto& row : entries) {
        if (!row.is_array() || row.size() != 2) {
          throw DomainError("table: entries must be [element, value] pairs");
        }
        rows.emplace_back(parse_element(carrier, text_of(row[0])), Number(json_rational(row[1])));
      }
    }
    f = RealFn::table(rows);
  } else if (kind == "sum") {
    std::vector<std::pair<Rational, RealFn>> terms;
    for (const auto& term : field(cfg, "terms")) {
      Rational w = term.contains("weight") ? json_rational(term["weight"]) : Rational(1);
      terms.emplace_back(w, parse_fn_json(carrier, field(term, "fn")));
    }
    f = RealFn::sum(std::move(terms));
  } else if (kind == "noise") {
    f = RealFn::noise(field(cfg, "seed").get<std::uint64_t>(), json_rational(field(cfg, "amplitude")),
                      symmetry_from(cfg.value("symmetry", std::string())));
  } else if (kind == "power") {
    f = RealFn::power_compose(parse_fn_json(carrier, field(cfg, "inner")), Integer(text_of(field(cfg, "exponent"))));
  } else if (kind == "limit") {
    const std::string mode = field(cfg, "mode").get<std::string>();
    if (mode != "hat" && mode != "tilde") {
      throw DomainError("limit mode must be hat or tilde");
    }
    f = RealFn::limit(mode == "hat" ? LimitMode::Hat : LimitMode::Tilde, parse_fn_json(carrier, field(cfg, "inner")),
                      limit_options_from(cfg));
  } else if (kind == "inline") {
    f = parse_fn(carrier, field(cfg, "expr").get<std::string>());
  } else {
    throw DomainError("unknown function kind '" + kind + "'");
  }
  if (cfg.contains("name")) {
    f = f.named(cfg["name"].get<std::string>());
  }
  return f;
}

RealFn load_fn(const Carrier& carrier, const std::string& spec) {
  const std::string t = trim(spec);
  try {
    if (!t.empty() && t.front() == '{') {
      return parse_fn_json(carrier, json::parse(t));
    }
    if (std::filesystem::is_regular_file(t)) {
      std::ifstream in(t);
      return parse_fn_json(carrier, json::parse(in));
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("function config: ") + e.what());
  }
  return parse_fn(carrier, t);
}

}  // namespace kstab
