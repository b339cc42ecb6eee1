#include "kstab/carrier.hpp"

#include <algorithm>
#include <cctype>

namespace kstab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

/// Splits on any of `seps` at bracket depth zero; () and [] both nest.
std::vector<std::string_view> split_top(std::string_view s, std::string_view seps) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(' || ch == '[') {
      ++depth;
    } else if (ch == ')' || ch == ']') {
      --depth;
    } else if (depth == 0 && seps.find(ch) != std::string_view::npos) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

std::string_view strip_brackets(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

Integer parse_integer(std::string_view text) {
  std::string t(trim(text));
  Integer z;
  if (t.empty() || z.set_str(t[0] == '+' ? t.substr(1) : t, 10) != 0) {
    throw DomainError("malformed integer '" + t + "'");
  }
  return z;
}

KleinFour parse_klein(std::string_view text) {
  auto t = trim(text);
  if (t == "1" || t == "e") {
    return KleinFour::identity();
  }
  if (t == "b") {
    return KleinFour::b();
  }
  if (t == "c") {
    return KleinFour::c();
  }
  if (t == "bc" || t == "cb") {
    return KleinFour::bc();
  }
  throw DomainError("malformed Klein four-group literal '" + std::string(t) + "'");
}

/// Inner text of "Name(...)" or "Name[...]" when `s` has that shape.
std::optional<std::string_view> call_args(std::string_view s, std::string_view name, char open,
                                          char close) {
  if (s.size() > name.size() + 1 && s.substr(0, name.size()) == name && s[name.size()] == open &&
      s.back() == close) {
    return s.substr(name.size() + 1, s.size() - name.size() - 2);
  }
  return std::nullopt;
}

bool comma_free_literals(const Carrier& c) {
  switch (c.kind) {
    case Carrier::Kind::FreeWord:
    case Carrier::Kind::Cyclic:
    case Carrier::Kind::Klein:
      return true;
    case Carrier::Kind::FreeAbelian:
      return c.rank == 1;
    case Carrier::Kind::ZeroAdjoined:
      return comma_free_literals(c.parts.front());
    default:
      return false;
  }
}

}  // namespace

Carrier Carrier::free_word(Alphabet alphabet, bool unit_allowed) {
  Carrier c;
  c.kind = Kind::FreeWord;
  c.alphabet = std::move(alphabet);
  c.unit_allowed = unit_allowed;
  return c;
}

Carrier Carrier::free_abelian(std::size_t rank) {
  if (rank == 0) {
    throw DomainError("free abelian carrier needs rank >= 1");
  }
  Carrier c;
  c.kind = Kind::FreeAbelian;
  c.rank = rank;
  return c;
}

Carrier Carrier::cyclic(std::uint64_t modulus) {
  if (modulus == 0) {
    throw DomainError("cyclic carrier needs modulus >= 1");
  }
  Carrier c;
  c.kind = Kind::Cyclic;
  c.modulus = modulus;
  return c;
}

Carrier Carrier::klein() {
  Carrier c;
  c.kind = Kind::Klein;
  return c;
}

Carrier Carrier::wreath(Carrier base) {
  if (base.kind == Kind::FreeWord) {
    base.unit_allowed = true;
  }
  if (!identity(base)) {
    throw DomainError("wreath base must have a unit");
  }
  Carrier c;
  c.kind = Kind::Wreath;
  c.parts.push_back(std::move(base));
  return c;
}

Carrier Carrier::zero_adjoined(Carrier base) {
  Carrier c;
  c.kind = Kind::ZeroAdjoined;
  c.parts.push_back(std::move(base));
  return c;
}

Carrier Carrier::product(std::vector<Carrier> factors) {
  if (factors.empty()) {
    throw DomainError("direct product needs at least one factor");
  }
  Carrier c;
  c.kind = Kind::Product;
  c.parts = std::move(factors);
  return c;
}

Carrier parse_carrier(std::string_view text) {
  auto s = trim(text);
  if (s == "Z") {
    return Carrier::free_abelian(1);
  }
  if (s.starts_with("Z^")) {
    auto rank = parse_integer(s.substr(2));
    if (rank < 1 || rank > 64) {
      throw DomainError("rank out of range in carrier '" + std::string(s) + "'");
    }
    return Carrier::free_abelian(rank.get_ui());
  }
  if (s.starts_with("Z/")) {
    auto m = parse_integer(s.substr(2));
    if (m < 1 || m > Integer("4294967296")) {
      throw DomainError("modulus out of range in carrier '" + std::string(s) + "'");
    }
    return Carrier::cyclic(m.get_ui());
  }
  if (s == "V4" || s == "C") {
    return Carrier::klein();
  }
  if (auto args = call_args(s, "F", '[', ']')) {
    return Carrier::free_word(Alphabet(std::string(*args)), false);
  }
  if (auto args = call_args(s, "M", '[', ']')) {
    return Carrier::free_word(Alphabet(std::string(*args)), true);
  }
  if (auto args = call_args(s, "Zero", '(', ')')) {
    return Carrier::zero_adjoined(parse_carrier(*args));
  }
  if (auto args = call_args(s, "Wr", '(', ')')) {
    return Carrier::wreath(parse_carrier(*args));
  }
  if (auto args = call_args(s, "Prod", '(', ')')) {
    std::vector<Carrier> factors;
    for (auto part : split_top(*args, ",")) {
      factors.push_back(parse_carrier(part));
    }
    return Carrier::product(std::move(factors));
  }
  throw DomainError("unknown carrier '" + std::string(s) + "'");
}

std::string to_string(const Carrier& c) {
  switch (c.kind) {
    case Carrier::Kind::FreeWord:
      return std::string(c.unit_allowed ? "M[" : "F[") + c.alphabet->symbols() + "]";
    case Carrier::Kind::FreeAbelian:
      return c.rank == 1 ? "Z" : "Z^" + std::to_string(c.rank);
    case Carrier::Kind::Cyclic:
      return "Z/" + std::to_string(c.modulus);
    case Carrier::Kind::Klein:
      return "V4";
    case Carrier::Kind::Wreath:
      return "Wr(" + to_string(c.parts.front()) + ")";
    case Carrier::Kind::ZeroAdjoined:
      return "Zero(" + to_string(c.parts.front()) + ")";
    case Carrier::Kind::Product: {
      std::string out = "Prod(";
      for (std::size_t i = 0; i < c.parts.size(); ++i) {
        out += (i ? "," : "") + to_string(c.parts[i]);
      }
      return out + ")";
    }
  }
  return "?";
}

Element parse_element(const Carrier& c, std::string_view text) {
  auto s = trim(text);
  switch (c.kind) {
    case Carrier::Kind::FreeWord: {
      if (s == "1" || s.empty()) {
        if (!c.unit_allowed) {
          throw DomainError("the free semigroup " + to_string(c) + " has no unit");
        }
        return Word{};
      }
      for (char ch : s) {
        if (!c.alphabet->contains(ch)) {
          throw DomainError(std::string("letter '") + ch + "' not in alphabet " +
                            c.alphabet->symbols());
        }
      }
      return Word(std::string(s), c.unit_allowed);
    }
    case Carrier::Kind::FreeAbelian: {
      auto pieces = split_top(s, ",");
      if (pieces.size() != c.rank) {
        throw DomainError("expected " + std::to_string(c.rank) + " coordinates in '" +
                          std::string(s) + "'");
      }
      std::vector<Integer> coords;
      for (auto p : pieces) {
        coords.push_back(parse_integer(p));
      }
      return AbelianVector(std::move(coords));
    }
    case Carrier::Kind::Cyclic: {
      auto v = parse_integer(s);
      v %= Integer(static_cast<unsigned long>(c.modulus));
      if (v < 0) {
        v += Integer(static_cast<unsigned long>(c.modulus));
      }
      return CyclicElement{static_cast<std::int64_t>(v.get_ui()), c.modulus};
    }
    case Carrier::Kind::Klein:
      return parse_klein(s);
    case Carrier::Kind::Wreath: {
      auto bar = s.find('|');
      if (bar == std::string_view::npos) {
        throw DomainError("wreath literal must look like top|slot=value;... got '" +
                          std::string(s) + "'");
      }
      WreathElement w;
      w.top = parse_klein(s.substr(0, bar));
      auto body = trim(s.substr(bar + 1));
      if (!body.empty()) {
        for (auto entry : split_top(body, ";")) {
          entry = trim(entry);
          if (entry.empty()) {
            continue;
          }
          auto eq = entry.find('=');
          if (eq == std::string_view::npos) {
            throw DomainError("wreath slot entry needs '=': '" + std::string(entry) + "'");
          }
          KleinFour index = parse_klein(entry.substr(0, eq));
          if (w.slot(index)) {
            throw DomainError("wreath slot " + to_string(index) + " assigned twice");
          }
          w = w.with_slot(index, parse_element(c.parts.front(), strip_brackets(entry.substr(eq + 1))));
        }
      }
      return w;
    }
    case Carrier::Kind::ZeroAdjoined: {
      if (s == "0") {
        return ZeroAdjoined::zero();
      }
      return ZeroAdjoined::of(parse_element(c.parts.front(), strip_brackets(s)));
    }
    case Carrier::Kind::Product: {
      ProductElement p;
      std::size_t pos = 0;
      for (const auto& factor : c.parts) {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
          ++pos;
        }
        if (pos >= s.size() || s[pos] != '(') {
          throw DomainError("product literal must be (x1)(x2)...: '" + std::string(s) + "'");
        }
        int depth = 0;
        std::size_t end = pos;
        for (; end < s.size(); ++end) {
          if (s[end] == '(') {
            ++depth;
          } else if (s[end] == ')' && --depth == 0) {
            break;
          }
        }
        if (end >= s.size()) {
          throw DomainError("unbalanced parentheses in '" + std::string(s) + "'");
        }
        p.parts.push_back(parse_element(factor, s.substr(pos + 1, end - pos - 1)));
        pos = end + 1;
      }
      if (!trim(s.substr(pos)).empty()) {
        throw DomainError("trailing text in product literal '" + std::string(s) + "'");
      }
      return p;
    }
  }
  throw DomainError("unreachable carrier kind");
}

std::vector<Element> parse_element_list(const Carrier& c, std::string_view text) {
  std::string seps = comma_free_literals(c) ? " \t;," : " \t;";
  std::vector<Element> out;
  for (auto item : split_top(text, seps)) {
    if (!trim(item).empty()) {
      out.push_back(parse_element(c, item));
    }
  }
  return out;
}

bool contains(const Carrier& c, const Element& x) {
  switch (c.kind) {
    case Carrier::Kind::FreeWord: {
      const auto* w = std::get_if<Word>(&x);
      if (!w || (w->is_unit() && !c.unit_allowed)) {
        return false;
      }
      return std::all_of(w->letters.begin(), w->letters.end(),
                         [&](char ch) { return c.alphabet->contains(ch); });
    }
    case Carrier::Kind::FreeAbelian: {
      const auto* v = std::get_if<AbelianVector>(&x);
      return v && v->rank() == c.rank;
    }
    case Carrier::Kind::Cyclic: {
      const auto* e = std::get_if<CyclicElement>(&x);
      return e && e->modulus == c.modulus;
    }
    case Carrier::Kind::Klein:
      return std::holds_alternative<KleinFour>(x);
    case Carrier::Kind::Wreath: {
      const auto* w = std::get_if<WreathElement>(&x);
      if (!w) {
        return false;
      }
      return std::all_of(w->slots.begin(), w->slots.end(),
                         [&](const ElementPtr& s) { return !s || contains(c.parts.front(), *s); });
    }
    case Carrier::Kind::ZeroAdjoined: {
      const auto* z = std::get_if<ZeroAdjoined>(&x);
      return z && (z->is_zero() || contains(c.parts.front(), *z->inner));
    }
    case Carrier::Kind::Product: {
      const auto* p = std::get_if<ProductElement>(&x);
      if (!p || p->parts.size() != c.parts.size()) {
        return false;
      }
      for (std::size_t i = 0; i < c.parts.size(); ++i) {
        if (!contains(c.parts[i], p->parts[i])) {
          return false;
        }
      }
      return true;
    }
  }
  return false;
}

std::optional<Element> identity(const Carrier& c) {
  switch (c.kind) {
    case Carrier::Kind::FreeWord:
      if (!c.unit_allowed) {
        return std::nullopt;
      }
      return Element{Word{}};
    case Carrier::Kind::FreeAbelian:
      return Element{AbelianVector::zero(c.rank)};
    case Carrier::Kind::Cyclic:
      return Element{CyclicElement{0, c.modulus}};
    case Carrier::Kind::Klein:
      return Element{KleinFour::identity()};
    case Carrier::Kind::Wreath:
      return Element{WreathElement{}};
    case Carrier::Kind::ZeroAdjoined: {
      auto inner = identity(c.parts.front());
      if (!inner) {
        return std::nullopt;
      }
      return Element{ZeroAdjoined::of(*inner)};
    }
    case Carrier::Kind::Product: {
      ProductElement p;
      for (const auto& factor : c.parts) {
        auto id = identity(factor);
        if (!id) {
          return std::nullopt;
        }
        p.parts.push_back(*id);
      }
      return Element{std::move(p)};
    }
  }
  return std::nullopt;
}

bool is_group(const Carrier& c) {
  switch (c.kind) {
    case Carrier::Kind::FreeWord:
    case Carrier::Kind::ZeroAdjoined:
      return false;
    case Carrier::Kind::FreeAbelian:
    case Carrier::Kind::Cyclic:
    case Carrier::Kind::Klein:
      return true;
    case Carrier::Kind::Wreath:
      return is_group(c.parts.front());
    case Carrier::Kind::Product:
      return std::all_of(c.parts.begin(), c.parts.end(), [](const Carrier& p) { return is_group(p); });
  }
  return false;
}

bool is_abelian(const Carrier& c) {
  switch (c.kind) {
    case Carrier::Kind::FreeWord:
      return c.alphabet->size() == 1;
    case Carrier::Kind::FreeAbelian:
    case Carrier::Kind::Cyclic:
    case Carrier::Kind::Klein:
      return true;
    case Carrier::Kind::Wreath:
      return false;
    case Carrier::Kind::ZeroAdjoined:
      return is_abelian(c.parts.front());
    case Carrier::Kind::Product:
      return std::all_of(c.parts.begin(), c.parts.end(), [](const Carrier& p) { return is_abelian(p); });
  }
  return false;
}

bool is_finite(const Carrier& c) {
  switch (c.kind) {
    case Carrier::Kind::FreeWord:
    case Carrier::Kind::FreeAbelian:
      return false;
    case Carrier::Kind::Cyclic:
    case Carrier::Kind::Klein:
      return true;
    case Carrier::Kind::Wreath:
    case Carrier::Kind::ZeroAdjoined:
      return is_finite(c.parts.front());
    case Carrier::Kind::Product:
      return std::all_of(c.parts.begin(), c.parts.end(), [](const Carrier& p) { return is_finite(p); });
  }
  return false;
}

std::vector<Element> enumerate(const Carrier& c) {
  std::vector<Element> out;
  switch (c.kind) {
    case Carrier::Kind::Cyclic:
      for (std::uint64_t r = 0; r < c.modulus; ++r) {
        out.push_back(CyclicElement{static_cast<std::int64_t>(r), c.modulus});
      }
      break;
    case Carrier::Kind::Klein:
      for (KleinFour k : KleinFour::all()) {
        out.push_back(k);
      }
      break;
    case Carrier::Kind::ZeroAdjoined: {
      auto inner = enumerate(c.parts.front());
      if (inner.empty()) {
        break;
      }
      out.push_back(ZeroAdjoined::zero());
      for (auto& x : inner) {
        out.push_back(ZeroAdjoined::of(x));
      }
      break;
    }
    case Carrier::Kind::Product: {
      std::vector<std::vector<Element>> factors;
      for (const auto& f : c.parts) {
        factors.push_back(enumerate(f));
        if (factors.back().empty()) {
          return {};
        }
      }
      std::vector<std::size_t> idx(factors.size(), 0);
      while (true) {
        ProductElement p;
        for (std::size_t i = 0; i < factors.size(); ++i) {
          p.parts.push_back(factors[i][idx[i]]);
        }
        out.push_back(std::move(p));
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == factors[i].size()) {
          idx[i++] = 0;
        }
        if (i == idx.size()) {
          break;
        }
      }
      break;
    }
    case Carrier::Kind::Wreath: {
      auto base = enumerate(c.parts.front());
      if (base.empty() || base.size() > 16) {
        break;
      }
      std::vector<std::size_t> idx(4, 0);
      for (KleinFour top : KleinFour::all()) {
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
          WreathElement w;
          w.top = top;
          for (KleinFour t : KleinFour::all()) {
            w = w.with_slot(t, base[idx[t.index()]]);
          }
          out.push_back(std::move(w));
          std::size_t i = 0;
          while (i < 4 && ++idx[i] == base.size()) {
            idx[i++] = 0;
          }
          if (i == 4) {
            break;
          }
        }
      }
      break;
    }
    default:
      break;
  }
  return out;
}

Element random_element(const Carrier& c, std::mt19937_64& rng, const SampleShape& shape) {
  switch (c.kind) {
    case Carrier::Kind::FreeWord: {
      std::size_t lo = shape.min_word_length;
      if (lo == 0 && !c.unit_allowed) {
        lo = 1;
      }
      std::uniform_int_distribution<std::size_t> len(lo, std::max(lo, shape.max_word_length));
      std::uniform_int_distribution<std::size_t> letter(0, c.alphabet->size() - 1);
      std::string s(len(rng), ' ');
      for (auto& ch : s) {
        ch = c.alphabet->symbols()[letter(rng)];
      }
      if (s.empty()) {
        return Word{};
      }
      return Word(std::move(s), c.unit_allowed);
    }
    case Carrier::Kind::FreeAbelian: {
      std::uniform_int_distribution<long> coord(-shape.coord_bound, shape.coord_bound);
      std::vector<Integer> v;
      for (std::size_t i = 0; i < c.rank; ++i) {
        v.emplace_back(coord(rng));
      }
      return AbelianVector(std::move(v));
    }
    case Carrier::Kind::Cyclic: {
      std::uniform_int_distribution<std::uint64_t> r(0, c.modulus - 1);
      return CyclicElement{static_cast<std::int64_t>(r(rng)), c.modulus};
    }
    case Carrier::Kind::Klein: {
      std::uniform_int_distribution<int> r(0, 3);
      return KleinFour{static_cast<std::uint8_t>(r(rng))};
    }
    case Carrier::Kind::Wreath: {
      WreathElement w;
      if (shape.slot1_only) {
        return w.with_slot(KleinFour::identity(), random_element(c.parts.front(), rng, shape));
      }
      std::uniform_int_distribution<int> r(0, 3);
      w.top = KleinFour{static_cast<std::uint8_t>(r(rng))};
      std::bernoulli_distribution occupied(0.75);
      for (KleinFour t : KleinFour::all()) {
        if (occupied(rng)) {
          w = w.with_slot(t, random_element(c.parts.front(), rng, shape));
        }
      }
      return w;
    }
    case Carrier::Kind::ZeroAdjoined: {
      std::bernoulli_distribution zero(shape.zero_probability);
      if (zero(rng)) {
        return ZeroAdjoined::zero();
      }
      return ZeroAdjoined::of(random_element(c.parts.front(), rng, shape));
    }
    case Carrier::Kind::Product: {
      ProductElement p;
      for (const auto& f : c.parts) {
        p.parts.push_back(random_element(f, rng, shape));
      }
      return p;
    }
  }
  throw DomainError("unreachable carrier kind");
}

}  // namespace kstab
