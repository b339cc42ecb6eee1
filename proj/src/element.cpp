#include "kstab/element.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace kstab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool slot_equal(const ElementPtr& a, const ElementPtr& b) {
  if (!a || !b) {
    return !a && !b;
  }
  return *a == *b;
}

ElementPtr box(Element x) {
  if (is_identity(x)) {
    return nullptr;
  }
  return std::make_shared<const Element>(std::move(x));
}

ElementPtr slot_mul(const ElementPtr& a, const ElementPtr& b) {
  if (!a) {
    return b;
  }
  if (!b) {
    return a;
  }
  return box(mul(*a, *b));
}

Word mul_words(const Word& x, const Word& y) {
  if (x.unit_allowed != y.unit_allowed) {
    throw DomainError("mul: free semigroup word times free monoid word");
  }
  Word out;
  out.unit_allowed = x.unit_allowed;
  out.letters = x.letters + y.letters;
  return out;
}

AbelianVector mul_vectors(const AbelianVector& x, const AbelianVector& y) {
  if (x.rank() != y.rank()) {
    throw DomainError("mul: abelian vectors of different rank");
  }
  AbelianVector out = x;
  for (std::size_t i = 0; i < out.coords.size(); ++i) {
    out.coords[i] += y.coords[i];
  }
  return out;
}

CyclicElement mul_cyclic(const CyclicElement& x, const CyclicElement& y) {
  if (x.modulus != y.modulus) {
    throw DomainError("mul: residues with different moduli");
  }
  CyclicElement out;
  out.modulus = x.modulus;
  // residues are < modulus, so the sum fits unless modulus > 2^63
  out.residue = (x.residue + y.residue) % x.modulus;
  return out;
}

WreathElement mul_wreath(const WreathElement& x, const WreathElement& y) {
  WreathElement out;
  out.top = x.top * y.top;
  for (KleinFour t : KleinFour::all()) {
    out.slots[t.index()] = slot_mul(x.slots[(t * y.top).index()], y.slots[t.index()]);
  }
  return out;
}

ZeroAdjoined mul_zero(const ZeroAdjoined& x, const ZeroAdjoined& y) {
  if (x.is_zero() || y.is_zero()) {
    return ZeroAdjoined::zero();
  }
  return ZeroAdjoined{std::make_shared<const Element>(mul(*x.inner, *y.inner))};
}

ProductElement mul_product(const ProductElement& x, const ProductElement& y) {
  if (x.parts.size() != y.parts.size()) {
    throw DomainError("mul: direct products of different arity");
  }
  ProductElement out;
  out.parts.reserve(x.parts.size());
  for (std::size_t i = 0; i < x.parts.size(); ++i) {
    out.parts.push_back(mul(x.parts[i], y.parts[i]));
  }
  return out;
}

std::optional<Element> identity_like(const Element& x) {
  return std::visit(
      overloaded{
          [](const Word& w) -> std::optional<Element> {
            if (!w.unit_allowed) {
              return std::nullopt;
            }
            return Element{Word{}};
          },
          [](const AbelianVector& v) -> std::optional<Element> {
            return Element{AbelianVector::zero(v.rank())};
          },
          [](const CyclicElement& c) -> std::optional<Element> {
            return Element{CyclicElement{0, c.modulus}};
          },
          [](const KleinFour&) -> std::optional<Element> { return Element{KleinFour::identity()}; },
          [](const WreathElement&) -> std::optional<Element> { return Element{WreathElement{}}; },
          [](const ZeroAdjoined& z) -> std::optional<Element> {
            if (z.is_zero()) {
              return std::nullopt;
            }
            auto inner = identity_like(*z.inner);
            if (!inner) {
              return std::nullopt;
            }
            return Element{ZeroAdjoined::of(*inner)};
          },
          [](const ProductElement& p) -> std::optional<Element> {
            ProductElement out;
            for (const auto& part : p.parts) {
              auto id = identity_like(part);
              if (!id) {
                return std::nullopt;
              }
              out.parts.push_back(*id);
            }
            return Element{std::move(out)};
          },
      },
      x.base());
}

bool needs_brackets(const std::string& literal) {
  return literal.find_first_of("|;=[]()") != std::string::npos || literal == "0";
}

}  // namespace

// -- Alphabet ---------------------------------------------------------------

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) {
    throw DomainError("alphabet must be nonempty");
  }
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (!std::isalpha(static_cast<unsigned char>(symbols_[i]))) {
      throw DomainError(std::string("alphabet symbol '") + symbols_[i] + "' is not a letter");
    }
    if (symbols_.find(symbols_[i]) != i) {
      throw DomainError(std::string("alphabet symbol '") + symbols_[i] + "' repeated");
    }
  }
}

bool Alphabet::contains(char symbol) const { return symbols_.find(symbol) != std::string::npos; }

std::size_t Alphabet::index_of(char symbol) const {
  auto pos = symbols_.find(symbol);
  if (pos == std::string::npos) {
    throw DomainError(std::string("symbol '") + symbol + "' not in alphabet " + symbols_);
  }
  return pos;
}

// -- carriers -----------------------------------------------------------------

Word::Word(std::string text, bool allow_unit) : letters(std::move(text)), unit_allowed(allow_unit) {
  if (letters.empty() && !unit_allowed) {
    throw DomainError("empty word in a free semigroup without unit");
  }
}

AbelianVector::AbelianVector(std::initializer_list<long> c) {
  coords.reserve(c.size());
  for (long v : c) {
    coords.emplace_back(v);
  }
}

AbelianVector AbelianVector::zero(std::size_t rank) {
  return AbelianVector(std::vector<Integer>(rank, Integer(0)));
}

AbelianVector AbelianVector::unit(std::size_t rank, std::size_t i) {
  auto v = zero(rank);
  v.coords.at(i) = 1;
  return v;
}

CyclicElement::CyclicElement(std::int64_t value, std::uint64_t m) : modulus(m) {
  if (m == 0) {
    throw DomainError("cyclic modulus must be >= 1");
  }
  auto mm = static_cast<std::int64_t>(m);
  residue = static_cast<std::uint64_t>(((value % mm) + mm) % mm);
}

WreathElement WreathElement::with_slot(KleinFour index, const Element& value) const {
  WreathElement out = *this;
  out.slots[index.index()] = box(value);
  return out;
}

bool WreathElement::slot1_supported() const {
  return top.is_identity() && !slots[1] && !slots[2] && !slots[3];
}

bool operator==(const WreathElement& a, const WreathElement& b) {
  if (a.top != b.top) {
    return false;
  }
  for (std::size_t i = 0; i < 4; ++i) {
    if (!slot_equal(a.slots[i], b.slots[i])) {
      return false;
    }
  }
  return true;
}

ZeroAdjoined ZeroAdjoined::of(const Element& x) {
  return ZeroAdjoined{std::make_shared<const Element>(x)};
}

bool operator==(const ZeroAdjoined& a, const ZeroAdjoined& b) { return slot_equal(a.inner, b.inner); }

bool operator==(const ProductElement& a, const ProductElement& b) { return a.parts == b.parts; }

bool operator==(const Element& a, const Element& b) { return a.base() == b.base(); }

// -- semigroup law --------------------------------------------------------

Element mul(const Element& x, const Element& y) {
  return std::visit(
      [](const auto& a, const auto& b) -> Element {
        using A = std::decay_t<decltype(a)>;
        using B = std::decay_t<decltype(b)>;
        if constexpr (!std::is_same_v<A, B>) {
          throw DomainError("mul: operands from different carriers");
        } else if constexpr (std::is_same_v<A, Word>) {
          return mul_words(a, b);
        } else if constexpr (std::is_same_v<A, AbelianVector>) {
          return mul_vectors(a, b);
        } else if constexpr (std::is_same_v<A, CyclicElement>) {
          return mul_cyclic(a, b);
        } else if constexpr (std::is_same_v<A, KleinFour>) {
          return a * b;
        } else if constexpr (std::is_same_v<A, WreathElement>) {
          return mul_wreath(a, b);
        } else if constexpr (std::is_same_v<A, ZeroAdjoined>) {
          return mul_zero(a, b);
        } else {
          return mul_product(a, b);
        }
      },
      x.base(), y.base());
}

Element mul(std::initializer_list<Element> factors) {
  if (factors.size() == 0) {
    throw DomainError("mul: empty product");
  }
  auto it = factors.begin();
  Element acc = *it;
  for (++it; it != factors.end(); ++it) {
    acc = mul(acc, *it);
  }
  return acc;
}

Element pow(const Element& x, const Integer& n) {
  if (n < 0) {
    throw DomainError("pow: negative exponent");
  }
  if (n == 0) {
    auto id = identity_like(x);
    if (!id) {
      throw DomainError("pow: exponent 0 in a carrier without unit");
    }
    return *id;
  }
  if (const auto* v = std::get_if<AbelianVector>(&x)) {
    AbelianVector out = *v;
    for (auto& c : out.coords) {
      c *= n;
    }
    return out;
  }
  if (const auto* c = std::get_if<CyclicElement>(&x)) {
    Integer r = (Integer(static_cast<unsigned long>(c->residue)) * n) %
                Integer(static_cast<unsigned long>(c->modulus));
    return CyclicElement{static_cast<std::int64_t>(r.get_si()), c->modulus};
  }
  if (const auto* k = std::get_if<KleinFour>(&x)) {
    return mpz_odd_p(n.get_mpz_t()) ? *k : KleinFour::identity();
  }
  std::size_t weight = element_weight(x);
  if (weight > 0 && (n > Integer(static_cast<unsigned long>(kMaterializeLimit)) ||
                     Integer(static_cast<unsigned long>(weight)) * n >
                         Integer(static_cast<unsigned long>(kMaterializeLimit)))) {
    throw MaterializationLimit("pow: result would exceed the materialization limit");
  }
  if (const auto* w = std::get_if<Word>(&x)) {
    Word out;
    out.unit_allowed = w->unit_allowed;
    const auto count = n.get_ui();
    out.letters.reserve(w->letters.size() * count);
    for (unsigned long i = 0; i < count; ++i) {
      out.letters += w->letters;
    }
    return out;
  }
  // Generic square-and-multiply, most significant bit first.
  Element acc = x;
  const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    acc = mul(acc, acc);
    if (mpz_tstbit(n.get_mpz_t(), i)) {
      acc = mul(acc, x);
    }
  }
  return acc;
}

bool is_identity(const Element& x) {
  return std::visit(
      overloaded{
          [](const Word& w) { return w.is_unit(); },
          [](const AbelianVector& v) {
            return std::all_of(v.coords.begin(), v.coords.end(),
                               [](const Integer& c) { return c == 0; });
          },
          [](const CyclicElement& c) { return c.residue == 0; },
          [](const KleinFour& k) { return k.is_identity(); },
          [](const WreathElement& w) {
            return w.top.is_identity() &&
                   std::all_of(w.slots.begin(), w.slots.end(), [](const auto& s) { return !s; });
          },
          [](const ZeroAdjoined& z) { return !z.is_zero() && is_identity(*z.inner); },
          [](const ProductElement& p) {
            return std::all_of(p.parts.begin(), p.parts.end(),
                               [](const Element& e) { return is_identity(e); });
          },
      },
      x.base());
}

std::optional<Element> inverse(const Element& x) {
  return std::visit(
      overloaded{
          [](const Word& w) -> std::optional<Element> {
            if (w.is_unit()) {
              return Element{w};
            }
            return std::nullopt;
          },
          [](const AbelianVector& v) -> std::optional<Element> {
            AbelianVector out = v;
            for (auto& c : out.coords) {
              c = -c;
            }
            return Element{std::move(out)};
          },
          [](const CyclicElement& c) -> std::optional<Element> {
            return Element{CyclicElement{-static_cast<std::int64_t>(c.residue), c.modulus}};
          },
          [](const KleinFour& k) -> std::optional<Element> { return Element{k}; },
          [](const WreathElement& w) -> std::optional<Element> {
            // (k v)^{-1} = k^{-1} (v^{-1})^{k^{-1}} and k^{-1} = k in C.
            WreathElement inv_slots;
            for (KleinFour t : KleinFour::all()) {
              if (const Element* s = w.slot(t)) {
                auto si = inverse(*s);
                if (!si) {
                  return std::nullopt;
                }
                inv_slots = inv_slots.with_slot(t, *si);
              }
            }
            WreathElement out = wreath_conjugate(inv_slots, w.top);
            out.top = w.top;
            return Element{std::move(out)};
          },
          [](const ZeroAdjoined& z) -> std::optional<Element> {
            if (z.is_zero()) {
              return std::nullopt;
            }
            auto inner = inverse(*z.inner);
            if (!inner) {
              return std::nullopt;
            }
            return Element{ZeroAdjoined::of(*inner)};
          },
          [](const ProductElement& p) -> std::optional<Element> {
            ProductElement out;
            for (const auto& part : p.parts) {
              auto inv = inverse(part);
              if (!inv) {
                return std::nullopt;
              }
              out.parts.push_back(*inv);
            }
            return Element{std::move(out)};
          },
      },
      x.base());
}

std::string to_string(KleinFour k) {
  switch (k.bits) {
    case 0:
      return "1";
    case 1:
      return "b";
    case 2:
      return "c";
    default:
      return "bc";
  }
}

std::string to_string(const Element& x) {
  return std::visit(
      overloaded{
          [](const Word& w) -> std::string { return w.is_unit() ? "1" : w.letters; },
          [](const AbelianVector& v) {
            std::string out;
            for (std::size_t i = 0; i < v.coords.size(); ++i) {
              if (i > 0) {
                out += ',';
              }
              out += v.coords[i].get_str();
            }
            return out;
          },
          [](const CyclicElement& c) { return std::to_string(c.residue); },
          [](const KleinFour& k) { return to_string(k); },
          [](const WreathElement& w) {
            std::string out = to_string(w.top) + "|";
            bool first = true;
            for (KleinFour t : KleinFour::all()) {
              if (const Element* s = w.slot(t)) {
                if (!first) {
                  out += ';';
                }
                first = false;
                std::string inner = to_string(*s);
                out += to_string(t) + "=" + (needs_brackets(inner) ? "[" + inner + "]" : inner);
              }
            }
            return out;
          },
          [](const ZeroAdjoined& z) -> std::string {
            if (z.is_zero()) {
              return "0";
            }
            std::string inner = to_string(*z.inner);
            return needs_brackets(inner) ? "[" + inner + "]" : inner;
          },
          [](const ProductElement& p) {
            std::string out;
            for (const auto& part : p.parts) {
              out += "(" + to_string(part) + ")";
            }
            return out;
          },
      },
      x.base());
}

std::size_t element_weight(const Element& x) {
  return std::visit(
      overloaded{
          [](const Word& w) { return w.length(); },
          [](const AbelianVector&) { return std::size_t{0}; },
          [](const CyclicElement&) { return std::size_t{0}; },
          [](const KleinFour&) { return std::size_t{0}; },
          [](const WreathElement& w) {
            std::size_t total = 0;
            for (const auto& s : w.slots) {
              if (s) {
                total += element_weight(*s);
              }
            }
            return total;
          },
          [](const ZeroAdjoined& z) { return z.is_zero() ? std::size_t{0} : element_weight(*z.inner); },
          [](const ProductElement& p) {
            std::size_t total = 0;
            for (const auto& part : p.parts) {
              total += element_weight(part);
            }
            return total;
          },
      },
      x.base());
}

// -- wreath machinery -----------------------------------------------------

WreathElement wreath_conjugate(const WreathElement& u, KleinFour t) {
  WreathElement out;
  out.top = u.top;
  for (KleinFour s : KleinFour::all()) {
    out.slots[(s * t).index()] = u.slots[s.index()];
  }
  return out;
}

Element wreath_conjugate(const Element& u, KleinFour t) {
  const auto* w = std::get_if<WreathElement>(&u);
  if (!w) {
    throw DomainError("wreath_conjugate: element is not in a wreath product");
  }
  return wreath_conjugate(*w, t);
}

WreathElement wreath_top(KleinFour t) {
  WreathElement out;
  out.top = t;
  return out;
}

Element embed_step(const Element& s) {
  Element base = s;
  if (auto* w = std::get_if<Word>(&base)) {
    w->unit_allowed = true;
  }
  return WreathElement{}.with_slot(KleinFour::identity(), base);
}

Element embed_chain(const Element& s, std::size_t depth) {
  Element out = s;
  for (std::size_t i = 0; i < depth; ++i) {
    out = embed_step(out);
  }
  return out;
}

namespace {

const WreathElement& require_slot1(const Element& x, const char* what) {
  const auto* w = std::get_if<WreathElement>(&x);
  if (!w || !w->slot1_supported()) {
    throw DomainError(std::string(what) + ": argument is not slot-1 supported in S wr C");
  }
  return *w;
}

}  // namespace

std::array<Element, 3> amplification_triple(const Element& x, const Element& y, const Element& z) {
  require_slot1(x, "amplification_triple");
  require_slot1(y, "amplification_triple");
  require_slot1(z, "amplification_triple");
  Element x1 = mul({x, y, z});
  return {x1, wreath_conjugate(x1, KleinFour::b()), wreath_conjugate(x1, KleinFour::c())};
}

Element conjugate_spread(const Element& x) {
  return mul({x, wreath_conjugate(x, KleinFour::b()), wreath_conjugate(x, KleinFour::c())});
}

Element triple_conjugate_product(const Element& u) {
  return mul({wreath_conjugate(u, KleinFour::bc()), wreath_conjugate(u, KleinFour::c()), u});
}

}  // namespace kstab
