#pragma once

#include "kstab/number.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kstab {

struct Element;
using ElementPtr = std::shared_ptr<const Element>;

/// Ordered set of distinct generator symbols. Symbols are ASCII letters so
/// that word literals never collide with the numeric and structural tokens
/// of the other carriers.
class Alphabet {
 public:
  explicit Alphabet(std::string symbols);

  const std::string& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  bool contains(char symbol) const;
  /// Position of the symbol in the declared order.
  std::size_t index_of(char symbol) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::string symbols_;
};

/// Element of a free semigroup (or free monoid when unit_allowed is set).
struct Word {
  std::string letters;
  bool unit_allowed = false;

  Word() : unit_allowed(true) {}
  explicit Word(std::string text, bool allow_unit = false);

  std::size_t length() const { return letters.size(); }
  bool is_unit() const { return letters.empty(); }
  friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
};

/// Element of the free abelian group Z^k, written additively.
struct AbelianVector {
  std::vector<Integer> coords;

  AbelianVector() = default;
  explicit AbelianVector(std::vector<Integer> c) : coords(std::move(c)) {}
  AbelianVector(std::initializer_list<long> c);

  std::size_t rank() const { return coords.size(); }
  static AbelianVector zero(std::size_t rank);
  static AbelianVector unit(std::size_t rank, std::size_t i);
  friend bool operator==(const AbelianVector&, const AbelianVector&) = default;
};

/// Residue class in Z/m.
struct CyclicElement {
  std::uint64_t residue = 0;
  std::uint64_t modulus = 1;

  CyclicElement() = default;
  CyclicElement(std::int64_t value, std::uint64_t m);
  friend bool operator==(const CyclicElement&, const CyclicElement&) = default;
};

/// b^beta c^gamma in the Klein four-group <b, c | b^2 = c^2 = 1, bc = cb>.
/// bit 0 carries beta, bit 1 carries gamma; the law is XOR.
struct KleinFour {
  std::uint8_t bits = 0;

  static constexpr KleinFour identity() { return KleinFour{0}; }
  static constexpr KleinFour b() { return KleinFour{1}; }
  static constexpr KleinFour c() { return KleinFour{2}; }
  static constexpr KleinFour bc() { return KleinFour{3}; }
  static constexpr std::array<KleinFour, 4> all() { return {identity(), b(), c(), bc()}; }

  constexpr std::size_t index() const { return bits; }
  constexpr bool is_identity() const { return bits == 0; }
  friend constexpr KleinFour operator*(KleinFour x, KleinFour y) {
    return KleinFour{static_cast<std::uint8_t>(x.bits ^ y.bits)};
  }
  friend constexpr bool operator==(KleinFour, KleinFour) = default;
};

/// Element (top, slots) of the wreath product S wr C with C the Klein
/// four-group. Slots are indexed by C; a null slot is the identity of S.
/// Product: (k, v)(k', v') = (kk', v^{k'} v') where (v^{k'})[t] = v[t k'^{-1}],
/// i.e. the top element acts on slot indices by right translation.
struct WreathElement {
  KleinFour top;
  std::array<ElementPtr, 4> slots;

  const Element* slot(KleinFour index) const { return slots[index.index()].get(); }
  /// Copy with slot[index] = value; identity values are elided.
  WreathElement with_slot(KleinFour index, const Element& value) const;
  bool slot1_supported() const;

  friend bool operator==(const WreathElement& a, const WreathElement& b);
};

/// Element of S_0 = S with an absorbing zero adjoined. A null inner pointer
/// is the zero.
struct ZeroAdjoined {
  ElementPtr inner;

  static ZeroAdjoined zero() { return ZeroAdjoined{}; }
  static ZeroAdjoined of(const Element& x);
  bool is_zero() const { return inner == nullptr; }
  friend bool operator==(const ZeroAdjoined& a, const ZeroAdjoined& b);
};

/// Element of a finite direct product S_1 x ... x S_n.
struct ProductElement {
  std::vector<Element> parts;
  friend bool operator==(const ProductElement& a, const ProductElement& b);
};

using ElementVariant = std::variant<Word, AbelianVector, CyclicElement, KleinFour, WreathElement,
                                    ZeroAdjoined, ProductElement>;

struct Element : ElementVariant {
  using ElementVariant::ElementVariant;
  const ElementVariant& base() const { return *this; }
};

bool operator==(const Element& a, const Element& b);

/// Semigroup law. Throws DomainError when x and y come from different carriers.
Element mul(const Element& x, const Element& y);
Element mul(std::initializer_list<Element> factors);

/// n-fold product by repeated squaring. n = 0 yields the identity where the
/// carrier has one and throws DomainError otherwise.
Element pow(const Element& x, const Integer& n);
inline Element pow(const Element& x, unsigned long n) { return pow(x, Integer(n)); }

bool is_identity(const Element& x);
std::optional<Element> inverse(const Element& x);

/// Canonical literal; parse_element(carrier, to_string(x)) == x.
std::string to_string(const Element& x);
std::string to_string(KleinFour k);

/// Total number of letters stored inside x (recursively). Used to refuse
/// materializing astronomically long words.
std::size_t element_weight(const Element& x);

/// Largest element_weight a materialized power may have.
inline constexpr std::size_t kMaterializeLimit = std::size_t{1} << 24;

/// Raised when a power would exceed kMaterializeLimit letters.
class MaterializationLimit : public DomainError {
 public:
  using DomainError::DomainError;
};

// -- wreath product machinery --------------------------------------------

/// t^{-1} u t: keeps the top (C is abelian) and moves slot s to slot s t.
WreathElement wreath_conjugate(const WreathElement& u, KleinFour t);
Element wreath_conjugate(const Element& u, KleinFour t);

/// The top-level group element t itself, as an element of S wr C.
WreathElement wreath_top(KleinFour t);

/// Slot-1 injection S -> S wr C (identifying S with S(1)). Words are
/// promoted to the free monoid since the wreath base carries a unit.
Element embed_step(const Element& s);
/// depth-fold application of embed_step.
Element embed_chain(const Element& s, std::size_t depth);

/// (x1, y1, z1) = (xyz, (xyz)^b, (xyz)^c) for slot-1 supported x, y, z.
std::array<Element, 3> amplification_triple(const Element& x, const Element& y, const Element& z);

/// x x^b x^c: the element whose product structure the amplification lemmas use.
Element conjugate_spread(const Element& x);

/// u^{bc} u^c u.
Element triple_conjugate_product(const Element& u);

}  // namespace kstab
