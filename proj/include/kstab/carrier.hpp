#pragma once

#include "kstab/element.hpp"

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace kstab {

/// Describes the ambient semigroup that elements and functions live on.
///
/// Textual form (used by the CLI and by configs):
///   Z, Z^k        free abelian group of rank 1 or k
///   Z/m           cyclic group of order m
///   V4            Klein four-group
///   F[ab]         free semigroup over the letters a, b
///   M[ab]         free monoid over the letters a, b
///   Zero(<c>)     <c> with an absorbing zero adjoined
///   Wr(<c>)       wreath product <c> wr V4 (word bases are promoted to monoids)
///   Prod(<c>,...) direct product
struct Carrier {
  enum class Kind { FreeWord, FreeAbelian, Cyclic, Klein, Wreath, ZeroAdjoined, Product };

  Kind kind = Kind::FreeAbelian;
  std::optional<Alphabet> alphabet;
  bool unit_allowed = false;
  std::size_t rank = 1;
  std::uint64_t modulus = 1;
  std::vector<Carrier> parts;

  static Carrier free_word(Alphabet alphabet, bool unit_allowed = false);
  static Carrier free_abelian(std::size_t rank);
  static Carrier cyclic(std::uint64_t modulus);
  static Carrier klein();
  static Carrier wreath(Carrier base);
  static Carrier zero_adjoined(Carrier base);
  static Carrier product(std::vector<Carrier> factors);

  friend bool operator==(const Carrier&, const Carrier&) = default;
};

Carrier parse_carrier(std::string_view text);
std::string to_string(const Carrier& carrier);

/// Parses one element literal. Word letters are checked against the
/// alphabet; numeric literals against rank and modulus.
Element parse_element(const Carrier& carrier, std::string_view text);

/// Parses a list of literals. Whitespace and ';' always separate items;
/// ',' also separates items on carriers whose literals never contain one
/// (Z, Z/m, V4, words and their zero adjunctions). Bracketed groups are
/// never split.
std::vector<Element> parse_element_list(const Carrier& carrier, std::string_view text);

bool contains(const Carrier& carrier, const Element& x);
std::optional<Element> identity(const Carrier& carrier);
bool is_group(const Carrier& carrier);
bool is_abelian(const Carrier& carrier);
/// Every element has finite order (so the carrier is periodic).
bool is_finite(const Carrier& carrier);
/// All elements of a finite carrier in a fixed order; empty when infinite.
std::vector<Element> enumerate(const Carrier& carrier);

/// Knobs for random element generation.
struct SampleShape {
  std::size_t min_word_length = 1;
  std::size_t max_word_length = 8;
  long coord_bound = 20;
  /// Probability of drawing the zero in a zero-adjoined carrier.
  double zero_probability = 0.1;
  /// Wreath elements: restrict to slot-1 supported elements.
  bool slot1_only = false;
};

Element random_element(const Carrier& carrier, std::mt19937_64& rng, const SampleShape& shape = {});

}  // namespace kstab
