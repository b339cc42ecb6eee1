#pragma once

#include "kstab/element.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace kstab {

/// Exact description of a (possibly astronomically long) word that is enough
/// to count pattern occurrences in concatenations: its length, its first and
/// last P-1 letters, and its occurrence count.
struct PowerSummary {
  Integer length;
  std::string prefix;
  std::string suffix;
  Integer count;

  friend bool operator==(const PowerSummary&, const PowerSummary&) = default;
};

/// Counts (overlapping) occurrences of a fixed pattern in words over an
/// alphabet. The default pattern a^2 b^2 over {a, b} is the counting function
/// behind the instability example on the free semigroup of rank two.
class PatternCounter {
 public:
  PatternCounter();
  PatternCounter(std::string pattern, Alphabet alphabet);

  const std::string& pattern() const { return pattern_; }
  const Alphabet& alphabet() const { return alphabet_; }
  /// P - 1: the most letters an occurrence can hang over a junction.
  std::size_t overhang() const { return pattern_.size() - 1; }

  /// Direct scan. Throws DomainError on letters outside the alphabet.
  Integer count(std::string_view word) const;
  Integer count(const Word& w) const { return count(std::string_view(w.letters)); }

  /// count(x x) - 2 count(x): occurrences straddling the junction of two copies.
  Integer crossing_count(const Word& x) const;

  PowerSummary summarize(std::string_view word) const;
  /// Summary of the concatenation; an occurrence straddles the junction iff
  /// it starts inside the left block's last P-1 letters and ends in the right.
  PowerSummary concat(const PowerSummary& left, const PowerSummary& right) const;
  /// Summary of w^n for n >= 1 by square-and-multiply on summaries.
  PowerSummary power(const PowerSummary& w, const Integer& n) const;

  /// Occurrences in x^(2^n) via the doubling recurrence
  /// count' = 2 count + straddle(suffix, prefix); never materializes the word.
  Integer dyadic_power_count(const Word& x, unsigned n) const;
  /// Occurrences in x^n for any n >= 1.
  Integer power_count(const Word& x, const Integer& n) const;

  /// Homogenized count lim count(x^(2^n)) / 2^n. For |x| >= P-1 this is
  /// count(x) + crossing_count(x); shorter words are lifted to a power of
  /// length >= P-1 first and the result divided back.
  Rational tilde(const Word& x) const;
  /// tilde(x^n) computed from summaries of x^n and x^(2n), without using
  /// homogeneity, so that the homogeneity law can be checked against it.
  Rational tilde_power(const Word& x, const Integer& n) const;

  friend bool operator==(const PatternCounter&, const PatternCounter&) = default;

 private:
  void check_letters(std::string_view word) const;
  Integer straddle(std::string_view left_suffix, std::string_view right_prefix) const;

  std::string pattern_;
  Alphabet alphabet_;
};

/// Words of length 1..max_length over the alphabet, shortlex order.
std::vector<Word> all_words(const Alphabet& alphabet, std::size_t max_length, bool unit_allowed = false);

struct WitnessRow {
  std::string word;
  int coefficient = 0;  ///< +1 or -1 in the defect sum
  Integer count;        ///< plain pattern count
  Rational tilde;       ///< homogenized value
  Rational expected_tilde;
};

/// The instability witness at (x, y, z) = (a, a, b^2) for the homogenized
/// count, together with the checks that make it a witness: the defect is
/// nonzero, and the homogenized count is degree-1 homogeneous on a corpus.
struct WitnessReport {
  std::vector<WitnessRow> rows;
  Rational value;           ///< defect of the homogenized count at the triple
  Integer count_value;      ///< same sum with the plain count
  Rational expected_value;  ///< 1
  std::size_t homogeneity_samples = 0;
  bool homogeneity_holds = false;
  bool passed = false;
};

WitnessReport instability_witness();

}  // namespace kstab
