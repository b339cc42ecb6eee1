#include "doctest.h"

#include "kstab/pattern.hpp"

#include <random>

using namespace kstab;

namespace {

long scan(const std::string& text, const std::string& pattern) {
  long n = 0;
  for (std::size_t i = 0; i + pattern.size() <= text.size(); ++i) {
    n += text.compare(i, pattern.size(), pattern) == 0 ? 1 : 0;
  }
  return n;
}

std::string repeat(const std::string& s, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    out += s;
  }
  return out;
}

// Eventual per-copy increment of the pattern count along x^k, by direct scan.
long block_increment(const std::string& x, const std::string& pattern) {
  const std::size_t k = pattern.size() + 2;
  return scan(repeat(x, k + 1), pattern) - scan(repeat(x, k), pattern);
}

std::string random_letters(std::mt19937_64& rng, const std::string& alphabet, std::size_t lo, std::size_t hi) {
  const std::size_t len = lo + rng() % (hi - lo + 1);
  std::string s;
  for (std::size_t i = 0; i < len; ++i) {
    s += alphabet[rng() % alphabet.size()];
  }
  return s;
}

}  // namespace

TEST_CASE("pattern counts") {
  const PatternCounter eta;
  CHECK(eta.count("aabb") == 1);
  CHECK(eta.count("ab") == 0);
  CHECK(eta.count("aabbaabb") == 2);
  CHECK(eta.count("aaabbb") == 1);
  CHECK_THROWS_AS(eta.count("aabc"), DomainError);

  const PatternCounter overlapping("aa", Alphabet("ab"));
  CHECK(overlapping.count("aaaa") == 3);
}

TEST_CASE("crossing counts") {
  const PatternCounter eta;
  CHECK(eta.crossing_count(Word("aabb")) == 0);
  CHECK(eta.crossing_count(Word("bbaa")) == 1);
  CHECK(eta.crossing_count(Word("a")) == 0);
  CHECK(eta.crossing_count(Word("ab")) == 0);
}

TEST_CASE("power counts") {
  const PatternCounter eta;
  CHECK(eta.dyadic_power_count(Word("aabb"), 1) == 2);
  CHECK(eta.dyadic_power_count(Word("bbaa"), 2) == 3);
  for (unsigned n = 0; n <= 20; ++n) {
    CHECK(eta.dyadic_power_count(Word("ab"), n) == 0);
  }
  // (abba)^(2^n): every junction "a|abb" is an occurrence, and there are 2^n - 1 junctions
  Integer expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), 2, 40);
  CHECK(eta.dyadic_power_count(Word("abba"), 40) == expected - 1);
}

TEST_CASE("doubling recurrence matches brute force for every short word") {
  const PatternCounter eta;
  const auto words = all_words(Alphabet("ab"), 8);
  REQUIRE(words.size() == 510);
  for (const Word& w : words) {
    std::string s = w.letters;
    for (unsigned n = 0; n <= 6; ++n) {
      REQUIRE(eta.dyadic_power_count(w, n) == scan(s, "aabb"));
      s += s;
    }
  }
}

TEST_CASE("arbitrary power counts match brute force for other patterns") {
  std::mt19937_64 rng(17);
  for (const char* pattern : {"aabb", "aba", "abcab", "b"}) {
    const std::string alphabet = std::string(pattern).find('c') == std::string::npos ? "ab" : "abc";
    const PatternCounter counter(pattern, Alphabet(alphabet));
    for (int i = 0; i < 300; ++i) {
      const std::string x = random_letters(rng, alphabet, 1, 7);
      const std::size_t n = 1 + rng() % 12;
      REQUIRE(counter.power_count(Word(x), Integer(static_cast<unsigned long>(n))) == scan(repeat(x, n), pattern));
    }
  }
}

TEST_CASE("summaries compose like concatenation") {
  std::mt19937_64 rng(19);
  const PatternCounter eta;
  for (int i = 0; i < 2000; ++i) {
    const std::string u = random_letters(rng, "ab", 1, 9), v = random_letters(rng, "ab", 1, 9);
    REQUIRE(eta.concat(eta.summarize(u), eta.summarize(v)) == eta.summarize(u + v));
  }
}

TEST_CASE("homogenized count") {
  const PatternCounter eta;
  CHECK(eta.tilde(Word("aabb")) == 1);
  for (const char* w : {"a", "b", "aa", "bb", "abb"}) {
    CHECK(eta.tilde(Word(w)) == 0);
  }
  CHECK(eta.tilde(Word("bbaa")) == 1);

  Integer big;
  mpz_ui_pow_ui(big.get_mpz_t(), 2, 30);
  // every one of the 2^30 - 1 junctions of (bbaa)^(2^30) carries one occurrence
  const Integer count = eta.dyadic_power_count(Word("bbaa"), 30);
  CHECK(count == big - 1);
  Rational gap = eta.tilde(Word("bbaa")) - Rational(count) / Rational(big);
  CHECK(abs(gap) <= Rational(1) / Rational(big));
}

TEST_CASE("homogenized count equals the eventual per-copy increment") {
  const PatternCounter eta;
  for (const Word& w : all_words(Alphabet("ab"), 8)) {
    REQUIRE(eta.tilde(w) == block_increment(w.letters, "aabb"));
  }
  // Words shorter than the pattern overhang, where one occurrence can span several copies
  const PatternCounter long_pattern("aaaab", Alphabet("ab"));
  for (const Word& w : all_words(Alphabet("ab"), 4)) {
    const Rational t = long_pattern.tilde(w);
    const long inc = block_increment(w.letters, "aaaab");
    CHECK(t == inc);
  }
}

TEST_CASE("homogenized count is degree-1 homogeneous") {
  const PatternCounter eta;
  for (const Word& w : all_words(Alphabet("ab"), 6)) {
    const Rational t = eta.tilde(w);
    for (unsigned long m = 1; m <= 16; ++m) {
      REQUIRE(eta.tilde_power(w, Integer(m)) == Rational(Integer(m)) * t);
    }
  }
}

TEST_CASE("superadditivity windows") {
  std::mt19937_64 rng(23);
  const PatternCounter eta;
  for (int i = 0; i < 20000; ++i) {
    const std::string u = random_letters(rng, "ab", 1, 30), v = random_letters(rng, "ab", 1, 30),
                      w = random_letters(rng, "ab", 1, 30);
    const long two = scan(u + v, "aabb") - scan(u, "aabb") - scan(v, "aabb");
    REQUIRE((two == 0 || two == 1));
    REQUIRE(eta.count(u + v) - eta.count(u) - eta.count(v) == two);
    const long three = scan(u + v + w, "aabb") - scan(u, "aabb") - scan(v, "aabb") - scan(w, "aabb");
    REQUIRE((three >= 0 && three <= 2));
  }
}

TEST_CASE("instability witness") {
  const WitnessReport r = instability_witness();
  CHECK(r.value == 1);
  CHECK(r.count_value == 1);
  CHECK(r.expected_value == 1);
  CHECK(r.homogeneity_holds);
  CHECK(r.passed);
  REQUIRE(r.rows.size() == 7);
  std::vector<Rational> tildes;
  for (const WitnessRow& row : r.rows) {
    CHECK(row.tilde == row.expected_tilde);
    tildes.push_back(row.tilde);
  }
  CHECK(tildes[0] == 1);
  for (std::size_t i = 1; i < tildes.size(); ++i) {
    CHECK(tildes[i] == 0);
  }
}

TEST_CASE("word enumeration") {
  const auto words = all_words(Alphabet("ab"), 3);
  REQUIRE(words.size() == 14);
  CHECK(words.front().letters == "a");
  CHECK(words[2].letters == "aa");
  CHECK(words.back().letters == "bbb");
}
