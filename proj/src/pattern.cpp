#include "kstab/pattern.hpp"

#include <algorithm>

namespace kstab {

PatternCounter::PatternCounter() : PatternCounter("aabb", Alphabet("ab")) {}

PatternCounter::PatternCounter(std::string pattern, Alphabet alphabet)
    : pattern_(std::move(pattern)), alphabet_(std::move(alphabet)) {
  if (pattern_.empty()) {
    throw DomainError("pattern must be nonempty");
  }
  check_letters(pattern_);
}

void PatternCounter::check_letters(std::string_view word) const {
  for (char ch : word) {
    if (!alphabet_.contains(ch)) {
      throw DomainError(std::string("letter '") + ch + "' outside alphabet " + alphabet_.symbols());
    }
  }
}

Integer PatternCounter::count(std::string_view word) const {
  check_letters(word);
  unsigned long hits = 0;
  const std::size_t p = pattern_.size();
  for (std::size_t i = 0; i + p <= word.size(); ++i) {
    if (word.compare(i, p, pattern_) == 0) {
      ++hits;
    }
  }
  return Integer(hits);
}

Integer PatternCounter::crossing_count(const Word& x) const {
  return count(x.letters + x.letters) - 2 * count(x);
}

PowerSummary PatternCounter::summarize(std::string_view word) const {
  PowerSummary s;
  s.length = static_cast<unsigned long>(word.size());
  const std::size_t keep = std::min(word.size(), overhang());
  s.prefix = std::string(word.substr(0, keep));
  s.suffix = std::string(word.substr(word.size() - keep));
  s.count = count(word);
  return s;
}

Integer PatternCounter::straddle(std::string_view left_suffix, std::string_view right_prefix) const {
  std::string joined;
  joined.reserve(left_suffix.size() + right_prefix.size());
  joined.append(left_suffix).append(right_prefix);
  const std::size_t p = pattern_.size();
  const std::size_t junction = left_suffix.size();
  unsigned long hits = 0;
  for (std::size_t i = 0; i < junction && i + p <= joined.size(); ++i) {
    if (i + p > junction && joined.compare(i, p, pattern_) == 0) {
      ++hits;
    }
  }
  return Integer(hits);
}

PowerSummary PatternCounter::concat(const PowerSummary& left, const PowerSummary& right) const {
  PowerSummary out;
  out.length = left.length + right.length;
  out.count = left.count + right.count + straddle(left.suffix, right.prefix);
  const std::size_t keep = overhang();
  std::string head = left.prefix + right.prefix;
  out.prefix = head.substr(0, std::min(head.size(), keep));
  std::string tail = left.suffix + right.suffix;
  out.suffix = tail.substr(tail.size() - std::min(tail.size(), keep));
  return out;
}

PowerSummary PatternCounter::power(const PowerSummary& w, const Integer& n) const {
  if (n < 1) {
    throw DomainError("PatternCounter::power: exponent must be >= 1");
  }
  PowerSummary acc = w;
  const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t i = bits - 1; i-- > 0;) {
    acc = concat(acc, acc);
    if (mpz_tstbit(n.get_mpz_t(), i)) {
      acc = concat(acc, w);
    }
  }
  return acc;
}

Integer PatternCounter::dyadic_power_count(const Word& x, unsigned n) const {
  PowerSummary s = summarize(x.letters);
  for (unsigned i = 0; i < n; ++i) {
    s = concat(s, s);
  }
  return s.count;
}

Integer PatternCounter::power_count(const Word& x, const Integer& n) const {
  return power(summarize(x.letters), n).count;
}

Rational PatternCounter::tilde(const Word& x) const {
  if (x.is_unit()) {
    return 0;
  }
  if (x.length() >= overhang()) {
    return Rational(count(x) + crossing_count(x));
  }
  const std::size_t lift = (overhang() + x.length() - 1) / x.length();
  std::string lifted;
  for (std::size_t i = 0; i < lift; ++i) {
    lifted += x.letters;
  }
  Word y(std::move(lifted), x.unit_allowed);
  Rational q(count(y) + crossing_count(y), static_cast<unsigned long>(lift));
  q.canonicalize();
  return q;
}

Rational PatternCounter::tilde_power(const Word& x, const Integer& n) const {
  if (x.is_unit()) {
    return 0;
  }
  PowerSummary base = summarize(x.letters);
  if (Integer(static_cast<unsigned long>(x.length())) * n >= overhang()) {
    PowerSummary once = power(base, n);
    PowerSummary twice = concat(once, once);
    return Rational(once.count + (twice.count - 2 * once.count));
  }
  // x^n is still shorter than the overhang: it is a short explicit word.
  std::string word;
  for (unsigned long i = 0; i < n.get_ui(); ++i) {
    word += x.letters;
  }
  return tilde(Word(std::move(word), x.unit_allowed));
}

std::vector<Word> all_words(const Alphabet& alphabet, std::size_t max_length, bool unit_allowed) {
  std::vector<Word> out;
  std::vector<std::string> layer{""};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<std::string> next;
    next.reserve(layer.size() * alphabet.size());
    for (const auto& w : layer) {
      for (char ch : alphabet.symbols()) {
        next.push_back(w + ch);
      }
    }
    for (const auto& w : next) {
      out.emplace_back(w, unit_allowed);
    }
    layer = std::move(next);
  }
  return out;
}

WitnessReport instability_witness() {
  const PatternCounter eta;
  WitnessReport report;
  report.expected_value = 1;

  // eta~(xyz) + eta~(x) + eta~(y) + eta~(z) - eta~(xy) - eta~(xz) - eta~(yz)
  // at x = a, y = a, z = bb.
  struct Term {
    const char* word;
    int coefficient;
    int expected;
  };
  constexpr Term terms[] = {
      {"aabb", +1, 1}, {"a", +1, 0},   {"a", +1, 0},   {"bb", +1, 0},
      {"aa", -1, 0},   {"abb", -1, 0}, {"abb", -1, 0},
  };
  for (const auto& t : terms) {
    Word w(t.word);
    WitnessRow row;
    row.word = t.word;
    row.coefficient = t.coefficient;
    row.count = eta.count(w);
    row.tilde = eta.tilde(w);
    row.expected_tilde = t.expected;
    report.value += t.coefficient * row.tilde;
    report.count_value += t.coefficient * row.count;
    report.rows.push_back(std::move(row));
  }

  // Degree-1 homogeneity of eta~ on all words of length <= 6, m <= 16.
  bool homogeneous = true;
  for (const Word& w : all_words(eta.alphabet(), 6)) {
    const Rational base = eta.tilde(w);
    for (unsigned long m = 1; m <= 16; ++m) {
      ++report.homogeneity_samples;
      if (eta.tilde_power(w, Integer(m)) != Rational(static_cast<long>(m)) * base) {
        homogeneous = false;
      }
    }
  }
  report.homogeneity_holds = homogeneous;

  bool rows_ok = std::all_of(report.rows.begin(), report.rows.end(),
                             [](const WitnessRow& r) { return r.tilde == r.expected_tilde; });
  report.passed = rows_ok && homogeneous && report.value == report.expected_value;
  return report;
}

}  // namespace kstab
