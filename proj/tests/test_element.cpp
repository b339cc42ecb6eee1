#include "doctest.h"

#include "kstab/carrier.hpp"
#include "kstab/element.hpp"

#include <random>

using namespace kstab;

namespace {

Element word(const char* s) { return Word(s); }

std::string repeat(const std::string& s, unsigned n) {
  std::string out;
  for (unsigned i = 0; i < n; ++i) {
    out += s;
  }
  return out;
}

const Carrier& wreath_z() {
  static const Carrier c = Carrier::wreath(Carrier::free_abelian(1));
  return c;
}

Element slot1(long v) { return embed_step(AbelianVector{v}); }

}  // namespace

TEST_CASE("multiplication on each carrier") {
  CHECK(mul(word("ab"), word("ba")) == word("abba"));
  CHECK(mul(AbelianVector{1, 2}, AbelianVector{3, -1}) == Element(AbelianVector{4, 1}));
  CHECK(mul(CyclicElement(3, 5), CyclicElement(4, 5)) == Element(CyclicElement(2, 5)));
  CHECK(mul(KleinFour::b(), KleinFour::c()) == Element(KleinFour::bc()));

  const Element zero = ZeroAdjoined::zero();
  const Element x = ZeroAdjoined::of(word("ab"));
  CHECK(mul(zero, x) == zero);
  CHECK(mul(x, zero) == zero);
  CHECK(mul(x, x) == Element(ZeroAdjoined::of(word("abab"))));
}

TEST_CASE("mismatched carriers are rejected") {
  CHECK_THROWS_AS(mul(word("a"), AbelianVector{1}), DomainError);
  CHECK_THROWS_AS(mul(AbelianVector{1}, AbelianVector{1, 2}), DomainError);
  CHECK_THROWS_AS(mul(CyclicElement(1, 3), CyclicElement(1, 4)), DomainError);
}

TEST_CASE("powers") {
  CHECK(pow(word("ab"), 3ul) == word("ababab"));
  CHECK(pow(AbelianVector{2, -1}, 4ul) == Element(AbelianVector{8, -4}));

  // Z/5 is written additively: 7 * 3 = 21 = 1 mod 5
  CHECK(pow(CyclicElement(3, 5), 7ul) == Element(CyclicElement(1, 5)));

  CHECK_THROWS_AS(pow(word("ab"), 0ul), DomainError);
  CHECK(pow(Element(Word("ab", true)), 0ul) == Element(Word("", true)));

  Integer big;
  mpz_ui_pow_ui(big.get_mpz_t(), 2, 40);
  const Element p = pow(AbelianVector{3}, big);
  CHECK(std::get<AbelianVector>(p).coords[0] == Integer(3) * big);
  CHECK_THROWS_AS(pow(word("ab"), big), MaterializationLimit);
}

TEST_CASE("cyclic powers agree with repeated addition") {
  for (std::uint64_t m = 1; m <= 12; ++m) {
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(m); ++r) {
      std::uint64_t acc = 0;
      for (unsigned long n = 1; n <= 20; ++n) {
        acc = (acc + static_cast<std::uint64_t>(r)) % m;
        CHECK(pow(CyclicElement(r, m), n) == Element(CyclicElement(static_cast<std::int64_t>(acc), m)));
      }
    }
  }
}

TEST_CASE("word powers have length n L") {
  std::mt19937_64 rng(11);
  const Carrier f = Carrier::free_word(Alphabet("abc"));
  for (int i = 0; i < 200; ++i) {
    const Word w = std::get<Word>(random_element(f, rng));
    const unsigned n = 1 + static_cast<unsigned>(rng() % 9);
    const Word p = std::get<Word>(pow(Element(w), static_cast<unsigned long>(n)));
    CHECK(p.letters == repeat(w.letters, n));
  }
}

TEST_CASE("associativity and power laws on random elements") {
  std::mt19937_64 rng(7);
  const std::vector<Carrier> carriers = {
      Carrier::free_word(Alphabet("ab")),   Carrier::free_abelian(3),
      Carrier::cyclic(9),                   Carrier::klein(),
      wreath_z(),                           Carrier::wreath(Carrier::free_word(Alphabet("ab"))),
      Carrier::zero_adjoined(Carrier::free_word(Alphabet("ab"))),
      Carrier::product({Carrier::free_abelian(1), Carrier::cyclic(2)}),
  };
  for (const Carrier& c : carriers) {
    CAPTURE(to_string(c));
    for (int i = 0; i < 10000; ++i) {
      const Element x = random_element(c, rng), y = random_element(c, rng), z = random_element(c, rng);
      REQUIRE(mul(mul(x, y), z) == mul(x, mul(y, z)));
    }
    for (int i = 0; i < 200; ++i) {
      const Element x = random_element(c, rng);
      const unsigned long m = 1 + rng() % 16, n = 1 + rng() % 16;
      REQUIRE(pow(x, m + n) == mul(pow(x, m), pow(x, n)));
    }
  }
}

TEST_CASE("Klein four-group is abelian with every element of order at most two") {
  for (KleinFour x : KleinFour::all()) {
    CHECK((x * x).is_identity());
    for (KleinFour y : KleinFour::all()) {
      CHECK(x * y == y * x);
    }
  }
}

TEST_CASE("zero is two-sided absorbing") {
  const Carrier c = Carrier::zero_adjoined(Carrier::free_word(Alphabet("ab")));
  const Element zero = ZeroAdjoined::zero();
  std::vector<Element> elements = {zero};
  for (const char* w : {"a", "b", "ab", "bba"}) {
    elements.push_back(ZeroAdjoined::of(word(w)));
  }
  for (const Element& x : elements) {
    CHECK(mul(zero, x) == zero);
    CHECK(mul(x, zero) == zero);
    CHECK(contains(c, x));
  }
}

TEST_CASE("wreath conjugation moves slot 1 to slot t") {
  const Element u = slot1(5);
  for (KleinFour t : KleinFour::all()) {
    const WreathElement v = std::get<WreathElement>(wreath_conjugate(u, t));
    CHECK(v.top == KleinFour::identity());
    for (KleinFour s : KleinFour::all()) {
      if (s == t) {
        REQUIRE(v.slot(s) != nullptr);
        CHECK(*v.slot(s) == Element(AbelianVector{5}));
      } else {
        CHECK(v.slot(s) == nullptr);
      }
    }
  }
  CHECK(wreath_conjugate(wreath_conjugate(u, KleinFour::c()), KleinFour::c()) == u);

  const Element ub = wreath_conjugate(u, KleinFour::b()), uc = wreath_conjugate(u, KleinFour::c());
  CHECK(mul(ub, uc) == mul(uc, ub));
}

TEST_CASE("conjugation agrees with explicit t^-1 u t and distributes over products") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const Element u = random_element(wreath_z(), rng), v = random_element(wreath_z(), rng);
    const KleinFour t = KleinFour::all()[rng() % 4];
    const Element top = wreath_top(t);
    REQUIRE(wreath_conjugate(u, t) == mul({top, u, top}));
    REQUIRE(wreath_conjugate(mul(u, v), t) == mul(wreath_conjugate(u, t), wreath_conjugate(v, t)));
  }
}

TEST_CASE("amplification triple") {
  const Element e = *identity(wreath_z());
  for (const Element& x : amplification_triple(e, e, e)) {
    CHECK(is_identity(x));
  }

  std::mt19937_64 rng(5);
  SampleShape shape;
  shape.slot1_only = true;
  const std::vector<Carrier> bases = {wreath_z(), Carrier::wreath(Carrier::free_word(Alphabet("ab")))};
  for (const Carrier& c : bases) {
    for (int i = 0; i < 1000; ++i) {
      const Element x = random_element(c, rng, shape), y = random_element(c, rng, shape),
                    z = random_element(c, rng, shape);
      const auto [x1, y1, z1] = amplification_triple(x, y, z);
      REQUIRE(x1 == mul({x, y, z}));
      REQUIRE(y1 == wreath_conjugate(x1, KleinFour::b()));
      REQUIRE(z1 == wreath_conjugate(x1, KleinFour::c()));
      REQUIRE(mul({x1, y1, z1}) == mul({conjugate_spread(x), conjugate_spread(y), conjugate_spread(z)}));
    }
  }

  const Element not_slot1 = wreath_conjugate(slot1(1), KleinFour::b());
  CHECK_THROWS_AS(amplification_triple(not_slot1, e, e), DomainError);
}

TEST_CASE("embedding is a homomorphism") {
  CHECK(is_identity(embed_step(Word("", true))));
  CHECK(mul(embed_step(word("ab")), embed_step(word("ba"))) == embed_step(word("abba")));

  std::mt19937_64 rng(9);
  const Carrier f = Carrier::free_word(Alphabet("ab"));
  for (int i = 0; i < 500; ++i) {
    const Element s = random_element(f, rng), t = random_element(f, rng);
    const Element es = embed_chain(s, 3), et = embed_chain(t, 3);
    REQUIRE(mul(es, et) == embed_chain(mul(s, t), 3));
    REQUIRE(std::get<WreathElement>(es).slot1_supported());
  }
}

TEST_CASE("literals round-trip") {
  std::mt19937_64 rng(13);
  const std::vector<Carrier> carriers = {
      Carrier::free_word(Alphabet("ab")),
      Carrier::free_word(Alphabet("ab"), true),
      Carrier::free_abelian(3),
      Carrier::cyclic(7),
      Carrier::klein(),
      wreath_z(),
      Carrier::wreath(wreath_z()),
      Carrier::zero_adjoined(Carrier::free_word(Alphabet("ab"))),
      Carrier::product({Carrier::free_abelian(1), Carrier::cyclic(2)}),
  };
  for (const Carrier& c : carriers) {
    CHECK(parse_carrier(to_string(c)) == c);
    for (int i = 0; i < 300; ++i) {
      const Element x = random_element(c, rng);
      REQUIRE(parse_element(c, to_string(x)) == x);
    }
  }
  CHECK(parse_element(Carrier::free_abelian(3), "3,-1,2") == Element(AbelianVector{3, -1, 2}));
  CHECK_THROWS_AS(parse_element(Carrier::free_word(Alphabet("ab")), "abc"), DomainError);
  CHECK_THROWS_AS(parse_element(Carrier::free_abelian(2), "1,2,3"), DomainError);
  CHECK_THROWS_AS(parse_carrier("Q"), DomainError);
  CHECK_THROWS_AS(Alphabet("aba"), DomainError);
}

TEST_CASE("inverses") {
  CHECK(*inverse(AbelianVector{2, -3}) == Element(AbelianVector{-2, 3}));
  CHECK(*inverse(CyclicElement(2, 7)) == Element(CyclicElement(5, 7)));
  CHECK_FALSE(inverse(word("ab")).has_value());
  const Element u = mul(wreath_top(KleinFour::b()), slot1(4));
  CHECK(is_identity(mul(u, *inverse(u))));
}
