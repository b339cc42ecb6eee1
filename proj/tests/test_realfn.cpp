#include "doctest.h"

#include "kstab/carrier.hpp"
#include "kstab/defect.hpp"
#include "kstab/realfn.hpp"

#include <cmath>
#include <random>

using namespace kstab;

namespace {

RationalMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  RationalMatrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long v : row) {
      m(i, j++) = v;
    }
    ++i;
  }
  return m;
}

RationalVector vec(std::initializer_list<long> xs) {
  RationalVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (long x : xs) {
    v(i++) = x;
  }
  return v;
}

RealFn square() { return RealFn::quadratic(mat({{1}}), vec({0})); }
RealFn identity_fn() { return RealFn::additive(vec({1})); }

Element z(long n) { return AbelianVector{n}; }

Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational expand_quadratic(const RationalMatrix& m, const RationalVector& a, const AbelianVector& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < v.rank(); ++i) {
    s += a(static_cast<Eigen::Index>(i)) * Rational(v.coords[i]);
    for (std::size_t j = 0; j < v.rank(); ++j) {
      s += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * Rational(v.coords[i]) *
           Rational(v.coords[j]);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("evaluation of basic bodies") {
  CHECK(evaluate(square(), z(3)) == Number(9));
  CHECK(evaluate(RealFn::additive(vec({2, -1})), AbelianVector{1, 1}) == Number(1));
  CHECK(evaluate(RealFn::pattern_count(), Word("aabb")) == Number(1));
  CHECK(evaluate(RealFn::pattern_tilde(), Word("bbaa")) == Number(1));
  CHECK(evaluate(RealFn::zero(), z(5)) == Number(0));
  CHECK(evaluate(RealFn::power_compose(square(), Integer(3)), z(2)) == Number(36));
  CHECK(evaluate(Rational(1, 2) * square() + identity_fn(), z(4)) == Number(12));
  CHECK(evaluate(square() - identity_fn(), z(4)) == Number(12));
}

TEST_CASE("quadratic bodies agree with direct expansion") {
  std::mt19937_64 rng(1);
  const RationalMatrix m = mat({{1, 2, -1}, {2, 3, 0}, {-1, 0, 5}});
  const RationalVector a = vec({5, -1, 2});
  const RealFn f = RealFn::quadratic(m, a);
  const Carrier c = Carrier::free_abelian(3);
  for (int i = 0; i < 500; ++i) {
    const Element x = random_element(c, rng);
    REQUIRE(evaluate(f, x) == Number(expand_quadratic(m, a, std::get<AbelianVector>(x))));
  }
  CHECK_THROWS_AS(RealFn::quadratic(mat({{1, 2}, {0, 1}}), vec({0, 0})), DomainError);
}

TEST_CASE("tables are exact and closed") {
  const RealFn t = RealFn::table({{CyclicElement(0, 3), Number(1)}, {CyclicElement(1, 3), Number(-2)}});
  CHECK(evaluate(t, CyclicElement(1, 3)) == Number(-2));
  CHECK_THROWS_AS(evaluate(t, CyclicElement(2, 3)), DomainError);
  CHECK_THROWS_AS(RealFn::table({{CyclicElement(0, 3), Number(1)}, {CyclicElement(0, 3), Number(2)}}), DomainError);
}

TEST_CASE("noise is deterministic, bounded and respects symmetry") {
  const RealFn n = RealFn::noise(42, Rational(1, 10));
  const RealFn even = RealFn::noise(42, Rational(1, 10), NoiseSymmetry::Even);
  const RealFn odd = RealFn::noise(42, Rational(1, 10), NoiseSymmetry::Odd);
  CHECK_FALSE(n.is_exact());
  for (long k = -200; k <= 200; ++k) {
    const double v = evaluate(n, z(k)).to_double();
    CHECK(v == evaluate(n, z(k)).to_double());
    CHECK(std::abs(v) <= 0.1);
    CHECK(evaluate(even, z(k)) == evaluate(even, z(-k)));
    CHECK(evaluate(odd, z(k)) == -evaluate(odd, z(-k)));
  }
  CHECK(noise_sample(1, "x", 1.0) != noise_sample(2, "x", 1.0));
  // powers of one primitive word share a key prefix but still get independent samples
  const RealFn w = RealFn::noise(3, Rational(1));
  CHECK(evaluate(w, Word("ab")) != evaluate(w, Word("abab")));
  CHECK_THROWS_AS(RealFn::noise(1, Rational(-1)), DomainError);
}

TEST_CASE("primitive roots") {
  CHECK(primitive_root("abab") == std::pair<std::string, Integer>{"ab", 2});
  CHECK(primitive_root("aba") == std::pair<std::string, Integer>{"aba", 1});
  CHECK(primitive_root("aaaa") == std::pair<std::string, Integer>{"a", 4});
}

TEST_CASE("power evaluation without materializing") {
  Integer big;
  mpz_ui_pow_ui(big.get_mpz_t(), 2, 40);
  CHECK(evaluate_power(square(), z(3), big) == Number(Rational(big * big * 9)));
  CHECK(evaluate_power(RealFn::pattern_count(), Word("abba"), big) == Number(Rational(big - 1)));
  CHECK(evaluate_power(RealFn::pattern_tilde(), Word("bbaa"), big) == Number(Rational(big)));

  std::mt19937_64 rng(2);
  const RealFn f = RealFn::pattern_count() + Rational(3) * RealFn::pattern_tilde();
  for (const Word& w : all_words(Alphabet("ab"), 5)) {
    const unsigned long n = 1 + rng() % 9;
    REQUIRE(evaluate_power(f, w, Integer(n)) == evaluate(f, pow(Element(w), n)));
  }
}

TEST_CASE("pullbacks") {
  const RealFn counts = RealFn::pullback(Homomorphism::abelianize(Alphabet("ab")), RealFn::additive(vec({1, 10})));
  CHECK(evaluate(counts, Word("abba")) == Number(22));

  const Carrier prod = Carrier::product({Carrier::free_abelian(1), Carrier::cyclic(2)});
  const RealFn first = RealFn::pullback(Homomorphism::project(0), square());
  CHECK(evaluate(first, parse_element(prod, "(3)(1)")) == Number(9));

  const Carrier wr = Carrier::wreath(Carrier::free_abelian(1));
  const RealFn sigma = RealFn::pullback(Homomorphism::slot_sum(Carrier::free_abelian(1)), identity_fn());
  CHECK(evaluate(sigma, parse_element(wr, "b|1=[2];c=[-5]")) == Number(-3));
  CHECK(evaluate(sigma, parse_element(wr, "bc|")) == Number(0));
}

TEST_CASE("kannappan defect examples") {
  CHECK(kannappan_defect(square(), z(3), z(-7), z(11)) == Number(0));
  CHECK(kannappan_defect(RealFn::pattern_count(), Word("a"), Word("a"), Word("bb")) == Number(1));

  // f(k, v) = K * v on Z x Z/2, and (v, v, v) = (1, 1, 1): 1 + 1 + 1 + 1 - 0 - 0 - 0 = 4 copies of K
  const Carrier prod = Carrier::product({Carrier::free_abelian(1), Carrier::cyclic(2)});
  const Rational big_k(7);
  const RealFn bit = RealFn::pullback(
      Homomorphism::project(1), RealFn::table({{CyclicElement(0, 2), Number(0)}, {CyclicElement(1, 2), Number(big_k)}}));
  for (long a = -1; a <= 1; ++a) {
    const Element x = parse_element(prod, "(" + std::to_string(a) + ")(1)");
    CHECK(kannappan_defect(bit, x, x, x) == Number(Rational(4 * big_k)));
  }
}

TEST_CASE("quadratic plus additive functions have zero defect on abelian carriers") {
  std::mt19937_64 rng(3);
  const Carrier c = Carrier::free_abelian(2);
  const RealFn f = RealFn::quadratic(mat({{2, -3}, {-3, 1}}), vec({4, 7})) +
                   Rational(-5, 3) * RealFn::additive(vec({1, 2}));
  for (int i = 0; i < 10000; ++i) {
    REQUIRE(kannappan_defect(f, random_element(c, rng), random_element(c, rng), random_element(c, rng)) == Number(0));
  }
}

TEST_CASE("sup_defect") {
  std::vector<Triple> corpus;
  const auto words = all_words(Alphabet("ab"), 4);
  for (const Word& x : words) {
    for (const Word& y : words) {
      for (const Word& w : words) {
        corpus.push_back({x, y, w});
      }
    }
  }
  const DefectReport eta = sup_defect(RealFn::pattern_count(), corpus);
  CHECK(eta.samples == corpus.size());
  CHECK(eta.sup_estimate <= Number(5));
  CHECK(eta.sup_estimate >= Number(1));
  CHECK(abs(eta.value) == eta.sup_estimate);
  CHECK(eta.exact);

  std::vector<Triple> ints;
  for (long a = -20; a <= 20; a += 3) {
    for (long b = -20; b <= 20; b += 4) {
      ints.push_back({z(a), z(b), z(a - b)});
    }
  }
  CHECK(sup_defect(square(), ints).sup_estimate == Number(0));
  const DefectReport noisy = sup_defect(square() + RealFn::noise(9, Rational(1, 10)), ints);
  CHECK_FALSE(noisy.exact);
  CHECK(noisy.sup_estimate <= Number(0.7 + 1e-12));

  std::vector<Triple> reversed(ints.rbegin(), ints.rend());
  CHECK(to_string(sup_defect(square(), reversed).triple[0]) == to_string(sup_defect(square(), ints).triple[0]));
  CHECK_THROWS_AS(sup_defect(square(), std::vector<Triple>{}), DomainError);
}

TEST_CASE("n-fold defect") {
  std::mt19937_64 rng(4);
  const Carrier words = Carrier::free_word(Alphabet("ab"));
  const RealFn eta = RealFn::pattern_count();
  for (int i = 0; i < 2000; ++i) {
    const Element x = random_element(words, rng), y = random_element(words, rng), w = random_element(words, rng);
    REQUIRE(nfold_defect(eta, {x, y, w}, 5).value == kannappan_defect(eta, x, y, w));
  }
  for (unsigned n = 3; n <= 8; ++n) {
    for (int i = 0; i < 500; ++i) {
      std::vector<Element> xs;
      for (unsigned j = 0; j < n; ++j) {
        xs.push_back(random_element(words, rng));
      }
      const BoundedValue v = nfold_defect(eta, xs, 5);
      REQUIRE(v.bound == Number(frac(5 * (n - 2) * (n - 1), 2)));
      REQUIRE(v.within());
    }
  }
  CHECK(nfold_defect(square(), {z(1), z(2), z(3), z(4), z(5)}, 0).value == Number(0));
  CHECK_THROWS_AS(nfold_defect(eta, {Word("a"), Word("b")}, 5), DomainError);
}

TEST_CASE("power defect") {
  for (long x = -5; x <= 5; ++x) {
    for (long n = 3; n <= 12; ++n) {
      CHECK(power_defect(square(), z(x), Integer(n), 0).value == Number(0));
      CHECK(power_defect(identity_fn(), z(x), Integer(n), 0).value == Number(0));
    }
  }
  // 5 + 15 * 1 - 10 * 2 = 0
  const BoundedValue v = power_defect(RealFn::pattern_count(), Word("aabb"), Integer(5), 5);
  CHECK(v.value == Number(0));
  CHECK(v.bound == Number(30));
  CHECK_THROWS_AS(power_defect(square(), z(1), Integer(2), 0), DomainError);
}

TEST_CASE("square-compose defect") {
  std::mt19937_64 rng(5);
  const Carrier words = Carrier::free_word(Alphabet("ab"));
  for (int i = 0; i < 2000; ++i) {
    const BoundedValue v = square_compose_defect(RealFn::pattern_count(), random_element(words, rng),
                                                 random_element(words, rng), random_element(words, rng), 5);
    REQUIRE(v.bound == Number(105));
    REQUIRE(v.within());
  }
  CHECK(square_compose_defect(RealFn::additive(vec({3, -2})), AbelianVector{1, 2}, AbelianVector{-4, 0},
                              AbelianVector{2, 2}, 0)
            .value == Number(0));
  CHECK(square_compose_defect(square(), z(2), z(3), z(-9), 0).value == Number(0));
}

TEST_CASE("quadratic exchange residuals") {
  const ExchangeResiduals r = quadratic_exchange_residuals(square(), z(0), z(0), z(1));
  CHECK(r.corrected == Number(0));
  CHECK(r.as_printed == Number(-1));

  std::mt19937_64 rng(6);
  const Carrier c = Carrier::free_abelian(2);
  const RationalMatrix m = mat({{3, -1}, {-1, 2}});
  const RealFn q = RealFn::quadratic(m, vec({0, 0}));
  for (int i = 0; i < 1000; ++i) {
    const AbelianVector x = std::get<AbelianVector>(random_element(c, rng));
    const AbelianVector y = std::get<AbelianVector>(random_element(c, rng));
    const AbelianVector w = std::get<AbelianVector>(random_element(c, rng));
    REQUIRE(quadratic_exchange_residuals(q, x, y, w).corrected == Number(0));
  }

  // with an additive character every product term is the sum of its factors
  const ExchangeResiduals lin = quadratic_exchange_residuals(identity_fn(), z(1), z(2), z(3));
  CHECK(lin.corrected == Number(0));
  CHECK_THROWS_AS(quadratic_exchange_residuals(RealFn::pattern_count(), Word("a"), Word("b"), Word("a")),
                  DomainError);
}

TEST_CASE("zero adjunction forces the defect at (x, 0, 0) to equal f(x)") {
  std::mt19937_64 rng(7);
  const Carrier c = Carrier::zero_adjoined(Carrier::free_word(Alphabet("ab")));
  const Element zero = ZeroAdjoined::zero();
  for (int i = 0; i < 200; ++i) {
    const Element x = random_element(c, rng);
    const Rational fx = frac(static_cast<long>(rng() % 41) - 20, 7);
    const Rational f0 = frac(static_cast<long>(rng() % 41) - 20, 3);
    std::vector<std::pair<Element, Number>> entries = {{zero, Number(f0)}};
    if (!(x == zero)) {
      entries.emplace_back(x, Number(fx));
    }
    const RealFn t = RealFn::table(entries);
    REQUIRE(kannappan_defect(t, x, zero, zero) == evaluate(t, x));
  }
}

TEST_CASE("order-two deviations on Z x Z/2") {
  std::mt19937_64 rng(8);
  const Carrier prod = Carrier::product({Carrier::free_abelian(1), Carrier::cyclic(2)});
  const Rational eps(1, 20);
  const RealFn f = RealFn::pullback(Homomorphism::project(0), square()) + RealFn::noise(77, eps);
  const Number d = Number(7) * Number(eps);
  const Element c = parse_element(prod, "(0)(1)");
  for (int i = 0; i < 1000; ++i) {
    const OrderTwoDeviations dev = order_two_deviations(f, random_element(prod, rng), c, d);
    REQUIRE(dev.left_bound == Number(2) * d);
    REQUIRE(dev.conjugate_bound == Number(8) * d);
    REQUIRE(dev.within());
  }
  CHECK_THROWS_AS(order_two_deviations(f, c, parse_element(prod, "(1)(0)"), d), DomainError);
}

TEST_CASE("slot-sum identities on the wreath product") {
  std::mt19937_64 rng(9);
  const Carrier z1 = Carrier::free_abelian(1);
  const Carrier wr = Carrier::wreath(z1);
  const RealFn sigma = RealFn::pullback(Homomorphism::slot_sum(z1), identity_fn());
  const RealFn sigma_sq = RealFn::pullback(Homomorphism::slot_sum(z1), square());
  SampleShape shape;
  shape.slot1_only = true;
  for (int i = 0; i < 1000; ++i) {
    const Element u = random_element(wr, rng, shape);
    const Element spread = triple_conjugate_product(u);
    REQUIRE(evaluate(sigma, spread) == Number(3) * evaluate(sigma, u));
    REQUIRE(evaluate(sigma_sq, spread) == Number(9) * evaluate(sigma_sq, u));
  }
}

TEST_CASE("describe and exactness flags") {
  CHECK(square().is_exact());
  CHECK(RealFn::zero().is_zero());
  CHECK_FALSE(square().is_zero());
  CHECK_FALSE((square() + RealFn::noise(1, Rational(1))).is_exact());
  CHECK_FALSE(square().describe().empty());
  CHECK(square().named("sq").name() == "sq");
}
