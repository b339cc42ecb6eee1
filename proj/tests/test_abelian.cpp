#include "doctest.h"

#include "kstab/abelian.hpp"
#include "kstab/carrier.hpp"
#include "kstab/defect.hpp"

#include <random>

using namespace kstab;

namespace {

Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

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

Element z(long n) { return AbelianVector{n}; }

std::vector<Element> line(long lo, long hi) {
  std::vector<Element> out;
  for (long n = lo; n <= hi; ++n) {
    out.push_back(z(n));
  }
  return out;
}

std::vector<Element> random_points(std::mt19937_64& rng, std::size_t k, std::size_t count) {
  const Carrier c = Carrier::free_abelian(k);
  std::vector<Element> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(random_element(c, rng));
  }
  return out;
}

// Measured global defect over all triples of the corpus points.
Number measured_defect(const RealFn& f, const std::vector<Element>& pts) {
  std::vector<Triple> triples;
  for (const Element& x : pts) {
    for (const Element& y : pts) {
      for (const Element& w : pts) {
        triples.push_back({x, y, w});
      }
    }
  }
  return sup_defect(f, triples).sup_estimate;
}

}  // namespace

TEST_CASE("probe-point fits") {
  const ExactModel sq = fit_quadratic_additive(RealFn::quadratic(mat({{1}}), vec({0})), 1);
  CHECK(sq.form == mat({{1}}));
  CHECK(sq.additive == vec({0}));

  // v1^2 + 4 v1 v2 + 3 v2^2 + 5 v1 - v2, assembled from separate bodies so the
  // fit only ever sees values
  const RealFn cross = RealFn::quadratic(mat({{0, 1}, {1, 0}}), vec({0, 0}));
  const RealFn f = RealFn::quadratic(mat({{1, 0}, {0, 3}}), vec({5, -1})) + Rational(2) * cross;
  const ExactModel m = fit_quadratic_additive(f, 2);
  CHECK(m.form == mat({{1, 2}, {2, 3}}));
  CHECK(m.additive == vec({5, -1}));
  CHECK(m.is_symmetric());
  CHECK(m.dimension() == 2);

  const ExactModel add = fit_quadratic_additive(RealFn::additive(vec({7})), 1);
  CHECK(add.form == mat({{0}}));
  CHECK(add.additive == vec({7}));
}

TEST_CASE("fits recover random models exactly and reproduce them everywhere") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 1 + rng() % 4;
    const auto n = static_cast<Eigen::Index>(k);
    RationalMatrix form(n, n);
    RationalVector add(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      add(i) = frac(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 6));
      for (Eigen::Index j = i; j < n; ++j) {
        form(i, j) = form(j, i) = frac(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 6));
      }
    }
    const RealFn f = RealFn::quadratic(form, add);
    const ExactModel m = fit_quadratic_additive(f, k);
    REQUIRE(m.form == form);
    REQUIRE(m.additive == add);

    const auto pts = random_points(rng, k, 100);
    REQUIRE(model_residual(m, f, pts) == Number(0));
    for (const Element& p : pts) {
      // independent evaluation of v^T M v + a.v
      const RationalVector v = to_rational_vector(p, k);
      Rational expected = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        expected += add(i) * v(i);
        for (Eigen::Index j = 0; j < n; ++j) {
          expected += form(i, j) * v(i) * v(j);
        }
      }
      REQUIRE(m(v) == expected);
      REQUIRE(evaluate(to_realfn(m), p) == Number(expected));
    }
  }
}

TEST_CASE("quadratic forms satisfy the parallelogram law") {
  std::mt19937_64 rng(2);
  const RealFn q = RealFn::quadratic(mat({{2, -1, 0}, {-1, 5, 3}, {0, 3, -4}}), vec({0, 0, 0}));
  const Carrier c = Carrier::free_abelian(3);
  for (int i = 0; i < 10000; ++i) {
    const Element x = random_element(c, rng), y = random_element(c, rng);
    const Element minus_y = *inverse(y);
    REQUIRE(evaluate(q, mul(x, y)) + evaluate(q, mul(x, minus_y)) ==
            Number(2) * evaluate(q, x) + Number(2) * evaluate(q, y));
  }
}

TEST_CASE("residual of a noisy model is bounded by the noise amplitude") {
  std::mt19937_64 rng(3);
  const Rational eps = frac(1, 8);
  const RealFn model = RealFn::quadratic(mat({{1, 1}, {1, -2}}), vec({3, 0}));
  const RealFn f = model + RealFn::noise(4, eps);
  const ExactModel exact = fit_quadratic_additive(model, 2);
  const Number r = model_residual(exact, f, random_points(rng, 2, 300));
  CHECK(r <= Number(eps));
  CHECK(r > Number(0));
  CHECK_THROWS_AS(model_residual(exact, f, {}), DomainError);
}

TEST_CASE("least squares on noisy data") {
  std::mt19937_64 rng(4);
  const RealFn f = RealFn::quadratic(mat({{2, -1}, {-1, 3}}), vec({4, -5})) + RealFn::noise(5, frac(1, 10));
  std::vector<Element> corpus;
  for (long a = -15; a <= 15; ++a) {
    for (long b = -15; b <= 15; ++b) {
      corpus.push_back(AbelianVector{a, b});
    }
  }
  const FloatModel m = fit_least_squares(f, 2, corpus);
  CHECK(m.form(0, 0) == doctest::Approx(2).epsilon(1e-3));
  CHECK(m.form(0, 1) == doctest::Approx(-1).epsilon(1e-3));
  CHECK(m.form(1, 1) == doctest::Approx(3).epsilon(1e-3));
  CHECK(m.additive(0) == doctest::Approx(4).epsilon(1e-2));
  CHECK(m.additive(1) == doctest::Approx(-5).epsilon(1e-2));
  CHECK(m.is_symmetric());
}

TEST_CASE("functions off Z^k are rejected") {
  CHECK_THROWS_AS(fit_quadratic_additive(RealFn::pattern_count(), 2), DomainError);
  const ExactModel m = fit_quadratic_additive(RealFn::quadratic(mat({{1}}), vec({0})), 1);
  const std::vector<Element> words = {Word("aabb")};
  CHECK_THROWS_AS(model_residual(m, RealFn::pattern_tilde(), words), DomainError);
  CHECK_THROWS_AS(to_rational_vector(AbelianVector{1, 2}, 3), DomainError);
}

TEST_CASE("even recovery") {
  const RealFn sq = RealFn::quadratic(mat({{1}}), vec({0}));
  const auto corpus = line(-60, 60);
  const JungResult exact = jung_recover(sq, 1, corpus, 0, 0);
  CHECK(exact.model.form == mat({{1}}));
  CHECK(exact.model.additive == vec({0}));
  CHECK(exact.sup_dev == Number(0));
  CHECK(exact.passed);

  const Rational eps = frac(1, 10);
  const RealFn noisy = sq + RealFn::noise(7, eps, NoiseSymmetry::Even);
  const Number d = measured_defect(noisy, line(-12, 12));
  const JungResult r = jung_recover(noisy, 1, corpus, d, 0);
  CHECK(r.model.form == mat({{1}}));
  CHECK(r.sup_dev <= Number(eps));
  CHECK(r.sup_dev <= Number(3) * d);
  CHECK(r.bound == Number(3) * d);
  CHECK(r.passed);
  CHECK(r.symmetry_dev == Number(0));
}

TEST_CASE("even recovery on Z^2 with a random rational form") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    RationalMatrix form(2, 2);
    form(0, 0) = frac(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 4));
    form(1, 1) = frac(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 4));
    form(0, 1) = form(1, 0) = frac(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 4));
    const Rational eps = frac(1, 20);
    const RealFn f = RealFn::quadratic(form, RationalVector::Zero(2)) + RealFn::noise(rng(), eps, NoiseSymmetry::Even);
    const auto corpus = random_points(rng, 2, 60);
    const JungResult r = jung_recover(f, 2, corpus, Number(7) * Number(eps), 0);
    for (Eigen::Index i = 0; i < 2; ++i) {
      for (Eigen::Index j = 0; j < 2; ++j) {
        REQUIRE(abs(Number(r.model.form(i, j)) - Number(form(i, j))) <= Number(1e-6));
      }
    }
    REQUIRE(r.passed);
  }
}

TEST_CASE("even recovery is independent of the corpus") {
  std::mt19937_64 rng(8);
  const RealFn f = RealFn::quadratic(mat({{3, 1}, {1, 2}}), RationalVector::Zero(2)) +
                   RealFn::noise(9, frac(1, 5), NoiseSymmetry::Even);
  const auto first = random_points(rng, 2, 40), second = random_points(rng, 2, 40);
  const JungResult a = jung_recover(f, 2, first, Number(frac(7, 5)), 0);
  const JungResult b = jung_recover(f, 2, second, Number(frac(7, 5)), 0);
  CHECK(a.model.form == b.model.form);
  CHECK(a.model.additive == b.model.additive);
  for (const Element& p : first) {
    CHECK(evaluate(to_realfn(a.model), p) == evaluate(to_realfn(b.model), p));
  }
}

TEST_CASE("even recovery rejects functions that are not even") {
  const RealFn f = RealFn::quadratic(mat({{1}}), vec({1}));
  try {
    jung_recover(f, 1, line(-5, 5), 0, 1);
    FAIL("expected a DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("v = ") != std::string::npos);
  }
}

TEST_CASE("odd recovery") {
  const Rational eps = frac(1, 10);
  const RealFn f = RealFn::additive(vec({-3})) + RealFn::noise(10, eps, NoiseSymmetry::Odd);
  const auto corpus = line(-80, 80);
  const Number d = Number(7) * Number(eps);
  const JungResult r = jung_recover_odd(f, 1, corpus, d, 0);
  CHECK(r.model.additive == vec({-3}));
  CHECK(r.model.form == mat({{0}}));
  CHECK(r.sup_dev <= Number(eps));
  CHECK(r.bound == d);
  CHECK(r.passed);

  std::mt19937_64 rng(11);
  const JungResult it = jung_recover_odd(RealFn::additive(vec({2, 5})), 2, random_points(rng, 2, 30), 0, 0);
  CHECK(it.sup_dev == Number(0));
  CHECK_THROWS_AS(jung_recover_odd(RealFn::quadratic(mat({{1}}), vec({0})), 1, corpus, 0, 0), DomainError);
}
