#include "kstab/verify.hpp"

#include "kstab/abelian.hpp"
#include "kstab/carrier.hpp"
#include "kstab/defect.hpp"
#include "kstab/limits.hpp"
#include "kstab/pattern.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

namespace kstab {

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (passed) {
        detail << "FAILED: " << what << "; ";
      }
      passed = false;
    }
  }
};

using Rng = std::mt19937_64;

const Carrier& words_ab() {
  static const Carrier c = Carrier::free_word(Alphabet("ab"));
  return c;
}

Word random_word(Rng& rng, std::size_t lo, std::size_t hi) {
  SampleShape shape;
  shape.min_word_length = lo;
  shape.max_word_length = hi;
  return std::get<Word>(random_element(words_ab(), rng, shape));
}

Rational random_rational(Rng& rng, long bound, long max_den) {
  std::uniform_int_distribution<long> num(-bound * max_den, bound * max_den);
  std::uniform_int_distribution<long> den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

RationalMatrix random_symmetric(Rng& rng, std::size_t k, long bound, long max_den) {
  const auto n = static_cast<Eigen::Index>(k);
  RationalMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      m(i, j) = m(j, i) = random_rational(rng, bound, max_den);
    }
  }
  return m;
}

RationalVector random_vector(Rng& rng, std::size_t k, long bound, long max_den) {
  RationalVector v(static_cast<Eigen::Index>(k));
  for (auto& x : v) {
    x = random_rational(rng, bound, max_den);
  }
  return v;
}

Element int_point(long n) { return AbelianVector{n}; }

std::string show(const Number& x) { return x.to_string(); }

// 1 -------------------------------------------------------------------------
void instability_witness_check(Rng&, Outcome& out) {
  const WitnessReport r = instability_witness();
  out.require(r.value == 1, "witness value " + to_string(r.value) + " != 1");
  out.require(r.count_value == 1, "plain count value != 1");
  out.require(r.homogeneity_holds, "homogenized count not degree-1 homogeneous");
  out.require(r.passed, "witness rows mismatch");
  out.detail << "D = " << to_string(r.value) << " (plain count " << r.count_value.get_str() << "), homogeneity on "
             << r.homogeneity_samples << " samples";
}

// 2 -------------------------------------------------------------------------
void eta_defect_bound(Rng& rng, Outcome& out) {
  const RealFn eta = RealFn::pattern_count();
  Number sup = 0;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) {
    const Word x = random_word(rng, 1, 50), y = random_word(rng, 1, 50), z = random_word(rng, 1, 50);
    const Number d = kannappan_defect(eta, x, y, z);
    out.require(d.is_exact(), "inexact defect");
    sup = max(sup, abs(d));
  }
  out.require(sup <= Number(5), "sup |defect| = " + show(sup) + " > 5");
  out.detail << "sup |defect| = " << show(sup) << " over " << samples << " triples (bound 5)";
}

// 3 -------------------------------------------------------------------------
void window_property(Rng& rng, Outcome& out) {
  const PatternCounter eta;
  std::size_t pairs = 0;
  auto check = [&](const Word& u, const Word& v) {
    const Integer w = eta.count(u.letters + v.letters) - eta.count(u) - eta.count(v);
    ++pairs;
    if (w != 0 && w != 1) {
      out.require(false, "window value " + w.get_str() + " at (" + u.letters + ", " + v.letters + ")");
    }
  };
  for (int i = 0; i < 100000; ++i) {
    check(random_word(rng, 1, 50), random_word(rng, 1, 50));
  }
  const auto small = all_words(Alphabet("ab"), 6);
  for (const Word& u : small) {
    for (const Word& v : small) {
      check(u, v);
    }
  }
  out.detail << "eta(uv) - eta(u) - eta(v) in {0,1} on " << pairs << " pairs (" << small.size() * small.size()
             << " exhaustive)";
}

// 4 -------------------------------------------------------------------------
void doubling_matches_scan(Rng&, Outcome& out) {
  const PatternCounter eta;
  std::size_t cases = 0;
  const auto words = all_words(Alphabet("ab"), 8);
  for (const Word& w : words) {
    std::string materialized = w.letters;
    for (unsigned n = 0; n <= 6; ++n) {
      ++cases;
      if (eta.dyadic_power_count(w, n) != eta.count(materialized)) {
        out.require(false, "mismatch at " + w.letters + ", n = " + std::to_string(n));
      }
      materialized += materialized;
    }
  }
  out.require(words.size() == 510, "word corpus has " + std::to_string(words.size()) + " words");
  out.detail << cases << " (word, n) cases over " << words.size() << " words agree";
}

// 5 -------------------------------------------------------------------------
void nfold_bound(Rng& rng, Outcome& out) {
  const RealFn eta = RealFn::pattern_count();
  const Number c = 5;
  for (unsigned n = 3; n <= 8; ++n) {
    Number worst = 0, bound = 0;
    for (int i = 0; i < 10000; ++i) {
      std::vector<Element> xs;
      for (unsigned j = 0; j < n; ++j) {
        xs.push_back(random_word(rng, 1, 12));
      }
      const BoundedValue v = nfold_defect(eta, xs, c);
      worst = max(worst, abs(v.value));
      bound = v.bound;
      if (!v.within()) {
        out.require(false, "n = " + std::to_string(n) + ": |value| " + show(abs(v.value)) + " > " + show(v.bound));
      }
    }
    out.detail << "n=" << n << ": max " << show(worst) << "/" << show(bound) << "  ";
  }
}

// 6 -------------------------------------------------------------------------
void power_and_square_bounds(Rng& rng, Outcome& out) {
  const RealFn eta = RealFn::pattern_count();
  const Number c = 5;
  std::size_t power_cases = 0;
  Integer big;
  mpz_ui_pow_ui(big.get_mpz_t(), 2, 40);
  for (const Word& w : all_words(Alphabet("ab"), 8)) {
    std::vector<Integer> exponents;
    for (long n = 3; n <= 16; ++n) {
      exponents.emplace_back(n);
    }
    exponents.push_back(big);
    for (const Integer& n : exponents) {
      ++power_cases;
      const BoundedValue v = power_defect(eta, w, n, c);
      if (!v.within()) {
        out.require(false, "power defect at " + w.letters + ", n = " + n.get_str());
      }
    }
  }
  Number worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const BoundedValue v =
        square_compose_defect(eta, random_word(rng, 1, 12), random_word(rng, 1, 12), random_word(rng, 1, 12), c);
    worst = max(worst, abs(v.value));
    if (!v.within()) {
      out.require(false, "square-compose defect " + show(v.value) + " exceeds 21c");
    }
  }
  out.detail << power_cases << " power cases within (n-2)(n-1)/2 c; square-compose max " << show(worst)
             << " <= 105 on 10000 triples";
}

// 7 -------------------------------------------------------------------------
void limit_laws(Rng& rng, Outcome& out) {
  const RealFn eta = RealFn::pattern_count();
  const RealFn eta_tilde = *closed_tilde(eta);
  const RealFn eta_hat = *closed_hat(eta);
  std::size_t exact_cases = 0;
  for (const Word& w : all_words(Alphabet("ab"), 8)) {
    const Number t = evaluate(eta_tilde, w);
    for (unsigned long m = 1; m <= 16; ++m) {
      const Element wm = pow(Element(w), m);
      ++exact_cases;
      out.require(evaluate(eta_tilde, wm) == Number(static_cast<long>(m)) * t, "tilde homogeneity at " + w.letters);
      out.require(evaluate(eta_hat, wm) == Number(0), "hat of the count is not 0");
    }
  }

  SampleShape shape;
  shape.coord_bound = 25;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 3);
    const RealFn f = RealFn::quadratic(random_symmetric(rng, k, 5, 4), random_vector(rng, k, 5, 4));
    const RealFn hat = *closed_hat(f);
    const RealFn lin = *closed_linear_part(f);
    const Carrier zk = Carrier::free_abelian(k);
    for (int i = 0; i < 10; ++i) {
      const Element x = random_element(zk, rng, shape);
      const Number h = evaluate(hat, x), l = evaluate(lin, x);
      for (unsigned long n = 1; n <= 16; ++n) {
        const Element xn = pow(x, n);
        const long nn = static_cast<long>(n);
        ++exact_cases;
        out.require(evaluate(hat, xn) == Number(nn * nn) * h, "hat homogeneity of a quadratic body");
        out.require(evaluate(lin, xn) == Number(nn) * l, "tilde homogeneity of an additive body");
      }
    }
  }

  // Iterative path against the closed forms.
  LimitOptions iter;
  iter.path = LimitPath::Iterative;
  iter.nmax = 64;
  iter.tol = 1e-12;
  Number worst = 0;
  std::size_t iter_cases = 0;
  for (const Word& w : all_words(Alphabet("ab"), 6)) {
    const auto t = tilde_limit(eta, w, iter);
    const auto h = hat_limit(eta, w, iter);
    out.require(t.converged && h.converged, "iteration did not converge at " + w.letters);
    worst = max(worst, abs(t.value - evaluate(eta_tilde, w)));
    worst = max(worst, abs(h.value));
    iter_cases += 2;
  }
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 3);
    const RealFn q = RealFn::quadratic(random_symmetric(rng, k, 5, 4), random_vector(rng, k, 5, 4));
    const RealFn a = RealFn::additive(random_vector(rng, k, 5, 4));
    const Carrier zk = Carrier::free_abelian(k);
    for (int i = 0; i < 5; ++i) {
      const Element x = random_element(zk, rng, shape);
      const auto h = hat_limit(q, x, iter);
      const auto t = tilde_limit(a, x, iter);
      out.require(h.converged && t.converged, "iteration did not converge at " + to_string(x));
      worst = max(worst, abs(h.value - evaluate(*closed_hat(q), x)));
      worst = max(worst, abs(t.value - evaluate(a, x)));
      iter_cases += 2;
    }
  }
  out.require(worst <= Number(Rational(1, 1000000000)), "iterative/closed gap " + show(worst) + " > 1e-9");
  out.detail << exact_cases << " exact homogeneity cases; iterative vs closed max gap "
             << std::setprecision(3) << worst.to_double() << " over " << iter_cases << " limits";
}

// 8 -------------------------------------------------------------------------
void cauchy_check(Rng&, Outcome& out) {
  LimitOptions opts;
  opts.path = LimitPath::Iterative;
  opts.nmax = 21;
  opts.tol = 0;

  struct Case {
    std::string label;
    RealFn f;
    Number c;
    std::vector<Element> corpus;
  };
  std::vector<Case> cases;
  {
    std::vector<Element> words;
    for (const Word& w : all_words(Alphabet("ab"), 6)) {
      words.emplace_back(w);
    }
    cases.push_back({"count, c=5", RealFn::pattern_count(), 5, words});
  }
  {
    std::vector<Element> ints;
    for (long n = -10; n <= 10; ++n) {
      ints.push_back(int_point(n));
    }
    RationalMatrix m(1, 1);
    m(0, 0) = 1;
    RationalVector a(1);
    a[0] = 1;
    cases.push_back({"n^2+n, c=0", RealFn::quadratic(m, a), 0, ints});
  }

  std::size_t checked = 0, violations_points = 0, power_checked = 0;
  bool power_holds = true;
  for (const Case& cs : cases) {
    std::size_t bad = 0;
    CauchyCheck worst;
    double worst_ratio = -1;
    std::string worst_x;
    for (const Element& x : cs.corpus) {
      const auto r = hat_limit(cs.f, x, opts);
      const CauchyCheck chk = cauchy_certificate(r.trace, cs.c, 20);
      const CauchyCheck pchk = power_cauchy_certificate(r.trace, cs.c, 20);
      checked += chk.checked;
      power_checked += pchk.checked;
      power_holds = power_holds && pchk.holds;
      if (!chk.holds) {
        ++bad;
        const double ratio = chk.bound == Number(0) ? 1e300 : (chk.lhs / chk.bound).to_double();
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          worst = chk;
          worst_x = to_string(x);
        }
      }
    }
    violations_points += bad;
    out.detail << "[" << cs.label << "] " << bad << "/" << cs.corpus.size() << " points violate";
    if (bad > 0) {
      out.detail << " (e.g. x=" << worst_x << " k=" << worst.k << " m=" << worst.m << ": " << show(worst.lhs)
                 << " > " << show(worst.bound) << ")";
    }
    out.detail << "; ";
  }
  out.require(violations_points == 0, "second-difference bound c/4^k violated at " +
                                          std::to_string(violations_points) + " corpus points");
  out.detail << checked << " instances checked; power-inequality certificate "
             << (power_holds ? "holds" : "FAILS") << " on all " << power_checked << " instances";
}

// 9 -------------------------------------------------------------------------
void decomposition_check(Rng& rng, Outcome& out) {
  RationalMatrix m(1, 1);
  m(0, 0) = 1;
  RationalVector a(1);
  a[0] = 1;
  const std::uint64_t seed = rng();
  const RealFn f = RealFn::quadratic(m, a) + RealFn::noise(seed, Rational(1, 2));
  std::vector<Element> corpus;
  for (long n = -100; n <= 100; ++n) {
    corpus.push_back(int_point(n));
  }
  const Decomposition d = decompose(f, corpus);
  const Number tol = 1e-6;
  Number worst_q = 0, worst_l = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const long n = static_cast<long>(i) - 100;
    worst_q = max(worst_q, abs(d.quartic_values[i] - Number(n * n)));
    worst_l = max(worst_l, abs(d.linear_values[i] - Number(n)));
    out.require(abs(d.values[i] - d.quartic_values[i] - d.linear_values[i] - d.remainders[i]) <= Number(1e-9),
                "reconstruction at n = " + std::to_string(n));
  }
  out.require(!d.partial, "decomposition flagged partial");
  out.require(worst_q <= tol, "quartic part off by " + show(worst_q));
  out.require(worst_l <= tol, "linear part off by " + show(worst_l));
  out.require(d.remainder_sup <= Number(0.5) + tol, "remainder_sup " + show(d.remainder_sup) + " > 0.5 + 1e-6");

  // The iterative hat must agree with the recovered quartic part as well.
  LimitOptions iter;
  iter.path = LimitPath::Iterative;
  iter.nmax = 64;
  Number worst_iter = 0;
  for (std::size_t i = 0; i < corpus.size(); i += 10) {
    worst_iter = max(worst_iter, abs(hat_limit(f, corpus[i], iter).value - d.quartic_values[i]));
  }
  out.require(worst_iter <= tol, "iterative hat off by " + show(worst_iter));
  out.detail << "quartic err " << show(worst_q) << ", linear err " << show(worst_l) << ", remainder_sup "
             << std::setprecision(6) << d.remainder_sup.to_double() << ", iterative hat err "
             << worst_iter.to_double();
}

// 10 ------------------------------------------------------------------------
void periodic_collapse(Rng& rng, Outcome& out) {
  std::size_t limits = 0;
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t m = 2 + static_cast<std::uint64_t>(t % 11);
    std::vector<std::pair<Element, Number>> rows;
    for (std::uint64_t r = 0; r < m; ++r) {
      rows.emplace_back(CyclicElement(static_cast<std::int64_t>(r), m), Number(random_rational(rng, 10, 7)));
    }
    const RealFn f = RealFn::table(rows);
    for (const auto& [x, v] : rows) {
      for (LimitMode mode : {LimitMode::Hat, LimitMode::Tilde}) {
        const auto r = dyadic_limit(f, x, Integer(1), mode, {});
        ++limits;
        out.require(r.value.is_exact() && r.value == Number(0),
                    "nonzero limit on Z/" + std::to_string(m) + " at " + to_string(x));
      }
    }
  }
  out.detail << limits << " limits on Z/2..Z/12 are exactly 0";
}

// 11 ------------------------------------------------------------------------
void abelian_fit(Rng& rng, Outcome& out) {
  const Carrier z3 = Carrier::free_abelian(3);
  SampleShape shape;
  shape.coord_bound = 50;
  std::size_t points = 0;
  for (int t = 0; t < 100; ++t) {
    const RationalMatrix m = random_symmetric(rng, 3, 9, 1);
    const RationalVector a = random_vector(rng, 3, 9, 1);
    const RealFn f = RealFn::quadratic(m, RationalVector::Constant(3, Rational(0))) + RealFn::additive(a);
    const ExactModel model = fit_quadratic_additive(f, 3);
    out.require(model.form == m && model.additive == a, "fit did not recover the model");
    std::vector<Element> corpus;
    for (int i = 0; i < 100; ++i) {
      corpus.push_back(random_element(z3, rng, shape));
    }
    points += corpus.size();
    out.require(model_residual(model, f, corpus) == Number(0), "nonzero residual");
  }
  out.detail << "100 models recovered exactly; residual 0 on " << points << " points";
}

// 12 ------------------------------------------------------------------------
void jung_bound(Rng& rng, Outcome& out) {
  std::vector<Element> corpus;
  for (long n = -100; n <= 100; ++n) {
    corpus.push_back(int_point(n));
  }
  std::uniform_int_distribution<long> coord(-100, 100);
  double worst_ratio = 0;
  for (int t = 0; t < 50; ++t) {
    RationalMatrix q(1, 1);
    q(0, 0) = random_rational(rng, 5, 6);
    Rational delta(1 + static_cast<long>(rng() % 10), 10);
    delta.canonicalize();
    const RealFn f = RealFn::quadratic(q, RationalVector::Constant(1, Rational(0))) +
                     RealFn::noise(rng(), delta, NoiseSymmetry::Even);
    std::vector<Triple> triples;
    for (int i = 0; i < 2000; ++i) {
      triples.push_back({int_point(coord(rng)), int_point(coord(rng)), int_point(coord(rng))});
    }
    const Number d = sup_defect(f, triples).sup_estimate;
    const JungResult r = jung_recover(f, 1, corpus, d, 0);
    out.require(r.model.form(0, 0) == q(0, 0), "recovered form differs");
    out.require(r.passed, "sup_dev " + show(r.sup_dev) + " > 3 * " + show(d));
    worst_ratio = std::max(worst_ratio, (r.sup_dev / d).to_double());
  }
  out.detail << "50 trials; max sup_dev / measured defect = " << std::setprecision(4) << worst_ratio << " (limit 3)";
}

// 13 ------------------------------------------------------------------------
void zero_adjunction(Rng& rng, Outcome& out) {
  const Carrier c = Carrier::zero_adjoined(words_ab());
  const Element zero = ZeroAdjoined::zero();
  for (int t = 0; t < 1000; ++t) {
    const Element x = random_element(c, rng);
    std::vector<std::pair<Element, Number>> rows = {{zero, Number(random_rational(rng, 10, 9))}};
    if (!(x == zero)) {
      rows.emplace_back(x, Number(random_rational(rng, 10, 9)));
    }
    const RealFn f = RealFn::table(rows);
    out.require(kannappan_defect(f, x, zero, zero) == evaluate(f, x), "defect(x, 0, 0) != f(x) at " + to_string(x));
  }
  out.detail << "defect(f, x, 0, 0) = f(x) for 1000 random tables";
}

// 14 ------------------------------------------------------------------------
void wreath_identities(Rng& rng, Outcome& out) {
  SampleShape slot1;
  slot1.slot1_only = true;
  for (const Carrier& base : {Carrier::free_abelian(1), Carrier::free_word(Alphabet("ab"), true)}) {
    const Carrier w = Carrier::wreath(base);
    for (int i = 0; i < 1000; ++i) {
      const Element x = random_element(w, rng, slot1), y = random_element(w, rng, slot1),
                    z = random_element(w, rng, slot1);
      const auto [x1, y1, z1] = amplification_triple(x, y, z);
      out.require(mul({x1, y1, z1}) == mul({conjugate_spread(x), conjugate_spread(y), conjugate_spread(z)}),
                  "amplification identity over " + to_string(base));
    }
  }

  const Homomorphism sigma = Homomorphism::slot_sum(Carrier::free_abelian(1));
  RationalMatrix one(1, 1);
  one(0, 0) = 1;
  const RealFn s1 = RealFn::pullback(sigma, RealFn::additive(RationalVector::Constant(1, Rational(1))));
  const RealFn s2 = RealFn::pullback(sigma, RealFn::quadratic(one, RationalVector::Constant(1, Rational(0))));
  const Carrier wz = Carrier::wreath(Carrier::free_abelian(1));
  for (int i = 0; i < 1000; ++i) {
    const Element u = random_element(wz, rng, slot1);
    const Element p = triple_conjugate_product(u);
    out.require(evaluate(s2, p) == Number(9) * evaluate(s2, u), "sigma^2 identity at " + to_string(u));
    out.require(evaluate(s1, p) == Number(3) * evaluate(s1, u), "sigma identity at " + to_string(u));
  }

  const Carrier zc2 = Carrier::product({Carrier::free_abelian(1), Carrier::cyclic(2)});
  const Rational eps(1, 10);
  const RealFn f = RealFn::pullback(Homomorphism::project(0),
                                    RealFn::quadratic(one, RationalVector::Constant(1, Rational(0)))) +
                   RealFn::noise(rng(), eps);
  const Number d = Number(7 * eps);
  const Element c = ProductElement{{AbelianVector{0}, CyclicElement(1, 2)}};
  SampleShape wide;
  wide.coord_bound = 100;
  Number worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto dev = order_two_deviations(f, random_element(zc2, rng, wide), c, d);
    out.require(dev.within(), "order-two bound violated");
    worst = max(worst, dev.conjugate);
  }
  out.detail << "amplification identity on 2000 triples, sigma identities on 1000 elements, order-two bounds on "
                "1000 elements (d = 7/10, max conjugate deviation "
             << std::setprecision(4) << worst.to_double() << ")";
}

// 15 ------------------------------------------------------------------------
void quadratic_exchange(Rng& rng, Outcome& out) {
  SampleShape shape;
  shape.coord_bound = 30;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t k = 1 + static_cast<std::size_t>(t % 3);
    const RealFn f = RealFn::quadratic(random_symmetric(rng, k, 5, 3), RationalVector::Constant(
                                                                            static_cast<Eigen::Index>(k), Rational(0)));
    const Carrier zk = Carrier::free_abelian(k);
    const auto r = quadratic_exchange_residuals(f, random_element(zk, rng, shape), random_element(zk, rng, shape),
                                                random_element(zk, rng, shape));
    out.require(r.corrected == Number(0), "corrected residual " + show(r.corrected));
  }
  RationalMatrix one(1, 1);
  one(0, 0) = 1;
  const RealFn sq = RealFn::quadratic(one, RationalVector::Constant(1, Rational(0)));
  const auto r = quadratic_exchange_residuals(sq, int_point(0), int_point(0), int_point(1));
  out.require(r.corrected == Number(0), "corrected residual at (0,0,1)");
  out.require(r.as_printed == Number(-1), "as-printed residual at (0,0,1) is " + show(r.as_printed));
  out.detail << "corrected residual 0 on 1000 triples; as-printed residual at (0,0,1) for n^2 = "
             << show(r.as_printed) << " (known discrepancy)";
}

struct Spec {
  const char* title;
  double budget;
  std::function<void(Rng&, Outcome&)> run;
};

const std::vector<Spec>& specs() {
  static const std::vector<Spec> table = {
      {"instability witness", 1, instability_witness_check},
      {"count defect bound <= 5", 30, eta_defect_bound},
      {"window property", 30, window_property},
      {"doubling recurrence = brute force", 10, doubling_matches_scan},
      {"n-fold defect bound", 60, nfold_bound},
      {"power and square-compose bounds", 60, power_and_square_bounds},
      {"limit homogeneity laws", 60, limit_laws},
      {"Cauchy certificate c/4^k", 30, cauchy_check},
      {"decomposition reconstruction", 30, decomposition_check},
      {"periodic collapse", 10, periodic_collapse},
      {"abelian fit", 10, abelian_fit},
      {"Jung bound 3d", 30, jung_bound},
      {"zero-adjunction identity", 5, zero_adjunction},
      {"wreath identities", 30, wreath_identities},
      {"corrected quadratic exchange", 5, quadratic_exchange},
  };
  return table;
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > kCriterionCount) {
    throw DomainError("criterion id must be in 1.." + std::to_string(kCriterionCount));
  }
  const Spec& spec = specs()[static_cast<std::size_t>(id - 1)];
  CriterionResult result;
  result.id = id;
  result.title = spec.title;
  result.budget = spec.budget;

  Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(id));
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    spec.run(rng, out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (result.seconds > spec.budget) {
    out.require(false, "over the time budget");
  }
  result.passed = out.passed;
  result.detail = out.detail.str();
  return result;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriterionCount; ++id) {
    out.push_back(run_criterion(id, seed));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.passed ? "[PASS] " : "[FAIL] ") << std::setw(2) << r.id << "  " << r.title << " (" << std::fixed
    << std::setprecision(2) << r.seconds << " s / " << std::setprecision(0) << r.budget << " s)  " << r.detail;
  return s.str();
}

}  // namespace kstab
