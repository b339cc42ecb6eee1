#include "kstab/limits.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace kstab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Orbit elements heavier than this are no longer tracked for repeats; only
// finite carriers can repeat anyway, and their elements stay light.
constexpr std::size_t kOrbitWeightLimit = 4096;

RationalVector zeros_like(const RationalVector& v) {
  return RationalVector::Constant(v.size(), Rational(0));
}

bool is_zero_matrix(const RationalMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (m.data()[i] != 0) {
      return false;
    }
  }
  return true;
}

enum class Part { Hat, Tilde, Linear };

std::optional<RealFn> closed(const RealFn& f, Part part) {
  return std::visit(
      overloaded{
          [&](const body::Quadratic& q) -> std::optional<RealFn> {
            switch (part) {
              case Part::Hat:
                return RealFn::quadratic(q.form, zeros_like(q.additive));
              case Part::Tilde:
                if (!is_zero_matrix(q.form)) {
                  return std::nullopt;
                }
                return RealFn::additive(q.additive);
              case Part::Linear:
                return RealFn::additive(q.additive);
            }
            return std::nullopt;
          },
          [&](const body::Additive&) -> std::optional<RealFn> {
            return part == Part::Hat ? RealFn::zero() : f;
          },
          [&](const body::PatternCount& p) -> std::optional<RealFn> {
            return part == Part::Hat ? RealFn::zero() : RealFn::pattern_tilde(p.counter);
          },
          [&](const body::PatternTilde&) -> std::optional<RealFn> {
            return part == Part::Hat ? RealFn::zero() : f;
          },
          [&](const body::Pullback& p) -> std::optional<RealFn> {
            auto inner = closed(p.inner, part);
            if (!inner) {
              return std::nullopt;
            }
            return RealFn::pullback(p.hom, *inner);
          },
          [&](const body::Table&) -> std::optional<RealFn> { return std::nullopt; },
          [&](const body::Sum& s) -> std::optional<RealFn> {
            std::vector<std::pair<Rational, RealFn>> terms;
            for (const auto& [w, g] : s.terms) {
              auto part_g = closed(g, part);
              if (!part_g) {
                return std::nullopt;
              }
              terms.emplace_back(w, *part_g);
            }
            return RealFn::sum(std::move(terms));
          },
          [&](const body::Noise&) -> std::optional<RealFn> { return RealFn::zero(); },
          [&](const body::PowerCompose& p) -> std::optional<RealFn> {
            auto inner = closed(p.inner, part);
            if (!inner) {
              return std::nullopt;
            }
            return RealFn::power_compose(*inner, p.exponent);
          },
          [&](const body::Limit& l) -> std::optional<RealFn> {
            if (l.mode == LimitMode::Hat) {
              switch (part) {
                case Part::Hat:
                  return f;
                case Part::Tilde:
                  return std::nullopt;
                case Part::Linear:
                  return RealFn::zero();
              }
            }
            return part == Part::Hat ? RealFn::zero() : f;
          },
      },
      f.body());
}

Rational ipow(unsigned base, unsigned e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return Rational(out);
}

}  // namespace

std::optional<RealFn> closed_hat(const RealFn& f) { return closed(f, Part::Hat); }
std::optional<RealFn> closed_tilde(const RealFn& f) { return closed(f, Part::Tilde); }
std::optional<RealFn> closed_linear_part(const RealFn& f) { return closed(f, Part::Linear); }

DyadicLimitResult dyadic_limit(const RealFn& f, const Element& x, const Integer& multiplier, LimitMode mode,
                               const LimitOptions& options) {
  if (options.base < 2) {
    throw DomainError("dyadic_limit: base must be >= 2");
  }
  if (options.nmax < 2) {
    throw DomainError("dyadic_limit: nmax must be >= 2");
  }
  DyadicLimitResult result;

  if (options.path != LimitPath::Iterative) {
    auto g = mode == LimitMode::Hat ? closed_hat(f) : closed_tilde(f);
    if (g) {
      result.value = evaluate_power(*g, x, multiplier);
      result.method = "closed-form";
      result.converged = true;
      result.cauchy_gap = 0;
      return result;
    }
    if (options.path == LimitPath::ClosedForm) {
      throw DomainError("no closed form for " + f.describe());
    }
  }

  result.method = "iterative";
  const unsigned b = options.base;
  const Rational step = mode == LimitMode::Hat ? Rational(b * b) : Rational(b);
  Integer power = multiplier;
  Rational scale = 1;

  std::optional<Element> orbit;
  try {
    orbit = pow(x, multiplier);
  } catch (const MaterializationLimit&) {
  }
  std::map<std::string, unsigned> seen;

  for (unsigned k = 0; k <= options.nmax; ++k) {
    if (orbit && element_weight(*orbit) <= kOrbitWeightLimit) {
      auto [it, fresh] = seen.emplace(to_string(*orbit), k);
      if (!fresh) {
        // x^(N b^k) repeats, so f takes finitely many values along the
        // orbit and every normalized iterate tends to 0.
        result.value = 0;
        result.method = "periodic-orbit";
        result.converged = true;
        result.cauchy_gap = 0;
        result.iterations = static_cast<unsigned>(result.trace.size());
        return result;
      }
    } else {
      orbit.reset();
    }

    Number a;
    try {
      a = evaluate_power(f, x, power) / Number(scale);
    } catch (const MaterializationLimit& e) {
      result.warnings.push_back(std::string("stopped at k = ") + std::to_string(k) + ": " + e.what());
      break;
    }
    result.trace.push_back(a);

    const std::size_t n = result.trace.size();
    if (n >= 4) {
      Number gap = 0;
      for (std::size_t i = n - 3; i < n; ++i) {
        gap = max(gap, abs(result.trace[i] - result.trace[i - 1]));
      }
      result.cauchy_gap = gap;
      if (gap <= Number(options.tol)) {
        result.converged = true;
        break;
      }
    }

    power *= b;
    scale *= step;
    if (orbit) {
      try {
        orbit = pow(*orbit, static_cast<unsigned long>(b));
      } catch (const MaterializationLimit&) {
        orbit.reset();
      }
    }
  }

  result.iterations = static_cast<unsigned>(result.trace.size());
  if (result.trace.empty()) {
    throw DomainError("dyadic_limit: no iterate could be evaluated at " + to_string(x));
  }
  result.value = result.trace.back();
  if (result.trace.size() < 4) {
    Number gap = 0;
    for (std::size_t i = 1; i < result.trace.size(); ++i) {
      gap = max(gap, abs(result.trace[i] - result.trace[i - 1]));
    }
    result.cauchy_gap = gap;
  }
  if (!result.converged) {
    result.warnings.push_back("no convergence within nmax = " + std::to_string(options.nmax) +
                              " (gap " + result.cauchy_gap.to_string() + ")");
  }

  if (mode == LimitMode::Tilde && b == 2) {
    // a_{k+1} - a_k = (f(y^2) - 2 f(y)) / 2^(k+1) with y = x^(N 2^k).
    Number sup = 0;
    Rational w = 2;
    for (std::size_t k = 0; k + 1 < result.trace.size(); ++k, w *= 2) {
      sup = max(sup, abs(result.trace[k + 1] - result.trace[k]) * Number(w));
    }
    result.doubling_sup = sup;
    if (options.doubling_bound && *options.doubling_bound < sup) {
      result.warnings.push_back("doubling hypothesis violated: |f(y^2) - 2f(y)| reaches " + sup.to_string() +
                                " > " + options.doubling_bound->to_string());
    }
  }
  return result;
}

DyadicLimitResult hat_limit(const RealFn& f, const Element& x, const LimitOptions& options) {
  return dyadic_limit(f, x, Integer(1), LimitMode::Hat, options);
}

DyadicLimitResult tilde_limit(const RealFn& f, const Element& x, const LimitOptions& options) {
  return dyadic_limit(f, x, Integer(1), LimitMode::Tilde, options);
}

Decomposition decompose(const RealFn& f, const std::vector<Element>& corpus, const LimitOptions& options) {
  if (corpus.empty()) {
    throw DomainError("decompose: empty corpus");
  }
  Decomposition d;
  d.corpus = corpus;
  if (options.path != LimitPath::Iterative) {
    d.quartic_closed = closed_hat(f);
    d.linear_closed = closed_linear_part(f);
  }
  const RealFn phi = f - RealFn::limit(LimitMode::Hat, f, options);

  std::vector<std::pair<Element, Number>> quartic_rows, linear_rows;
  std::string witness_key;
  for (const Element& x : corpus) {
    const Number v = evaluate(f, x);
    Number q, l;
    if (d.quartic_closed) {
      q = evaluate(*d.quartic_closed, x);
    } else {
      auto r = hat_limit(f, x, options);
      q = r.value;
      if (!r.converged) {
        d.partial = true;
        d.warnings.push_back("hat limit did not converge at " + to_string(x));
      }
    }
    if (d.linear_closed) {
      l = evaluate(*d.linear_closed, x);
    } else {
      auto r = tilde_limit(phi, x, options);
      l = r.value;
      if (!r.converged) {
        d.partial = true;
        d.warnings.push_back("tilde limit did not converge at " + to_string(x));
      }
    }
    const Number rem = v - q - l;
    const Number mag = abs(rem);
    const std::string key = to_string(x);
    if (!d.witness || d.remainder_sup < mag || (mag == d.remainder_sup && key < witness_key)) {
      d.remainder_sup = mag;
      d.witness = x;
      witness_key = key;
    }
    d.values.push_back(v);
    d.quartic_values.push_back(q);
    d.linear_values.push_back(l);
    d.remainders.push_back(rem);
    quartic_rows.emplace_back(x, q);
    linear_rows.emplace_back(x, l);
  }
  d.quartic_part = RealFn::table(quartic_rows).named("quartic");
  d.linear_part = RealFn::table(linear_rows).named("linear");
  return d;
}

Number homogeneity_check(const RealFn& g, const Element& x, const Integer& n, unsigned degree) {
  Integer nd;
  mpz_pow_ui(nd.get_mpz_t(), n.get_mpz_t(), degree);
  return abs(evaluate_power(g, x, n) - Number(nd) * evaluate(g, x));
}

namespace {

template <class Coeffs>
CauchyCheck second_difference_check(const std::vector<Number>& trace, unsigned kmax, Coeffs coeffs) {
  CauchyCheck out;
  double worst = -1;
  for (unsigned k = 0; k <= kmax && k + 1 < trace.size(); ++k) {
    for (unsigned m = 1; m + k < trace.size(); ++m) {
      auto [alpha, beta, bound] = coeffs(k, m);
      const Number lhs = abs(trace[m + k] - Number(alpha) * trace[k + 1] + Number(beta) * trace[k]);
      ++out.checked;
      const bool ok = lhs <= bound;
      double ratio;
      if (bound == Number(0)) {
        ratio = ok ? 0.0 : std::numeric_limits<double>::infinity();
      } else {
        ratio = (lhs / bound).to_double();
      }
      if (!ok) {
        out.holds = false;
      }
      if (ratio > worst) {
        worst = ratio;
        out.k = k;
        out.m = m;
        out.lhs = lhs;
        out.bound = bound;
      }
    }
  }
  return out;
}

}  // namespace

CauchyCheck cauchy_certificate(const std::vector<Number>& trace, const Number& c, unsigned kmax) {
  return second_difference_check(trace, kmax, [&](unsigned k, unsigned) {
    return std::tuple{Rational(2), Rational(1), c / Number(ipow(4, k))};
  });
}

CauchyCheck power_cauchy_certificate(const std::vector<Number>& trace, const Number& c, unsigned kmax) {
  return second_difference_check(trace, kmax, [&](unsigned k, unsigned m) {
    const Rational inv_n = 1 / ipow(2, m);
    const Rational alpha = 2 - 2 * inv_n;
    const Rational beta = 1 - 2 * inv_n;
    const Rational factor = (1 - 3 * inv_n + 2 * inv_n * inv_n) / (2 * ipow(4, k));
    return std::tuple{alpha, beta, Number(factor) * c};
  });
}

}  // namespace kstab
