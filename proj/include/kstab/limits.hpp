#pragma once

#include "kstab/realfn.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kstab {

struct DyadicLimitResult {
  Number value;
  /// a_k = f(x^(N b^k)) / b^(2k) (hat) or / b^k (tilde), k = 0, 1, ...
  std::vector<Number> trace;
  unsigned iterations = 0;
  /// Largest of the last three gaps |a_{k+1} - a_k|.
  Number cauchy_gap;
  bool converged = false;
  /// "closed-form", "iterative" or "periodic-orbit".
  std::string method;
  std::vector<std::string> warnings;
  /// Tilde mode: sup of |f(y^2) - 2 f(y)| along the swept orbit.
  std::optional<Number> doubling_sup;
};

DyadicLimitResult hat_limit(const RealFn& f, const Element& x, const LimitOptions& options = {});
DyadicLimitResult tilde_limit(const RealFn& f, const Element& x, const LimitOptions& options = {});

/// Limit of f along the powers x^(multiplier * base^k). multiplier = 1 gives
/// hat_limit / tilde_limit; other multipliers evaluate the limit function at
/// x^multiplier without materializing that power.
DyadicLimitResult dyadic_limit(const RealFn& f, const Element& x, const Integer& multiplier, LimitMode mode,
                               const LimitOptions& options);

/// Exact limit functions for recognized bodies.
std::optional<RealFn> closed_hat(const RealFn& f);
std::optional<RealFn> closed_tilde(const RealFn& f);
/// Closed form of (f - hat f)~.
std::optional<RealFn> closed_linear_part(const RealFn& f);

struct Decomposition {
  /// Materialized over the corpus as lookup tables.
  RealFn quartic_part = RealFn::zero();
  RealFn linear_part = RealFn::zero();
  std::optional<RealFn> quartic_closed;
  std::optional<RealFn> linear_closed;
  std::vector<Element> corpus;
  std::vector<Number> values;
  std::vector<Number> quartic_values;
  std::vector<Number> linear_values;
  std::vector<Number> remainders;
  Number remainder_sup;
  std::optional<Element> witness;
  /// Some limit did not converge; its last iterate was used.
  bool partial = false;
  std::vector<std::string> warnings;
};

Decomposition decompose(const RealFn& f, const std::vector<Element>& corpus, const LimitOptions& options = {});

/// |g(x^n) - n^degree g(x)|.
Number homogeneity_check(const RealFn& g, const Element& x, const Integer& n, unsigned degree);

struct CauchyCheck {
  bool holds = true;
  std::size_t checked = 0;
  /// Worst instance: largest lhs / bound (or any violation of a zero bound).
  unsigned k = 0;
  unsigned m = 0;
  Number lhs;
  Number bound;
};

/// |a_{m+k} - 2 a_{k+1} + a_k| <= c / 4^k over all recorded k <= kmax, m >= 1.
CauchyCheck cauchy_certificate(const std::vector<Number>& trace, const Number& c, unsigned kmax = 20);

/// The same second-difference test with the coefficients that follow from
/// the power inequality at n = 2^m:
///   |a_{m+k} - (2 - 2^(1-m)) a_{k+1} + (1 - 2^(1-m)) a_k|
///       <= (1 - 3/2^m + 2/4^m) c / (2 * 4^k).
CauchyCheck power_cauchy_certificate(const std::vector<Number>& trace, const Number& c, unsigned kmax = 20);

}  // namespace kstab
