#pragma once

#include "kstab/realfn.hpp"

#include <array>
#include <span>
#include <vector>

namespace kstab {

using Triple = std::array<Element, 3>;

/// f(xyz) + f(x) + f(y) + f(z) - f(xy) - f(xz) - f(yz).
Number kannappan_defect(const RealFn& f, const Element& x, const Element& y, const Element& z);

struct DefectReport {
  /// Defect at the witnessing triple (signed).
  Number value;
  Triple triple;
  /// Largest |defect| over the sweep.
  Number sup_estimate;
  std::size_t samples = 0;
  bool exact = true;
};

/// Max |defect| over the corpus. Ties go to the lexicographically smallest
/// triple literal, so the report does not depend on corpus order.
DefectReport sup_defect(const RealFn& f, std::span<const Triple> corpus);

struct BoundedValue {
  Number value;
  Number bound;
  bool within() const { return abs(value) <= bound; }
};

/// f(x1...xn) + (n-2) sum f(xi) - sum_{i<j} f(xi xj), bound (n-2)(n-1)/2 c.
BoundedValue nfold_defect(const RealFn& f, const std::vector<Element>& xs, const Number& c);

/// f(x^n) + (n-2) n f(x) - (n-1) n / 2 f(x^2), bound (n-2)(n-1)/2 c.
BoundedValue power_defect(const RealFn& f, const Element& x, const Integer& n, const Number& c);

/// Defect of phi(x) = f(x^2) at (x, y, z), bound 21 c.
BoundedValue square_compose_defect(const RealFn& f, const Element& x, const Element& y, const Element& z,
                                   const Number& c);

struct ExchangeResiduals {
  /// f(xyz) + f(xzy) - [f(x) + 3f(y) + 3f(z) + f(xy) + f(xz) - f(yz)], the
  /// commonly quoted form.
  Number as_printed;
  /// f(xyz) + f(xzy) + 2f(x) + 2f(y) + 2f(z) - 2f(xy) - 2f(xz) - 2f(yz).
  Number corrected;
};

/// Both residuals of the quadratic exchange identity. The elements must be
/// invertible (the identity is stated on groups).
ExchangeResiduals quadratic_exchange_residuals(const RealFn& f, const Element& x, const Element& y,
                                               const Element& z);

struct OrderTwoDeviations {
  Number left;       ///< |f(u) - f(cu)|
  Number right;      ///< |f(u) - f(uc)|
  Number conjugate;  ///< |f(u^c) - f(u)| with u^c = c u c
  Number left_bound;       ///< 2d
  Number right_bound;      ///< 2d
  Number conjugate_bound;  ///< 8d
  bool within() const { return left <= left_bound && right <= right_bound && conjugate <= conjugate_bound; }
};

/// Deviations caused by multiplying with an element c of order two, for f
/// with defect bound d.
OrderTwoDeviations order_two_deviations(const RealFn& f, const Element& u, const Element& c, const Number& d);

}  // namespace kstab
