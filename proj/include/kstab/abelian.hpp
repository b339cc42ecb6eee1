#pragma once

#include "kstab/limits.hpp"
#include "kstab/realfn.hpp"

#include <vector>

namespace kstab {

/// f(v) = v^T M v + a.v on Z^k, with M symmetric. B(x, y) = x^T M y is the
/// associated bimorphism and v -> a.v the additive part.
template <typename Scalar>
struct QuadraticAdditiveModel {
  MatrixX<Scalar> form;
  VectorX<Scalar> additive;

  std::size_t dimension() const { return static_cast<std::size_t>(additive.size()); }
  bool is_symmetric() const { return form == form.transpose(); }
  Scalar operator()(const VectorX<Scalar>& v) const { return v.dot(form * v) + additive.dot(v); }
};

using ExactModel = QuadraticAdditiveModel<Rational>;
using FloatModel = QuadraticAdditiveModel<double>;

/// Fit from the probe points e_i, 2e_i and e_i + e_j:
///   M_ii = (f(2e_i) - 2f(e_i)) / 2,  a_i = f(e_i) - M_ii,
///   M_ij = (f(e_i + e_j) - f(e_i) - f(e_j)) / 2.
/// Floating point values enter as their exact binary rationals.
ExactModel fit_quadratic_additive(const RealFn& f, std::size_t k);

/// Least-squares fit over a corpus (for noisy inputs).
FloatModel fit_least_squares(const RealFn& f, std::size_t k, const std::vector<Element>& corpus);

/// sup over the corpus of |f(v) - model(v)|.
Number model_residual(const ExactModel& model, const RealFn& f, const std::vector<Element>& corpus);

RealFn to_realfn(const ExactModel& model);
VectorX<Rational> to_rational_vector(const Element& x, std::size_t k);

struct JungResult {
  ExactModel model;
  /// sup |f(v) - model(v)| over the corpus.
  Number sup_dev;
  /// sup |f(v) -/+ f(-v)| over the corpus (evenness or oddness).
  Number symmetry_dev;
  Number bound;
  Element witness;
  bool passed = false;
  /// How `bound` was obtained.
  std::string constant;
};

/// f approximately even on Z^k with defect bound d: recover the pure
/// quadratic Q = hat f from the probe points and check sup |f - Q| <= 3d.
/// Throws DomainError naming the witness if sup |f(v) - f(-v)| > theta.
JungResult jung_recover(const RealFn& f, std::size_t k, const std::vector<Element>& corpus, const Number& d,
                        const Number& theta, const LimitOptions& options = {});

/// f approximately odd: recover the additive part from the tilde limit at the
/// unit vectors and check sup |f - A| <= d + theta.
JungResult jung_recover_odd(const RealFn& f, std::size_t k, const std::vector<Element>& corpus, const Number& d,
                            const Number& theta, const LimitOptions& options = {});

}  // namespace kstab
