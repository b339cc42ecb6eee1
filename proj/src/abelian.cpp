#include "kstab/abelian.hpp"

#include <Eigen/QR>

namespace kstab {

namespace {

Rational as_rational(const Number& v) {
  if (v.is_exact()) {
    return v.exact();
  }
  return Rational(v.to_double());
}

Rational probe(const RealFn& f, const AbelianVector& v) {
  try {
    return as_rational(evaluate(f, v));
  } catch (const DomainError& e) {
    throw DomainError("fit: cannot evaluate at probe point " + to_string(Element(v)) + ": " + e.what());
  }
}

AbelianVector sum_units(std::size_t k, std::size_t i, std::size_t j) {
  AbelianVector v = AbelianVector::zero(k);
  v.coords[i] += 1;
  v.coords[j] += 1;
  return v;
}

AbelianVector negate(const AbelianVector& v) {
  AbelianVector out = v;
  for (auto& c : out.coords) {
    c = -c;
  }
  return out;
}

void require_vectors(const std::vector<Element>& corpus, std::size_t k, const char* who) {
  if (corpus.empty()) {
    throw DomainError(std::string(who) + ": empty corpus");
  }
  for (const Element& x : corpus) {
    const auto* v = std::get_if<AbelianVector>(&x);
    if (v == nullptr || v->rank() != k) {
      throw DomainError(std::string(who) + ": " + to_string(x) + " is not in Z^" + std::to_string(k));
    }
  }
}

}  // namespace

VectorX<Rational> to_rational_vector(const Element& x, std::size_t k) {
  const auto* v = std::get_if<AbelianVector>(&x);
  if (v == nullptr || v->rank() != k) {
    throw DomainError(to_string(x) + " is not in Z^" + std::to_string(k));
  }
  VectorX<Rational> out(static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    out[static_cast<Eigen::Index>(i)] = Rational(v->coords[i]);
  }
  return out;
}

ExactModel fit_quadratic_additive(const RealFn& f, std::size_t k) {
  if (k == 0) {
    throw DomainError("fit: dimension must be positive");
  }
  const auto n = static_cast<Eigen::Index>(k);
  ExactModel m;
  m.form = RationalMatrix::Constant(n, n, Rational(0));
  m.additive = RationalVector::Constant(n, Rational(0));
  std::vector<Rational> single(k);
  for (std::size_t i = 0; i < k; ++i) {
    single[i] = probe(f, AbelianVector::unit(k, i));
    const Rational twice = probe(f, sum_units(k, i, i));
    const Rational mii = (twice - 2 * single[i]) / 2;
    m.form(i, i) = mii;
    m.additive[i] = single[i] - mii;
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const Rational mij = (probe(f, sum_units(k, i, j)) - single[i] - single[j]) / 2;
      m.form(i, j) = mij;
      m.form(j, i) = mij;
    }
  }
  return m;
}

FloatModel fit_least_squares(const RealFn& f, std::size_t k, const std::vector<Element>& corpus) {
  require_vectors(corpus, k, "least squares");
  const std::size_t quad_terms = k * (k + 1) / 2;
  const auto cols = static_cast<Eigen::Index>(quad_terms + k);
  Eigen::MatrixXd design(static_cast<Eigen::Index>(corpus.size()), cols);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(corpus.size()));
  for (std::size_t r = 0; r < corpus.size(); ++r) {
    const auto& v = std::get<AbelianVector>(corpus[r]);
    Eigen::Index c = 0;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i; j < k; ++j) {
        design(static_cast<Eigen::Index>(r), c++) = v.coords[i].get_d() * v.coords[j].get_d();
      }
    }
    for (std::size_t i = 0; i < k; ++i) {
      design(static_cast<Eigen::Index>(r), c++) = v.coords[i].get_d();
    }
    rhs[static_cast<Eigen::Index>(r)] = evaluate(f, corpus[r]).to_double();
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  const auto n = static_cast<Eigen::Index>(k);
  FloatModel m;
  m.form = Eigen::MatrixXd::Zero(n, n);
  m.additive = Eigen::VectorXd::Zero(n);
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      if (i == j) {
        m.form(i, i) = coef[c++];
      } else {
        m.form(i, j) = m.form(j, i) = coef[c++] / 2;
      }
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    m.additive[i] = coef[c++];
  }
  return m;
}

Number model_residual(const ExactModel& model, const RealFn& f, const std::vector<Element>& corpus) {
  const std::size_t k = model.dimension();
  require_vectors(corpus, k, "model_residual");
  Number sup = 0;
  for (const Element& x : corpus) {
    sup = max(sup, abs(evaluate(f, x) - Number(model(to_rational_vector(x, k)))));
  }
  return sup;
}

RealFn to_realfn(const ExactModel& model) { return RealFn::quadratic(model.form, model.additive); }

namespace {

struct SymmetryScan {
  Number sup;
  Element witness;
};

SymmetryScan symmetry_scan(const RealFn& f, const std::vector<Element>& corpus, bool even) {
  SymmetryScan s;
  bool first = true;
  for (const Element& x : corpus) {
    const Number fx = evaluate(f, x);
    const Number fm = evaluate(f, negate(std::get<AbelianVector>(x)));
    const Number dev = abs(even ? fx - fm : fx + fm);
    if (first || s.sup < dev) {
      s.sup = dev;
      s.witness = x;
      first = false;
    }
  }
  return s;
}

void finish(JungResult& r, const RealFn& f, const std::vector<Element>& corpus) {
  const std::size_t k = r.model.dimension();
  bool first = true;
  for (const Element& x : corpus) {
    const Number dev = abs(evaluate(f, x) - Number(r.model(to_rational_vector(x, k))));
    if (first || r.sup_dev < dev) {
      r.sup_dev = dev;
      r.witness = x;
      first = false;
    }
  }
  r.passed = r.sup_dev <= r.bound;
}

}  // namespace

JungResult jung_recover(const RealFn& f, std::size_t k, const std::vector<Element>& corpus, const Number& d,
                        const Number& theta, const LimitOptions& options) {
  require_vectors(corpus, k, "jung");
  const SymmetryScan even = symmetry_scan(f, corpus, true);
  if (theta < even.sup) {
    throw DomainError("jung: f is not even within theta: |f(v) - f(-v)| = " + even.sup.to_string() + " at v = " +
                      to_string(even.witness));
  }
  const RealFn hat = RealFn::limit(LimitMode::Hat, f, options);
  JungResult r;
  r.model = fit_quadratic_additive(hat, k);
  // The hat part is homogeneous of degree two, so its additive part is zero
  // up to the limit tolerance; the recovered Q is the pure form.
  r.model.additive = RationalVector::Constant(static_cast<Eigen::Index>(k), Rational(0));
  r.symmetry_dev = even.sup;
  r.bound = Number(3) * d;
  r.constant = "3d";
  finish(r, f, corpus);
  return r;
}

JungResult jung_recover_odd(const RealFn& f, std::size_t k, const std::vector<Element>& corpus, const Number& d,
                            const Number& theta, const LimitOptions& options) {
  require_vectors(corpus, k, "jung (odd)");
  const SymmetryScan odd = symmetry_scan(f, corpus, false);
  if (theta < odd.sup) {
    throw DomainError("jung: f is not odd within theta: |f(v) + f(-v)| = " + odd.sup.to_string() + " at v = " +
                      to_string(odd.witness));
  }
  JungResult r;
  const auto n = static_cast<Eigen::Index>(k);
  r.model.form = RationalMatrix::Constant(n, n, Rational(0));
  r.model.additive = RationalVector::Constant(n, Rational(0));
  const RealFn phi = f - RealFn::limit(LimitMode::Hat, f, options);
  const std::optional<RealFn> linear =
      options.path == LimitPath::Iterative ? std::nullopt : closed_linear_part(f);
  for (std::size_t i = 0; i < k; ++i) {
    const Element e = AbelianVector::unit(k, i);
    const Number a = linear ? evaluate(*linear, e) : tilde_limit(phi, e, options).value;
    r.model.additive[static_cast<Eigen::Index>(i)] = as_rational(a);
  }
  r.symmetry_dev = odd.sup;
  r.bound = d + theta;
  r.constant = "d+theta";
  finish(r, f, corpus);
  return r;
}

}  // namespace kstab
