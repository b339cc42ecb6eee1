#include "kstab/defect.hpp"

namespace kstab {

Number kannappan_defect(const RealFn& f, const Element& x, const Element& y, const Element& z) {
  const Element xy = mul(x, y);
  return evaluate(f, mul(xy, z)) + evaluate(f, x) + evaluate(f, y) + evaluate(f, z) - evaluate(f, xy) -
         evaluate(f, mul(x, z)) - evaluate(f, mul(y, z));
}

namespace {

std::string triple_key(const Triple& t) {
  return to_string(t[0]) + "\x1f" + to_string(t[1]) + "\x1f" + to_string(t[2]);
}

}  // namespace

DefectReport sup_defect(const RealFn& f, std::span<const Triple> corpus) {
  if (corpus.empty()) {
    throw DomainError("sup_defect: empty corpus");
  }
  DefectReport report;
  std::string best_key;
  bool first = true;
  for (const Triple& t : corpus) {
    Number d = kannappan_defect(f, t[0], t[1], t[2]);
    report.exact = report.exact && d.is_exact();
    const Number mag = abs(d);
    ++report.samples;
    if (first || report.sup_estimate < mag) {
      report.sup_estimate = mag;
      report.value = d;
      report.triple = t;
      best_key = triple_key(t);
      first = false;
    } else if (mag == report.sup_estimate) {
      std::string key = triple_key(t);
      if (key < best_key) {
        report.value = d;
        report.triple = t;
        best_key = std::move(key);
      }
    }
  }
  return report;
}

BoundedValue nfold_defect(const RealFn& f, const std::vector<Element>& xs, const Number& c) {
  const std::size_t n = xs.size();
  if (n < 3) {
    throw DomainError("nfold_defect: need at least 3 elements");
  }
  Element prod = xs[0];
  for (std::size_t i = 1; i < n; ++i) {
    prod = mul(prod, xs[i]);
  }
  Number singles = 0;
  for (const Element& x : xs) {
    singles += evaluate(f, x);
  }
  Number pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      pairs += evaluate(f, mul(xs[i], xs[j]));
    }
  }
  const long nn = static_cast<long>(n);
  BoundedValue out;
  out.value = evaluate(f, prod) + Number(nn - 2) * singles - pairs;
  Rational half((nn - 2) * (nn - 1), 2);
  half.canonicalize();
  out.bound = Number(half) * c;
  return out;
}

BoundedValue power_defect(const RealFn& f, const Element& x, const Integer& n, const Number& c) {
  if (n < 3) {
    throw DomainError("power_defect: n must be >= 3");
  }
  const Rational q(n);
  BoundedValue out;
  out.value = evaluate_power(f, x, n) + Number(Rational((q - 2) * q)) * evaluate(f, x) -
              Number(Rational((q - 1) * q / 2)) * evaluate_power(f, x, Integer(2));
  out.bound = Number(Rational((q - 2) * (q - 1) / 2)) * c;
  return out;
}

BoundedValue square_compose_defect(const RealFn& f, const Element& x, const Element& y, const Element& z,
                                   const Number& c) {
  BoundedValue out;
  out.value = kannappan_defect(RealFn::power_compose(f, Integer(2)), x, y, z);
  out.bound = Number(21) * c;
  return out;
}

ExchangeResiduals quadratic_exchange_residuals(const RealFn& f, const Element& x, const Element& y,
                                               const Element& z) {
  for (const Element* e : {&x, &y, &z}) {
    if (!inverse(*e)) {
      throw DomainError("quadratic exchange: " + to_string(*e) + " is not invertible");
    }
  }
  const Number fx = evaluate(f, x), fy = evaluate(f, y), fz = evaluate(f, z);
  const Number fxy = evaluate(f, mul(x, y)), fxz = evaluate(f, mul(x, z)), fyz = evaluate(f, mul(y, z));
  const Number lhs = evaluate(f, mul({x, y, z})) + evaluate(f, mul({x, z, y}));
  ExchangeResiduals r;
  r.as_printed = lhs - (fx + Number(3) * fy + Number(3) * fz + fxy + fxz - fyz);
  r.corrected = lhs + Number(2) * (fx + fy + fz) - Number(2) * (fxy + fxz + fyz);
  return r;
}

OrderTwoDeviations order_two_deviations(const RealFn& f, const Element& u, const Element& c, const Number& d) {
  if (!is_identity(mul(c, c))) {
    throw DomainError("order_two_deviations: " + to_string(c) + " does not square to the identity");
  }
  const Number fu = evaluate(f, u);
  OrderTwoDeviations out;
  out.left = abs(fu - evaluate(f, mul(c, u)));
  out.right = abs(fu - evaluate(f, mul(u, c)));
  out.conjugate = abs(evaluate(f, mul({c, u, c})) - fu);
  out.left_bound = Number(2) * d;
  out.right_bound = Number(2) * d;
  out.conjugate_bound = Number(8) * d;
  return out;
}

}  // namespace kstab
