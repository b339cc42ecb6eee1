#include "kstab/realfn.hpp"

#include "kstab/limits.hpp"

#include <cmath>
#include <sstream>

namespace kstab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

const AbelianVector& as_vector(const Element& x, std::size_t rank, const char* who) {
  const auto* v = std::get_if<AbelianVector>(&x);
  if (v == nullptr) {
    throw DomainError(std::string(who) + ": expected an integer vector, got " + to_string(x));
  }
  if (v->rank() != rank) {
    throw DomainError(std::string(who) + ": vector of rank " + std::to_string(v->rank()) + ", expected " +
                      std::to_string(rank));
  }
  return *v;
}

const Word& as_word(const Element& x, const char* who) {
  const auto* w = std::get_if<Word>(&x);
  if (w == nullptr) {
    throw DomainError(std::string(who) + ": expected a word, got " + to_string(x));
  }
  return *w;
}

RationalVector to_rational(const AbelianVector& v) {
  RationalVector out(static_cast<Eigen::Index>(v.rank()));
  for (std::size_t i = 0; i < v.rank(); ++i) {
    out[static_cast<Eigen::Index>(i)] = Rational(v.coords[i]);
  }
  return out;
}

bool all_zero(const RationalMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (m.data()[i] != 0) {
      return false;
    }
  }
  return true;
}

bool all_zero(const RationalVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] != 0) {
      return false;
    }
  }
  return true;
}

std::string join(const RationalVector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out += (i ? "," : "") + to_string(v[i]);
  }
  return out;
}

/// Noise key for x^n: words go through their primitive root so that huge
/// powers never need to exist as strings.
std::string noise_key(const Element& x, const Integer& n) {
  if (const auto* w = std::get_if<Word>(&x)) {
    if (w->is_unit() || n == 0) {
      return "1";
    }
    auto [root, e] = primitive_root(w->letters);
    Integer total = e * n;
    return total == 1 ? root : root + "^" + total.get_str();
  }
  if (n == 1) {
    return to_string(x);
  }
  return to_string(pow(x, n));
}

Number noise_value(const body::Noise& nz, const Element& x, const Integer& n) {
  const double amp = nz.amplitude.get_d();
  const std::string key = noise_key(x, n);
  if (nz.symmetry == NoiseSymmetry::None) {
    return noise_sample(nz.seed, key, amp);
  }
  std::optional<Element> inv = inverse(n == 1 ? x : pow(x, n));
  if (!inv) {
    return noise_sample(nz.seed, key, amp);
  }
  const std::string inv_key = to_string(*inv);
  if (inv_key == key) {
    return nz.symmetry == NoiseSymmetry::Even ? noise_sample(nz.seed, key, amp) : 0.0;
  }
  const bool first = key < inv_key;
  const double v = noise_sample(nz.seed, first ? key : inv_key, amp);
  if (nz.symmetry == NoiseSymmetry::Odd && !first) {
    return -v;
  }
  return v;
}

}  // namespace

// -- homomorphisms ---------------------------------------------------------

Element apply(const Homomorphism& h, const Element& x) {
  switch (h.kind) {
    case Homomorphism::Kind::Identity:
      return x;
    case Homomorphism::Kind::Abelianize: {
      const Word& w = as_word(x, "abelianize");
      const Alphabet& a = *h.alphabet;
      AbelianVector v = AbelianVector::zero(a.size());
      for (char ch : w.letters) {
        if (!a.contains(ch)) {
          throw DomainError(std::string("abelianize: letter '") + ch + "' outside alphabet");
        }
        v.coords[a.index_of(ch)] += 1;
      }
      return v;
    }
    case Homomorphism::Kind::SlotSum: {
      const auto* u = std::get_if<WreathElement>(&x);
      if (u == nullptr) {
        throw DomainError("slot sum: expected a wreath element, got " + to_string(x));
      }
      std::optional<Element> acc = identity(*h.base);
      if (!acc) {
        throw DomainError("slot sum: base carrier has no identity");
      }
      for (KleinFour t : KleinFour::all()) {
        if (const Element* s = u->slot(t)) {
          acc = mul(*acc, *s);
        }
      }
      return *acc;
    }
    case Homomorphism::Kind::Project: {
      const auto* p = std::get_if<ProductElement>(&x);
      if (p == nullptr || h.index >= p->parts.size()) {
        throw DomainError("project: no factor " + std::to_string(h.index) + " in " + to_string(x));
      }
      return p->parts[h.index];
    }
    case Homomorphism::Kind::Top: {
      const auto* u = std::get_if<WreathElement>(&x);
      if (u == nullptr) {
        throw DomainError("top: expected a wreath element, got " + to_string(x));
      }
      return u->top;
    }
  }
  throw DomainError("unknown homomorphism");
}

Carrier codomain(const Homomorphism& h, const Carrier& domain) {
  switch (h.kind) {
    case Homomorphism::Kind::Identity:
      return domain;
    case Homomorphism::Kind::Abelianize:
      return Carrier::free_abelian(h.alphabet->size());
    case Homomorphism::Kind::SlotSum:
      return *h.base;
    case Homomorphism::Kind::Project:
      if (domain.kind != Carrier::Kind::Product || h.index >= domain.parts.size()) {
        throw DomainError("project: carrier " + to_string(domain) + " has no factor " + std::to_string(h.index));
      }
      return domain.parts[h.index];
    case Homomorphism::Kind::Top:
      return Carrier::klein();
  }
  throw DomainError("unknown homomorphism");
}

std::string to_string(const Homomorphism& h) {
  switch (h.kind) {
    case Homomorphism::Kind::Identity:
      return "id";
    case Homomorphism::Kind::Abelianize:
      return "abelianize[" + h.alphabet->symbols() + "]";
    case Homomorphism::Kind::SlotSum:
      return "slot-sum[" + to_string(*h.base) + "]";
    case Homomorphism::Kind::Project:
      return "project[" + std::to_string(h.index) + "]";
    case Homomorphism::Kind::Top:
      return "top";
  }
  return "?";
}

// -- construction ----------------------------------------------------------

RealFn::RealFn(std::shared_ptr<const FnBody> body, std::string name)
    : body_(std::move(body)), name_(std::move(name)) {}

RealFn RealFn::quadratic(RationalMatrix form, RationalVector additive) {
  if (form.rows() != form.cols() || form.rows() != additive.size() || form.rows() == 0) {
    throw DomainError("quadratic: form must be k x k and the additive vector of length k");
  }
  if (form != form.transpose()) {
    throw DomainError("quadratic: form must be symmetric");
  }
  return RealFn(std::make_shared<const FnBody>(body::Quadratic{std::move(form), std::move(additive)}), "quadratic");
}

RealFn RealFn::additive(RationalVector weights) {
  if (weights.size() == 0) {
    throw DomainError("additive: empty weight vector");
  }
  return RealFn(std::make_shared<const FnBody>(body::Additive{std::move(weights)}), "additive");
}

RealFn RealFn::pattern_count(PatternCounter counter) {
  std::string name = "count[" + counter.pattern() + "]";
  return RealFn(std::make_shared<const FnBody>(body::PatternCount{std::move(counter)}), name);
}

RealFn RealFn::pattern_tilde(PatternCounter counter) {
  std::string name = "count~[" + counter.pattern() + "]";
  return RealFn(std::make_shared<const FnBody>(body::PatternTilde{std::move(counter)}), name);
}

RealFn RealFn::pullback(Homomorphism h, RealFn inner) {
  if (h.kind == Homomorphism::Kind::Abelianize && !h.alphabet) {
    throw DomainError("abelianize needs an alphabet");
  }
  if (h.kind == Homomorphism::Kind::SlotSum && !h.base) {
    throw DomainError("slot sum needs a base carrier");
  }
  std::string name = inner.name() + "." + to_string(h);
  return RealFn(std::make_shared<const FnBody>(body::Pullback{std::move(h), std::move(inner)}), name);
}

RealFn RealFn::table(const std::vector<std::pair<Element, Number>>& entries) {
  body::Table t;
  for (const auto& [x, v] : entries) {
    auto [it, fresh] = t.entries.emplace(to_string(x), std::make_pair(x, v));
    if (!fresh && !(it->second.second == v)) {
      throw DomainError("table: conflicting values for " + to_string(x));
    }
  }
  return RealFn(std::make_shared<const FnBody>(std::move(t)), "table");
}

RealFn RealFn::sum(std::vector<std::pair<Rational, RealFn>> terms) {
  // Nested sums are flattened so that closed forms see every summand.
  std::vector<std::pair<Rational, RealFn>> flat;
  for (auto& [w, f] : terms) {
    if (const auto* s = std::get_if<body::Sum>(&f.body())) {
      for (const auto& [w2, g] : s->terms) {
        flat.emplace_back(w * w2, g);
      }
    } else {
      flat.emplace_back(w, std::move(f));
    }
  }
  return RealFn(std::make_shared<const FnBody>(body::Sum{std::move(flat)}), "sum");
}

RealFn RealFn::zero() { return sum({}).named("zero"); }

RealFn RealFn::noise(std::uint64_t seed, Rational amplitude, NoiseSymmetry symmetry) {
  if (amplitude < 0) {
    throw DomainError("noise: negative amplitude");
  }
  return RealFn(std::make_shared<const FnBody>(body::Noise{seed, std::move(amplitude), symmetry}), "noise");
}

RealFn RealFn::power_compose(RealFn inner, Integer exponent) {
  if (exponent < 1) {
    throw DomainError("power: exponent must be >= 1");
  }
  std::string name = inner.name() + "^" + exponent.get_str();
  return RealFn(std::make_shared<const FnBody>(body::PowerCompose{std::move(inner), std::move(exponent)}), name);
}

RealFn RealFn::limit(LimitMode mode, RealFn inner, LimitOptions options) {
  std::string name = (mode == LimitMode::Hat ? "hat(" : "tilde(") + inner.name() + ")";
  return RealFn(std::make_shared<const FnBody>(body::Limit{mode, std::move(inner), options}), name);
}

RealFn RealFn::named(std::string name) const { return RealFn(body_, std::move(name)); }

RealFn operator+(const RealFn& a, const RealFn& b) { return RealFn::sum({{1, a}, {1, b}}); }
RealFn operator-(const RealFn& a, const RealFn& b) { return RealFn::sum({{1, a}, {-1, b}}); }
RealFn operator*(const Rational& w, const RealFn& f) { return RealFn::sum({{w, f}}); }

std::string RealFn::describe() const {
  return std::visit(
      overloaded{
          [](const body::Quadratic& q) {
            std::string rows;
            for (Eigen::Index i = 0; i < q.form.rows(); ++i) {
              rows += (i ? ";" : "") + join(q.form.row(i).transpose());
            }
            return "quadratic(M=[" + rows + "], a=[" + join(q.additive) + "])";
          },
          [](const body::Additive& a) { return "additive(" + join(a.weights) + ")"; },
          [](const body::PatternCount& p) { return "count(" + p.counter.pattern() + ")"; },
          [](const body::PatternTilde& p) { return "count~(" + p.counter.pattern() + ")"; },
          [](const body::Pullback& p) { return p.inner.describe() + " o " + to_string(p.hom); },
          [](const body::Table& t) { return "table(" + std::to_string(t.entries.size()) + " entries)"; },
          [](const body::Sum& s) {
            if (s.terms.empty()) {
              return std::string("0");
            }
            std::string out;
            for (const auto& [w, f] : s.terms) {
              out += (out.empty() ? "" : " + ") + (w == 1 ? "" : to_string(w) + "*") + f.describe();
            }
            return out;
          },
          [](const body::Noise& n) {
            std::string sym = n.symmetry == NoiseSymmetry::Even ? ",even" : n.symmetry == NoiseSymmetry::Odd ? ",odd" : "";
            return "noise(seed=" + std::to_string(n.seed) + ", amplitude=" + to_string(n.amplitude) + sym + ")";
          },
          [](const body::PowerCompose& p) { return p.inner.describe() + " o x^" + p.exponent.get_str(); },
          [](const body::Limit& l) {
            return std::string(l.mode == LimitMode::Hat ? "hat" : "tilde") + "[" + l.inner.describe() + "]";
          },
      },
      body());
}

bool RealFn::is_exact() const {
  return std::visit(overloaded{
                        [](const body::Pullback& p) { return p.inner.is_exact(); },
                        [](const body::Table& t) {
                          for (const auto& [k, entry] : t.entries) {
                            if (!entry.second.is_exact()) {
                              return false;
                            }
                          }
                          return true;
                        },
                        [](const body::Sum& s) {
                          for (const auto& [w, f] : s.terms) {
                            if (w != 0 && !f.is_exact()) {
                              return false;
                            }
                          }
                          return true;
                        },
                        [](const body::Noise& n) { return n.amplitude == 0; },
                        [](const body::PowerCompose& p) { return p.inner.is_exact(); },
                        [](const body::Limit& l) { return l.inner.is_exact(); },
                        [](const auto&) { return true; },
                    },
                    body());
}

bool RealFn::is_zero() const {
  return std::visit(overloaded{
                        [](const body::Quadratic& q) { return all_zero(q.form) && all_zero(q.additive); },
                        [](const body::Additive& a) { return all_zero(a.weights); },
                        [](const body::Pullback& p) { return p.inner.is_zero(); },
                        [](const body::Table& t) {
                          for (const auto& [k, entry] : t.entries) {
                            if (!(entry.second == Number(0))) {
                              return false;
                            }
                          }
                          return true;
                        },
                        [](const body::Sum& s) {
                          for (const auto& [w, f] : s.terms) {
                            if (w != 0 && !f.is_zero()) {
                              return false;
                            }
                          }
                          return true;
                        },
                        [](const body::Noise& n) { return n.amplitude == 0; },
                        [](const body::PowerCompose& p) { return p.inner.is_zero(); },
                        [](const body::Limit& l) { return l.inner.is_zero(); },
                        [](const auto&) { return false; },
                    },
                    body());
}

// -- evaluation ------------------------------------------------------------

Number evaluate(const RealFn& f, const Element& x) { return evaluate_power(f, x, Integer(1)); }

Number evaluate_power(const RealFn& f, const Element& x, const Integer& n) {
  if (n < 1) {
    throw DomainError("evaluate_power: exponent must be >= 1");
  }
  return std::visit(
      overloaded{
          [&](const body::Quadratic& q) -> Number {
            const auto& v = as_vector(x, static_cast<std::size_t>(q.form.rows()), "quadratic");
            RationalVector r = to_rational(v);
            const Rational s(n);
            return Rational(s * s * r.dot(q.form * r) + s * q.additive.dot(r));
          },
          [&](const body::Additive& a) -> Number {
            const auto& v = as_vector(x, static_cast<std::size_t>(a.weights.size()), "additive");
            return Rational(Rational(n) * a.weights.dot(to_rational(v)));
          },
          [&](const body::PatternCount& p) -> Number {
            const Word& w = as_word(x, "pattern count");
            if (w.is_unit()) {
              return 0;
            }
            return n == 1 ? p.counter.count(w) : p.counter.power_count(w, n);
          },
          [&](const body::PatternTilde& p) -> Number {
            const Word& w = as_word(x, "pattern tilde");
            return n == 1 ? p.counter.tilde(w) : p.counter.tilde_power(w, n);
          },
          [&](const body::Pullback& p) -> Number { return evaluate_power(p.inner, apply(p.hom, x), n); },
          [&](const body::Table& t) -> Number {
            const std::string key = n == 1 ? to_string(x) : to_string(pow(x, n));
            auto it = t.entries.find(key);
            if (it == t.entries.end()) {
              throw DomainError("table: no value at " + key);
            }
            return it->second.second;
          },
          [&](const body::Sum& s) -> Number {
            Number acc = 0;
            for (const auto& [w, g] : s.terms) {
              if (w != 0) {
                acc += Number(w) * evaluate_power(g, x, n);
              }
            }
            return acc;
          },
          [&](const body::Noise& nz) -> Number {
            if (nz.amplitude == 0) {
              return 0;
            }
            return noise_value(nz, x, n);
          },
          [&](const body::PowerCompose& p) -> Number { return evaluate_power(p.inner, x, p.exponent * n); },
          [&](const body::Limit& l) -> Number { return dyadic_limit(l.inner, x, n, l.mode, l.options).value; },
      },
      f.body());
}

std::pair<std::string, Integer> primitive_root(const std::string& word) {
  if (word.empty()) {
    throw DomainError("primitive_root: empty word");
  }
  // KMP failure function: the shortest period p divides |w| iff w is a power.
  const std::size_t n = word.size();
  std::vector<std::size_t> fail(n + 1, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && word[i] != word[k]) {
      k = fail[k];
    }
    if (word[i] == word[k]) {
      ++k;
    }
    fail[i + 1] = k;
  }
  const std::size_t p = n - fail[n];
  if (n % p == 0) {
    return {word.substr(0, p), Integer(static_cast<unsigned long>(n / p))};
  }
  return {word, Integer(1)};
}

double noise_sample(std::uint64_t seed, const std::string& key, double amplitude) {
  const std::uint64_t u = splitmix64(seed ^ fnv1a(key)) >> 11;
  const double unit = static_cast<double>(u) / 9007199254740992.0;  // 2^53
  return amplitude * (2.0 * unit - 1.0);
}

}  // namespace kstab
