#pragma once

#include "kstab/carrier.hpp"
#include "kstab/number.hpp"
#include "kstab/pattern.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kstab {

/// Semigroup homomorphisms used to pull functions back between carriers.
struct Homomorphism {
  enum class Kind {
    Identity,
    Abelianize,  ///< word -> Z^|alphabet| letter counts
    SlotSum,     ///< S wr C -> S, product of the slots (S abelian)
    Project,     ///< direct product -> factor `index`
    Top,         ///< S wr C -> C
  };
  Kind kind = Kind::Identity;
  std::optional<Alphabet> alphabet;
  std::size_t index = 0;
  /// SlotSum: the base carrier, whose identity is the image of slot-free elements.
  std::optional<Carrier> base;

  static Homomorphism identity() { return {}; }
  static Homomorphism abelianize(Alphabet a) { return {Kind::Abelianize, std::move(a), 0, {}}; }
  static Homomorphism slot_sum(Carrier base) { return {Kind::SlotSum, {}, 0, std::move(base)}; }
  static Homomorphism project(std::size_t i) { return {Kind::Project, {}, i, {}}; }
  static Homomorphism top() { return {Kind::Top, {}, 0, {}}; }

  friend bool operator==(const Homomorphism&, const Homomorphism&) = default;
};

Element apply(const Homomorphism& h, const Element& x);
/// Codomain of h restricted to `domain`.
Carrier codomain(const Homomorphism& h, const Carrier& domain);
std::string to_string(const Homomorphism& h);

enum class LimitMode { Hat, Tilde };

enum class LimitPath {
  Auto,        ///< closed form when the body is recognized, iteration otherwise
  Iterative,   ///< always iterate
  ClosedForm,  ///< closed form or DomainError
};

/// Controls for the dyadic limit extraction.
struct LimitOptions {
  unsigned nmax = 40;
  double tol = 1e-9;
  LimitPath path = LimitPath::Auto;
  /// Powers x^(base^k); base 2 is the dyadic limit, 3 and 5 are the m-adic
  /// verification mode.
  unsigned base = 2;
  /// Supplied bound c for |f(x^2) - 2 f(x)| (tilde hypothesis check).
  std::optional<Number> doubling_bound;
};

enum class NoiseSymmetry { None, Even, Odd };

struct FnBody;

/// A real-valued function on a semigroup. Immutable, cheap to copy (bodies
/// are shared).
class RealFn {
 public:
  /// v -> v^T M v + a.v on Z^k. M must be symmetric.
  static RealFn quadratic(RationalMatrix form, RationalVector additive);
  /// v -> w.v on Z^k.
  static RealFn additive(RationalVector weights);
  static RealFn pattern_count(PatternCounter counter = {});
  /// Closed-form homogenized pattern count.
  static RealFn pattern_tilde(PatternCounter counter = {});
  static RealFn pullback(Homomorphism h, RealFn inner);
  /// Finite exact map; evaluation off the table is a DomainError.
  static RealFn table(const std::vector<std::pair<Element, Number>>& entries);
  static RealFn sum(std::vector<std::pair<Rational, RealFn>> terms);
  static RealFn zero();
  /// Deterministic values in [-amplitude, amplitude] derived from (seed, x).
  static RealFn noise(std::uint64_t seed, Rational amplitude, NoiseSymmetry symmetry = NoiseSymmetry::None);
  /// x -> inner(x^exponent).
  static RealFn power_compose(RealFn inner, Integer exponent);
  /// x -> hat or tilde limit of inner at x, evaluated on demand.
  static RealFn limit(LimitMode mode, RealFn inner, LimitOptions options = {});

  const FnBody& body() const { return *body_; }
  const std::string& name() const { return name_; }
  RealFn named(std::string name) const;
  std::string describe() const;

  /// True when evaluation yields exact rationals (no noise, no float tables).
  bool is_exact() const;
  bool is_zero() const;

  friend RealFn operator+(const RealFn& a, const RealFn& b);
  friend RealFn operator-(const RealFn& a, const RealFn& b);
  friend RealFn operator*(const Rational& w, const RealFn& f);

 private:
  explicit RealFn(std::shared_ptr<const FnBody> body, std::string name);

  std::shared_ptr<const FnBody> body_;
  std::string name_;
};

namespace body {

struct Quadratic {
  RationalMatrix form;
  RationalVector additive;
};
struct Additive {
  RationalVector weights;
};
struct PatternCount {
  PatternCounter counter;
};
struct PatternTilde {
  PatternCounter counter;
};
struct Pullback {
  Homomorphism hom;
  RealFn inner;
};
struct Table {
  std::map<std::string, std::pair<Element, Number>> entries;
};
struct Sum {
  std::vector<std::pair<Rational, RealFn>> terms;
};
struct Noise {
  std::uint64_t seed = 0;
  Rational amplitude;
  NoiseSymmetry symmetry = NoiseSymmetry::None;
};
struct PowerCompose {
  RealFn inner;
  Integer exponent;
};
struct Limit {
  LimitMode mode;
  RealFn inner;
  LimitOptions options;
};

}  // namespace body

struct FnBody : std::variant<body::Quadratic, body::Additive, body::PatternCount, body::PatternTilde,
                             body::Pullback, body::Table, body::Sum, body::Noise, body::PowerCompose,
                             body::Limit> {
  using variant::variant;
};

Number evaluate(const RealFn& f, const Element& x);

/// f(x^n), using summaries or scaling instead of materializing x^n wherever
/// the body allows it.
Number evaluate_power(const RealFn& f, const Element& x, const Integer& n);

/// Primitive-root normal form w = root^exponent of a nonempty word.
std::pair<std::string, Integer> primitive_root(const std::string& word);

/// Stateless deterministic noise sample in [-amplitude, amplitude] for key.
double noise_sample(std::uint64_t seed, const std::string& key, double amplitude);

}  // namespace kstab
