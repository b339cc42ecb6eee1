#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <variant>

namespace kstab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised for precondition violations: mismatched carriers, elements outside
/// a lookup table, malformed literals, empty corpora.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A real value that stays an exact rational as long as every input was
/// exact, and degrades to a 64-bit double as soon as one input is not.
class Number {
 public:
  Number() : value_(Rational(0)) {}
  Number(Rational q) : value_(std::move(q)) {}  // NOLINT(implicit)
  Number(const Integer& z) : value_(Rational(z)) {}  // NOLINT(implicit)
  Number(int v) : value_(Rational(v)) {}  // NOLINT(implicit)
  Number(long v) : value_(Rational(v)) {}  // NOLINT(implicit)
  Number(double v) : value_(v) {}  // NOLINT(implicit)

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  /// Throws DomainError if the value is floating point.
  const Rational& exact() const;
  double to_double() const;
  /// Exact values print as "p/q" (or "p"), floats with 17 significant digits.
  std::string to_string() const;

  Number operator-() const;
  Number& operator+=(const Number& rhs);
  Number& operator-=(const Number& rhs);
  Number& operator*=(const Number& rhs);
  Number& operator/=(const Number& rhs);

  friend Number operator+(Number a, const Number& b) { return a += b; }
  friend Number operator-(Number a, const Number& b) { return a -= b; }
  friend Number operator*(Number a, const Number& b) { return a *= b; }
  friend Number operator/(Number a, const Number& b) { return a /= b; }

  friend bool operator==(const Number& a, const Number& b);
  friend bool operator<(const Number& a, const Number& b);
  friend bool operator<=(const Number& a, const Number& b) { return !(b < a); }
  friend bool operator>(const Number& a, const Number& b) { return b < a; }
  friend bool operator>=(const Number& a, const Number& b) { return !(a < b); }

 private:
  std::variant<Rational, double> value_;
};

Number abs(const Number& x);
Number max(const Number& a, const Number& b);

/// |a - b| <= tol, evaluated exactly when both sides are exact.
bool approx_equal(const Number& a, const Number& b, double tol);

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

}  // namespace kstab

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace kstab {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = MatrixX<Rational>;
using RationalVector = VectorX<Rational>;

}  // namespace kstab
