#include "kstab/number.hpp"

#include <cmath>
#include <cstdio>

namespace kstab {

const Rational& Number::exact() const {
  if (const auto* q = std::get_if<Rational>(&value_)) {
    return *q;
  }
  throw DomainError("Number::exact: value is floating point");
}

double Number::to_double() const {
  if (const auto* q = std::get_if<Rational>(&value_)) {
    return q->get_d();
  }
  return std::get<double>(value_);
}

std::string Number::to_string() const {
  if (const auto* q = std::get_if<Rational>(&value_)) {
    return kstab::to_string(*q);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(value_));
  return buf;
}

Number Number::operator-() const {
  if (const auto* q = std::get_if<Rational>(&value_)) {
    return Number(Rational(-*q));
  }
  return Number(-std::get<double>(value_));
}

Number& Number::operator+=(const Number& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<Rational>(value_) += rhs.exact();
  } else {
    value_ = to_double() + rhs.to_double();
  }
  return *this;
}

Number& Number::operator-=(const Number& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<Rational>(value_) -= rhs.exact();
  } else {
    value_ = to_double() - rhs.to_double();
  }
  return *this;
}

Number& Number::operator*=(const Number& rhs) {
  if (is_exact() && rhs.is_exact()) {
    std::get<Rational>(value_) *= rhs.exact();
  } else {
    value_ = to_double() * rhs.to_double();
  }
  return *this;
}

Number& Number::operator/=(const Number& rhs) {
  if (is_exact() && rhs.is_exact()) {
    if (sgn(rhs.exact()) == 0) {
      throw DomainError("Number: division by zero");
    }
    std::get<Rational>(value_) /= rhs.exact();
  } else {
    value_ = to_double() / rhs.to_double();
  }
  return *this;
}

bool operator==(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) {
    return a.exact() == b.exact();
  }
  return a.to_double() == b.to_double();
}

bool operator<(const Number& a, const Number& b) {
  if (a.is_exact() && b.is_exact()) {
    return a.exact() < b.exact();
  }
  return a.to_double() < b.to_double();
}

Number abs(const Number& x) { return x < Number(0) ? -x : x; }

Number max(const Number& a, const Number& b) { return a < b ? b : a; }

bool approx_equal(const Number& a, const Number& b, double tol) {
  if (a.is_exact() && b.is_exact()) {
    Rational diff = a.exact() - b.exact();
    return ::abs(diff) <= Rational(tol);
  }
  return std::fabs(a.to_double() - b.to_double()) <= tol;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) {
    throw DomainError("empty rational literal");
  }
  // Decimal literals such as "0.5", "-1.25" or "2.5e-3" are read exactly.
  if (auto e = text.find_first_of("eE"); e != std::string::npos && text.find('/') == std::string::npos) {
    const std::string exponent_text = text.substr(e + 1);
    long exponent = 0;
    try {
      std::size_t used = 0;
      exponent = std::stol(exponent_text, &used);
      if (used != exponent_text.size()) {
        throw DomainError("");
      }
    } catch (const std::exception&) {
      throw DomainError("malformed rational literal '" + text + "'");
    }
    Integer ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational q = parse_rational(text.substr(0, e));
    return exponent < 0 ? Rational(q / ten) : Rational(q * ten);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t scale = text.size() - dot - 1;
    Rational q;
    if (q.get_num().set_str(digits, 10) != 0) {
      throw DomainError("malformed rational literal '" + text + "'");
    }
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
    q.get_den() = den;
    q.canonicalize();
    return q;
  }
  Rational q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw DomainError("malformed rational literal '" + text + "'");
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace kstab
