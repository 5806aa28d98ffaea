#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <utility>

#include "kb/linalg/scalar.hpp"

namespace kb {

/// Arbitrary precision rational, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "a", "-a" or "a/b".
  static Rational parse(const std::string& s) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0)
      throw ValidationError("malformed rational '" + s + "'");
    if (q.get_den() == 0) throw ValidationError("rational with zero denominator '" + s + "'");
    q.canonicalize();
    return Rational(std::move(q));
  }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  int sign() const { return sgn(q_); }
  std::string str() const { return q_.get_str(); }
  const mpq_class& raw() const { return q_; }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero rational");
    return Rational(mpq_class(1 / q_));
  }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("rational division by zero");
    return Rational(mpq_class(a.q_ / b.q_));
  }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& b) { q_ += b.q_; return *this; }
  Rational& operator-=(const Rational& b) { q_ -= b.q_; return *this; }
  Rational& operator*=(const Rational& b) { q_ *= b.q_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

template <>
struct ScalarTraits<Rational> {
  static Rational parse(const std::string& s, const FieldSpec&) { return Rational::parse(s); }
  static Rational from_int(long v, const FieldSpec&) { return Rational(v); }
  static FieldSpec spec_of(const Rational&) { return {}; }
};

}  // namespace kb
