#pragma once

#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kb/linalg/rational.hpp"

namespace kb {

/**
 * Multivariate Laurent polynomial with rational coefficients.
 *
 * Terms map exponent vectors (trailing zeros trimmed, so constants have the
 * empty vector) to nonzero coefficients. Deliberately has no division: it is
 * a ring scalar, not a field scalar, and linear solving rejects it.
 */
class Laurent {
 public:
  using Exponent = std::vector<int>;

  Laurent() = default;
  Laurent(long c) { add_term({}, Rational(c)); }  // NOLINT(google-explicit-constructor)
  Laurent(Exponent e, Rational c) { add_term(std::move(e), std::move(c)); }

  /// Single variable x_i raised to power k.
  static Laurent monomial(std::size_t var, int power, Rational c = Rational(1)) {
    Exponent e(var + 1, 0);
    e[var] = power;
    return Laurent(std::move(e), std::move(c));
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, Rational>& terms() const { return terms_; }

  void add_term(Exponent e, const Rational& c) {
    trim(e);
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(std::move(e), c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << c.str();
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) os << "*x" << i << "^" << e[i];
    }
    return os.str();
  }

  friend Laurent operator+(const Laurent& a, const Laurent& b) {
    Laurent r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
  Laurent operator-() const {
    Laurent r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(std::max(ea.size(), eb.size()), 0);
        for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
        for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
        r.add_term(std::move(e), ca * cb);
      }
    return r;
  }
  Laurent& operator+=(const Laurent& b) { return *this = *this + b; }
  Laurent& operator-=(const Laurent& b) { return *this = *this - b; }
  Laurent& operator*=(const Laurent& b) { return *this = *this * b; }

  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }
  friend std::ostream& operator<<(std::ostream& os, const Laurent& p) { return os << p.str(); }

 private:
  static void trim(Exponent& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
  }

  std::map<Exponent, Rational> terms_;
};

}  // namespace kb
