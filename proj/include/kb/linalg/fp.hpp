#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "kb/linalg/scalar.hpp"

namespace kb {

/**
 * Element of the prime field F_p.
 *
 * The modulus travels with the value. An element constructed from a bare
 * integer (`Fp(0)`, `Fp(1)`, ...) carries modulus 0 and acts as an integer
 * literal: it adopts the modulus of whatever typed element it meets. This
 * keeps generic code (which only ever writes K(0), K(1), K(-1)) independent
 * of the runtime prime.
 */
class Fp {
 public:
  Fp() = default;
  Fp(long v) : v_(v), p_(0) {}  // NOLINT(google-explicit-constructor)
  Fp(long v, std::uint64_t p) : p_(p) {
    if (p < 2) throw ValidationError("F_p modulus must be a prime >= 2");
    long r = v % static_cast<long>(p);
    v_ = r < 0 ? r + static_cast<long>(p) : r;
  }

  static Fp parse(const std::string& s, std::uint64_t p) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) throw ValidationError("malformed scalar '" + s + "'");
    if (q.get_den() == 0) throw ValidationError("zero denominator in '" + s + "'");
    mpz_class m(static_cast<unsigned long>(p));
    mpz_class num = q.get_num() % m;
    mpz_class den = q.get_den() % m;
    if (den == 0) throw ValidationError("denominator of '" + s + "' vanishes mod " + std::to_string(p));
    Fp n(static_cast<long>(num.get_si()), p);
    Fp d(static_cast<long>(den.get_si()), p);
    return n / d;
  }

  bool is_zero() const { return p_ == 0 ? v_ == 0 : v_ == 0; }
  std::uint64_t modulus() const { return p_; }
  long value() const { return v_; }
  std::string str() const { return std::to_string(v_); }

  Fp inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in F_p");
    if (p_ == 0) {
      if (v_ == 1 || v_ == -1) return Fp(v_);
      throw std::logic_error("inverse of an untyped F_p literal");
    }
    // Fermat: a^(p-2)
    return pow(static_cast<std::uint64_t>(p_ - 2));
  }

  Fp pow(std::uint64_t e) const {
    Fp base = *this, acc = Fp(1).with(p_);
    while (e) {
      if (e & 1U) acc = acc * base;
      base = base * base;
      e >>= 1U;
    }
    return acc;
  }

  friend Fp operator+(const Fp& a, const Fp& b) { return combine(a, b, a.norm(b) + b.norm(a)); }
  friend Fp operator-(const Fp& a, const Fp& b) { return combine(a, b, a.norm(b) - b.norm(a)); }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::uint64_t p = common(a, b);
    if (p == 0) return Fp(a.v_ * b.v_);
    auto prod = static_cast<unsigned __int128>(a.norm(b)) * static_cast<unsigned __int128>(b.norm(a));
    return Fp(static_cast<long>(prod % p), p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) {
    std::uint64_t p = common(a, b);
    return a.with(p) * b.with(p).inverse();
  }
  Fp operator-() const { return p_ == 0 ? Fp(-v_) : Fp(-v_, p_); }
  Fp& operator+=(const Fp& b) { return *this = *this + b; }
  Fp& operator-=(const Fp& b) { return *this = *this - b; }
  Fp& operator*=(const Fp& b) { return *this = *this * b; }

  friend bool operator==(const Fp& a, const Fp& b) {
    std::uint64_t p = common(a, b);
    if (p == 0) return a.v_ == b.v_;
    return a.norm(b) == b.norm(a);
  }
  friend std::ostream& operator<<(std::ostream& os, const Fp& x) { return os << x.str(); }

  /// Same value, reinterpreted with modulus p (no-op for typed elements).
  Fp with(std::uint64_t p) const { return (p_ != 0 || p == 0) ? *this : Fp(v_, p); }

 private:
  static std::uint64_t common(const Fp& a, const Fp& b) {
    if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_) throw ShapeError("mixing F_p elements of different primes");
    return a.p_ != 0 ? a.p_ : b.p_;
  }
  static Fp combine(const Fp& a, const Fp& b, long v) {
    std::uint64_t p = common(a, b);
    return p == 0 ? Fp(v) : Fp(v, p);
  }
  // Value reduced into [0,p) for the modulus shared with `other`.
  long norm(const Fp& other) const {
    std::uint64_t p = common(*this, other);
    if (p == 0 || p_ != 0) return v_;
    long r = v_ % static_cast<long>(p);
    return r < 0 ? r + static_cast<long>(p) : r;
  }

  long v_ = 0;
  std::uint64_t p_ = 0;
};

template <>
struct ScalarTraits<Fp> {
  static Fp parse(const std::string& s, const FieldSpec& f) { return Fp::parse(s, f.prime); }
  static Fp from_int(long v, const FieldSpec& f) { return Fp(v, f.prime); }
  static FieldSpec spec_of(const Fp& x) { return {x.modulus()}; }
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace kb
