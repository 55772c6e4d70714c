#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sprimes {

// Exact rational number in lowest terms with positive denominator.
class Rational {
 public:
  static constexpr unsigned characteristic = 0;

  Rational() = default;
  Rational(long v) : q_(v) {}
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  static Rational from_integer(const mpz_class& z) { return Rational(mpq_class(z)); }

  // Literal "num" or "num/den" with decimal digits.
  static Rational from_literal(const std::string& num, const std::string& den) {
    mpz_class n(num, 10);
    mpz_class d(den.empty() ? std::string("1") : den, 10);
    if (d == 0) throw std::domain_error("zero denominator in literal");
    return Rational(mpq_class(n, d));
  }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  int sign() const { return sgn(q_); }
  const mpq_class& value() const { return q_; }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

  std::string to_string() const { return q_.get_str(10); }

 private:
  mpq_class q_;
};

// Residue class modulo the prime P, stored in [0, P).
template <std::uint32_t P>
class ModP {
 public:
  static constexpr unsigned characteristic = P;

  ModP() = default;
  ModP(long v) {
    long r = v % static_cast<long>(P);
    v_ = static_cast<std::uint32_t>(r < 0 ? r + static_cast<long>(P) : r);
  }

  static ModP from_integer(const mpz_class& z) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), P);
    return ModP(static_cast<long>(r.get_ui()));
  }

  static ModP from_literal(const std::string& num, const std::string& den) {
    ModP n = from_integer(mpz_class(num, 10));
    ModP d = from_integer(mpz_class(den.empty() ? std::string("1") : den, 10));
    if (d.is_zero()) throw std::domain_error("denominator vanishes modulo the characteristic");
    return n / d;
  }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  int sign() const { return v_ == 0 ? 0 : 1; }
  std::uint32_t value() const { return v_; }

  ModP operator-() const { return ModP(v_ == 0 ? 0 : static_cast<long>(P - v_)); }
  ModP& operator+=(const ModP& o) { v_ = static_cast<std::uint32_t>((std::uint64_t{v_} + o.v_) % P); return *this; }
  ModP& operator-=(const ModP& o) { v_ = static_cast<std::uint32_t>((std::uint64_t{v_} + P - o.v_) % P); return *this; }
  ModP& operator*=(const ModP& o) { v_ = static_cast<std::uint32_t>((std::uint64_t{v_} * o.v_) % P); return *this; }
  ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }
  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_; }

  ModP inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero");
    // Fermat: a^(P-2)
    std::uint64_t base = v_, acc = 1, e = P - 2;
    while (e) {
      if (e & 1) acc = acc * base % P;
      base = base * base % P;
      e >>= 1;
    }
    ModP r;
    r.v_ = static_cast<std::uint32_t>(acc);
    return r;
  }

  std::string to_string() const { return std::to_string(v_); }

 private:
  std::uint32_t v_ = 0;
};

}  // namespace sprimes
