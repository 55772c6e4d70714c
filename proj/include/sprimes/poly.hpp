#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sprimes/field.hpp"

namespace sprimes {

// x models the ring variables xi_i, t the configuration coordinates t_alpha,
// e the nilpotent directions epsilon_i; z is reserved for auxiliary variables
// introduced by saturation and intersection and is never parsed.
enum class Family : std::uint8_t { x = 0, t = 1, e = 2, z = 3 };

inline char family_char(Family f) {
  switch (f) {
    case Family::x: return 'x';
    case Family::t: return 't';
    case Family::e: return 'e';
    case Family::z: return 'z';
  }
  return '?';
}

// Variables are ranked by (family, index). A lower rank is a larger variable
// in every monomial order, so x1 > x2 > ... > t1 > t2 > ... > e1 > ... > z1.
struct Variable {
  Family family = Family::x;
  std::uint32_t index = 1;

  friend auto operator<=>(const Variable&, const Variable&) = default;
  std::string name() const { return std::string(1, family_char(family)) + std::to_string(index); }
};

inline Variable xv(std::uint32_t i) { return {Family::x, i}; }
inline Variable tv(std::uint32_t i) { return {Family::t, i}; }
inline Variable ev(std::uint32_t i) { return {Family::e, i}; }
inline Variable zv(std::uint32_t i) { return {Family::z, i}; }

class Monomial {
 public:
  using Factor = std::pair<Variable, std::uint32_t>;

  Monomial() = default;
  static Monomial of(Variable v, std::uint32_t e = 1) {
    Monomial m;
    if (e) {
      m.f_.push_back({v, e});
      m.deg_ = e;
    }
    return m;
  }
  // Factors must be sorted by variable with positive exponents.
  static Monomial from_sorted(std::vector<Factor> f) {
    Monomial m;
    for (auto& [v, e] : f) m.deg_ += e;
    m.f_ = std::move(f);
    return m;
  }

  std::uint32_t degree() const { return deg_; }
  bool is_one() const { return f_.empty(); }
  const std::vector<Factor>& factors() const { return f_; }

  std::uint32_t exponent(Variable v) const {
    auto it = std::lower_bound(f_.begin(), f_.end(), v, [](const Factor& a, Variable b) { return a.first < b; });
    return (it != f_.end() && it->first == v) ? it->second : 0;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.f_.reserve(a.f_.size() + b.f_.size());
    std::size_t i = 0, j = 0;
    while (i < a.f_.size() || j < b.f_.size()) {
      if (j == b.f_.size() || (i < a.f_.size() && a.f_[i].first < b.f_[j].first)) {
        r.f_.push_back(a.f_[i++]);
      } else if (i == a.f_.size() || b.f_[j].first < a.f_[i].first) {
        r.f_.push_back(b.f_[j++]);
      } else {
        r.f_.push_back({a.f_[i].first, a.f_[i].second + b.f_[j].second});
        ++i;
        ++j;
      }
    }
    r.deg_ = a.deg_ + b.deg_;
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }

  std::string to_string() const {
    if (f_.empty()) return "1";
    std::string s;
    for (std::size_t k = 0; k < f_.size(); ++k) {
      if (k) s += '*';
      s += f_[k].first.name();
      if (f_[k].second > 1) s += '^' + std::to_string(f_[k].second);
    }
    return s;
  }

 private:
  std::vector<Factor> f_;
  std::uint32_t deg_ = 0;
};

// Strict "a > b" in graded reverse lexicographic order over the global rank.
struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(fa.size()) - 1;
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(fb.size()) - 1;
    while (i >= 0 && j >= 0) {
      const auto& [va, ea] = fa[static_cast<std::size_t>(i)];
      const auto& [vb, eb] = fb[static_cast<std::size_t>(j)];
      if (va == vb) {
        if (ea != eb) return ea < eb;
        --i;
        --j;
      } else if (vb < va) {
        // a carries the smallest variable where they differ
        return false;
      } else {
        return true;
      }
    }
    return false;
  }
};

template <class F>
class Polynomial {
 public:
  using Field = F;
  using TermMap = std::map<Monomial, F, GrevlexGreater>;

  Polynomial() = default;
  Polynomial(long c) {
    if (c != 0) terms_.emplace(Monomial(), F(c));
  }
  Polynomial(const F& c) {
    if (!c.is_zero()) terms_.emplace(Monomial(), c);
  }
  static Polynomial variable(Variable v) { return term(Monomial::of(v), F(1)); }
  static Polynomial term(const Monomial& m, const F& c) {
    Polynomial p;
    if (!c.is_zero()) p.terms_.emplace(m, c);
    return p;
  }

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }
  F constant_term() const {
    auto it = terms_.find(Monomial());
    return it == terms_.end() ? F(0) : it->second;
  }
  // Leading data in the canonical grevlex order; undefined on zero.
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const F& leading_coefficient() const { return terms_.begin()->second; }

  std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  std::set<Variable> variables() const {
    std::set<Variable> vs;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m.factors()) vs.insert(v);
    return vs;
  }

  std::uint32_t max_index(Family fam) const {
    std::uint32_t k = 0;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m.factors())
        if (v.family == fam) k = std::max(k, v.index);
    return k;
  }

  void add_term(const Monomial& m, const F& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  friend Polynomial operator*(const F& s, const Polynomial& a) {
    Polynomial r;
    if (s.is_zero()) return r;
    for (const auto& [m, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), m, s * c);
    return r;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Polynomial pow(unsigned k) const {
    Polynomial acc(1), base = *this;
    while (k) {
      if (k & 1u) acc = acc * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return acc;
  }

  // Simultaneous substitution; unmapped variables are kept.
  Polynomial substitute(const std::map<Variable, Polynomial>& images) const {
    std::map<std::pair<Variable, std::uint32_t>, Polynomial> powers;
    auto power_of = [&](Variable v, std::uint32_t e) -> const Polynomial& {
      auto key = std::make_pair(v, e);
      auto it = powers.find(key);
      if (it != powers.end()) return it->second;
      return powers.emplace(key, images.at(v).pow(e)).first->second;
    };
    Polynomial r;
    for (const auto& [m, c] : terms_) {
      std::vector<Monomial::Factor> kept;
      Polynomial acc(c);
      for (const auto& [v, e] : m.factors()) {
        if (images.count(v))
          acc = acc * power_of(v, e);
        else
          kept.push_back({v, e});
      }
      if (!kept.empty()) {
        Polynomial mono = term(Monomial::from_sorted(std::move(kept)), F(1));
        acc = acc * mono;
      }
      r += acc;
    }
    return r;
  }

  Polynomial rename(const std::map<Variable, Variable>& m) const {
    std::map<Variable, Polynomial> img;
    for (const auto& [a, b] : m) img.emplace(a, variable(b));
    return substitute(img);
  }

  Polynomial derivative(Variable v) const {
    Polynomial r;
    for (const auto& [m, c] : terms_) {
      std::uint32_t e = m.exponent(v);
      if (!e) continue;
      std::vector<Monomial::Factor> f;
      for (const auto& fac : m.factors()) {
        if (fac.first == v) {
          if (fac.second > 1) f.push_back({v, fac.second - 1});
        } else {
          f.push_back(fac);
        }
      }
      r.add_term(Monomial::from_sorted(std::move(f)), c * F(static_cast<long>(e)));
    }
    return r;
  }

  // Multiply by a scalar so that the leading coefficient is positive (char 0)
  // and, for prime fields, equal to one.
  Polynomial sign_normalized() const {
    if (is_zero()) return *this;
    if constexpr (F::characteristic == 0) {
      return leading_coefficient().sign() < 0 ? -*this : *this;
    } else {
      return F(1) / leading_coefficient() * *this;
    }
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      bool neg = c.sign() < 0;
      F a = neg ? -c : c;
      if (first) {
        if (neg) s += '-';
      } else {
        s += neg ? " - " : " + ";
      }
      first = false;
      if (m.is_one()) {
        s += a.to_string();
      } else if (a.is_one()) {
        s += m.to_string();
      } else {
        s += a.to_string() + "*" + m.to_string();
      }
    }
    return s;
  }

 private:
  TermMap terms_;
};

using Poly = Polynomial<Rational>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

template <class F>
class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Polynomial<F> run() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty expression", pos_);
    Polynomial<F> p = expr();
    skip();
    if (pos_ != s_.size()) {
      if (starts_operand()) throw ParseError("implicit multiplication is not allowed", pos_);
      throw ParseError(std::string("unexpected character '") + s_[pos_] + "'", pos_);
    }
    return p;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool starts_operand() const {
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == '(' || std::isalnum(static_cast<unsigned char>(c));
  }

  Polynomial<F> expr() {
    Polynomial<F> acc = term();
    for (;;) {
      skip();
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        char op = s_[pos_++];
        Polynomial<F> rhs = term();
        if (op == '+')
          acc += rhs;
        else
          acc -= rhs;
      } else {
        return acc;
      }
    }
  }

  Polynomial<F> term() {
    Polynomial<F> acc = unary();
    for (;;) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        acc = acc * unary();
      } else {
        if (starts_operand()) throw ParseError("implicit multiplication is not allowed", pos_);
        return acc;
      }
    }
  }

  Polynomial<F> unary() {
    skip();
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      char op = s_[pos_++];
      Polynomial<F> v = unary();
      return op == '-' ? -v : v;
    }
    return power();
  }

  Polynomial<F> power() {
    Polynomial<F> base = atom();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip();
      std::size_t start = pos_;
      std::string digits = read_digits();
      if (digits.empty()) throw ParseError("expected exponent", start);
      if (digits.size() > 6) throw ParseError("exponent too large", start);
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Polynomial<F> atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial<F> inner = expr();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = read_digits();
      std::string den;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::size_t at = pos_;
        den = read_digits();
        if (den.empty()) throw ParseError("expected denominator", at);
        if (mpz_class(den, 10) == 0) throw ParseError("zero denominator", at);
      }
      if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("implicit multiplication is not allowed", pos_);
      try {
        return Polynomial<F>(F::from_literal(num, den));
      } catch (const std::domain_error& err) {
        throw ParseError(err.what(), pos_);
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      std::size_t end = pos_;
      while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
      std::string_view name = s_.substr(start, end - start);
      Family fam;
      if (name == "x")
        fam = Family::x;
      else if (name == "t")
        fam = Family::t;
      else if (name == "e")
        fam = Family::e;
      else
        throw ParseError("unknown variable family '" + std::string(name) + "'", start);
      pos_ = end;
      std::string digits = read_digits();
      if (digits.empty()) throw ParseError("variable needs an index", pos_);
      if (digits.size() > 6) throw ParseError("variable index too large", start);
      unsigned long k = std::stoul(digits);
      if (k == 0) throw ParseError("variable indices start at 1", start);
      if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("implicit multiplication is not allowed", pos_);
      return Polynomial<F>::variable({fam, static_cast<std::uint32_t>(k)});
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }
};

}  // namespace detail

template <class F = Rational>
Polynomial<F> parse(std::string_view text) {
  return detail::Parser<F>(text).run();
}

template <class F = Rational>
Polynomial<F> var(Variable v) {
  return Polynomial<F>::variable(v);
}

// prod_{i<j in the given order} (v_i - v_j)
template <class F = Rational>
Polynomial<F> discriminant(const std::vector<std::uint32_t>& indices, Family fam = Family::x) {
  if (indices.empty()) throw std::invalid_argument("discriminant of an empty index set");
  Polynomial<F> r(1);
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = i + 1; j < indices.size(); ++j)
      r = r * (Polynomial<F>::variable({fam, indices[i]}) - Polynomial<F>::variable({fam, indices[j]}));
  return r;
}

template <class F = Rational>
Polynomial<F> difference(std::uint32_t i, std::uint32_t j, Family fam = Family::x) {
  return Polynomial<F>::variable({fam, i}) - Polynomial<F>::variable({fam, j});
}

inline std::vector<std::uint32_t> index_range(std::uint32_t first, std::uint32_t last) {
  std::vector<std::uint32_t> v;
  for (std::uint32_t i = first; i <= last; ++i) v.push_back(i);
  return v;
}

}  // namespace sprimes
