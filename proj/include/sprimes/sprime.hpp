#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "sprimes/combinat.hpp"
#include "sprimes/groebner.hpp"

namespace sprimes {

// Data (lambda, e; Z) of the S-prime P(lambda, e; Z) with Z = V(z_ideal) ∩ U^r.
struct SPrimeData {
  WeightedShape shape;
  Ideal<Rational> z_ideal;
  bool assume_irreducible = true;
  std::vector<std::string> warnings;

  std::uint32_t rank() const { return static_cast<std::uint32_t>(shape.size()); }
};

// Saturation of z_ideal at the difference product: the ideal of the closure of Z.
inline Ideal<Rational> closure_ideal(const SPrimeData& p, const Budget& budget = {}) {
  return saturate(p.z_ideal, difference_product(p.rank()), budget);
}

inline bool is_empty_locus(const SPrimeData& p, const Budget& budget = {}) {
  return closure_ideal(p, budget).is_unit(budget);
}

inline SPrimeData make_sprime(const std::vector<PartSize>& parts, const std::vector<std::uint32_t>& weights,
                              const std::vector<Poly>& gens, bool assume_irreducible = true,
                              const Budget& budget = {}) {
  CanonicalForm cf = canonicalize(parts, weights);
  const std::uint32_t r = static_cast<std::uint32_t>(parts.size());
  std::map<Variable, Variable> relabel;
  for (std::uint32_t a = 0; a < r; ++a) relabel[tv(a + 1)] = tv(static_cast<std::uint32_t>(cf.old_to_new[a]) + 1);
  std::vector<Poly> moved;
  for (const Poly& g : gens) {
    for (const Variable& v : g.variables())
      if (v.family != Family::t || v.index > r)
        throw std::invalid_argument("Z-ideal generator uses " + v.name() + ", expected t1..t" + std::to_string(r));
    moved.push_back(g.rename(relabel));
  }
  SPrimeData p{cf.shape, Ideal<Rational>(moved, t_variables(r)), assume_irreducible, {}};
  if (is_empty_locus(p, budget)) p.warnings.push_back("Z does not meet the locus of distinct coordinates");
  if (!assume_irreducible) p.warnings.push_back("Z is not asserted irreducible");
  return p;
}

inline SPrimeData make_sprime(const WeightedShape& shape, const std::vector<Poly>& gens,
                              bool assume_irreducible = true, const Budget& budget = {}) {
  return make_sprime(shape.parts, shape.weights, gens, assume_irreducible, budget);
}

inline SPrimeData radical_of(const SPrimeData& p) {
  SPrimeData q = p;
  for (auto& w : q.shape.weights) w = 1;
  return q;
}

// Map rho from the window [m] to part indices (0-based).
using VarAssignment = std::vector<std::size_t>;

inline bool valid_assignment(const VarAssignment& rho, const WeightedShape& shape) {
  std::vector<std::uint32_t> count(shape.size(), 0);
  for (std::size_t a : rho) {
    if (a >= shape.size()) return false;
    ++count[a];
  }
  for (std::size_t a = 0; a < shape.size(); ++a)
    if (!shape.is_inf(a) && count[a] > shape.parts[a].value()) return false;
  return true;
}

// Every valid assignment on [m], in lexicographic order; empty fibers allowed.
inline void for_each_assignment(std::size_t m, const WeightedShape& shape,
                                const std::function<bool(const VarAssignment&)>& fn) {
  VarAssignment rho(m, 0);
  std::vector<std::uint32_t> count(shape.size(), 0);
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == m) {
      if (!fn(rho)) stop = true;
      return;
    }
    for (std::size_t a = 0; a < shape.size() && !stop; ++a) {
      if (!shape.is_inf(a) && count[a] >= shape.parts[a].value()) continue;
      rho[i] = a;
      ++count[a];
      rec(i + 1);
      --count[a];
    }
  };
  rec(0);
}

inline Ideal<Rational> q_ideal_truncated(const SPrimeData& p, const VarAssignment& rho) {
  if (!valid_assignment(rho, p.shape)) throw std::invalid_argument("assignment violates a finite part size");
  std::vector<Poly> gens = p.z_ideal.generators();
  std::vector<Variable> amb = t_variables(p.rank());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    Variable e = ev(static_cast<std::uint32_t>(i + 1));
    amb.push_back(e);
    gens.push_back(var(e).pow(p.shape.weights[rho[i]]));
  }
  return Ideal<Rational>(gens, amb);
}

// A product of polynomial powers, kept unexpanded.
struct Factored {
  std::vector<std::pair<Poly, unsigned>> factors;

  Poly expand() const {
    Poly r(1);
    for (const auto& [f, k] : factors) r = r * f.pow(k);
    return r;
  }
  std::uint32_t window() const {
    std::uint32_t m = 0;
    for (const auto& [f, k] : factors) m = std::max(m, f.max_index(Family::x));
    return m;
  }
};

namespace detail {

// Truncated expansion: epsilon exponent vector -> coefficient in the t-variables.
using EpsKey = std::vector<std::uint8_t>;
using Series = std::map<EpsKey, Poly>;

inline mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// iota(f) under xi_i -> t_{rho(i)} + eps_i, truncated at eps_i^{bound[i]}.
inline Series substitute_truncated(const Poly& f, const VarAssignment& rho, const std::vector<std::uint32_t>& bound) {
  const std::size_t m = rho.size();
  Series out;
  for (const auto& [mono, c] : f.terms()) {
    // per variable: list of (k, binomial, remaining exponent)
    std::vector<std::pair<std::size_t, std::uint32_t>> vars;  // (window index, exponent)
    for (const auto& [v, e] : mono.factors()) vars.push_back({v.index - 1, e});
    EpsKey key(m, 0);
    std::function<void(std::size_t, Rational, std::vector<Monomial::Factor>&)> rec =
        [&](std::size_t pos, Rational coef, std::vector<Monomial::Factor>& tf) {
          if (pos == vars.size()) {
            std::map<Variable, std::uint32_t> acc;
            for (const auto& [v, e] : tf) acc[v] += e;
            std::vector<Monomial::Factor> sorted(acc.begin(), acc.end());
            out[key].add_term(Monomial::from_sorted(std::move(sorted)), coef);
            return;
          }
          auto [i, a] = vars[pos];
          std::uint32_t kmax = std::min<std::uint32_t>(a, bound[i] - 1);
          for (std::uint32_t k = 0; k <= kmax; ++k) {
            key[i] = static_cast<std::uint8_t>(k);
            bool pushed = a - k > 0;
            if (pushed) tf.push_back({tv(static_cast<std::uint32_t>(rho[i] + 1)), a - k});
            rec(pos + 1, coef * Rational::from_integer(binomial(a, k)), tf);
            if (pushed) tf.pop_back();
          }
          key[i] = 0;
        };
    std::vector<Monomial::Factor> tf;
    rec(0, c, tf);
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

inline Series multiply_truncated(const Series& a, const Series& b, const std::vector<std::uint32_t>& bound) {
  Series out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      EpsKey k(ka.size());
      bool ok = true;
      for (std::size_t i = 0; i < k.size() && ok; ++i) {
        unsigned s = unsigned{ka[i]} + kb[i];
        if (s >= bound[i]) ok = false;
        k[i] = static_cast<std::uint8_t>(s);
      }
      if (ok) out[k] += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

inline void require_xi_only(const Poly& f) {
  for (const Variable& v : f.variables())
    if (v.family != Family::x) throw std::invalid_argument("membership expects a polynomial in x-variables, got " + v.name());
}

}  // namespace detail

// Decides membership in P(lambda, e; Z); caches the closure ideal and coefficient verdicts.
class MembershipOracle {
 public:
  explicit MembershipOracle(const SPrimeData& p, const Budget& budget = {})
      : p_(p), budget_(budget), closure_(closure_ideal(p, budget)) {
    zero_ = closure_.is_zero_ideal();
    unit_ = closure_.is_unit(budget_);
  }

  const SPrimeData& data() const { return p_; }

  bool member(const Poly& f) {
    detail::require_xi_only(f);
    if (f.is_zero() || unit_) return true;
    const std::size_t m = f.max_index(Family::x);
    bool ok = true;
    for_each_assignment(m, p_.shape, [&](const VarAssignment& rho) {
      ok = coefficients_vanish(detail::substitute_truncated(f, rho, bounds(rho)));
      return ok;
    });
    return ok;
  }

  bool member(const Factored& h) {
    for (const auto& [f, k] : h.factors) detail::require_xi_only(f);
    if (unit_) return true;
    for (const auto& [f, k] : h.factors)
      if (f.is_zero() && k > 0) return true;
    const std::size_t m = h.window();
    bool ok = true;
    for_each_assignment(m, p_.shape, [&](const VarAssignment& rho) {
      auto bd = bounds(rho);
      detail::Series acc{{detail::EpsKey(m, 0), Poly(1)}};
      for (const auto& [f, k] : h.factors) {
        detail::Series s = detail::substitute_truncated(f, rho, bd);
        for (unsigned j = 0; j < k && !acc.empty(); ++j) acc = detail::multiply_truncated(acc, s, bd);
        if (acc.empty()) break;
      }
      ok = coefficients_vanish(acc);
      return ok;
    });
    return ok;
  }

 private:
  SPrimeData p_;
  Budget budget_;
  Ideal<Rational> closure_;
  bool zero_ = false, unit_ = false;
  std::map<std::string, bool> verdicts_;

  std::vector<std::uint32_t> bounds(const VarAssignment& rho) const {
    std::vector<std::uint32_t> b(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) b[i] = p_.shape.weights[rho[i]];
    return b;
  }

  bool coefficients_vanish(const detail::Series& s) {
    for (const auto& [k, c] : s) {
      if (c.is_zero()) continue;
      if (zero_) return false;
      Poly key = primitive(c);
      std::string text = key.to_string();
      auto it = verdicts_.find(text);
      bool v;
      if (it != verdicts_.end()) {
        v = it->second;
      } else {
        v = radical_member(key, closure_, budget_);
        verdicts_.emplace(text, v);
      }
      if (!v) return false;
    }
    return true;
  }
};

inline bool member(const Poly& f, const SPrimeData& p, const Budget& budget = {}) {
  return MembershipOracle(p, budget).member(f);
}

inline bool member(const Factored& h, const SPrimeData& p, const Budget& budget = {}) {
  return MembershipOracle(p, budget).member(h);
}

}  // namespace sprimes
