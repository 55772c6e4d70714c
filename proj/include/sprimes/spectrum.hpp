#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sprimes/theta.hpp"

namespace sprimes {

// An S-radical ideal: the intersection of an antichain of S-primes, or the zero ideal.
struct RadicalSIdeal {
  std::vector<SPrimeData> primes;
  bool includes_zero = false;

  bool is_unit() const { return !includes_zero && primes.empty(); }
};

inline RadicalSIdeal zero_radical() { return {{}, true}; }

// Keep the minimal primes under inclusion; equal primes collapse to the first.
inline RadicalSIdeal make_radical(const std::vector<SPrimeData>& ps, const Budget& budget = {}) {
  const std::size_t k = ps.size();
  std::vector<std::vector<char>> c(k, std::vector<char>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) c[i][j] = i == j || contains(ps[i], ps[j], budget);
  RadicalSIdeal out;
  for (std::size_t i = 0; i < k; ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < k && !drop; ++j)
      if (j != i && c[j][i] && (!c[i][j] || j < i)) drop = true;
    if (!drop) out.primes.push_back(ps[i]);
  }
  return out;
}

inline RadicalSIdeal intersect_radical(const RadicalSIdeal& a, const RadicalSIdeal& b, const Budget& budget = {}) {
  if (a.includes_zero || b.includes_zero) return zero_radical();
  std::vector<SPrimeData> all = a.primes;
  all.insert(all.end(), b.primes.begin(), b.primes.end());
  return make_radical(all, budget);
}

// a ⊆ b
inline bool contains_radical(const RadicalSIdeal& a, const RadicalSIdeal& b, const Budget& budget = {}) {
  if (a.includes_zero) return true;
  if (b.includes_zero) return false;
  for (const auto& q : b.primes) {
    bool found = false;
    for (const auto& p : a.primes)
      if (contains(p, q, budget)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

inline bool is_antichain(const RadicalSIdeal& r, const Budget& budget = {}) {
  if (r.includes_zero) return r.primes.empty();
  for (std::size_t i = 0; i < r.primes.size(); ++i)
    for (std::size_t j = 0; j < r.primes.size(); ++j)
      if (i != j && contains(r.primes[i], r.primes[j], budget)) return false;
  return true;
}

// Θ ideal for a target given in an arbitrary part order, expressed in that order.
inline Ideal<Rational> theta_in_labeling(const SPrimeData& p, const std::vector<PartSize>& parts,
                                         const std::vector<std::uint32_t>& weights, const Budget& budget = {}) {
  CanonicalForm cf = canonicalize(parts, weights);
  Ideal<Rational> th = theta(p, cf.shape, budget).ideal;
  std::map<Variable, Variable> back;
  for (std::size_t a = 0; a < parts.size(); ++a)
    back[tv(static_cast<std::uint32_t>(cf.old_to_new[a] + 1))] = tv(static_cast<std::uint32_t>(a + 1));
  std::vector<Poly> gens;
  for (const Poly& g : th.generators()) gens.push_back(g.rename(back));
  return Ideal<Rational>(gens, t_variables(static_cast<std::uint32_t>(parts.size())));
}

inline std::vector<std::pair<WeightedShape, Ideal<Rational>>> theta_slice(const SPrimeData& p,
                                                                          const std::vector<WeightedShape>& targets,
                                                                          const Budget& budget = {}) {
  std::vector<std::pair<WeightedShape, Ideal<Rational>>> out;
  for (const auto& t : targets) out.push_back({t, theta(p, t, budget).ideal});
  return out;
}

struct Stabilization {
  std::uint32_t n = 0;
  std::vector<Ideal<Rational>> slices;  // slices for 1..n+1, in the family's labeling
};

// Family mu(n): the template with part `slot` (infinite, weight 1) replaced by n.
// Returns the least n whose slice agrees with the slice at n+1.
inline Stabilization d3_stabilize(const SPrimeData& p, const WeightedShape& family, std::size_t slot,
                                  std::uint32_t cap = 20, const Budget& budget = {}) {
  if (slot >= family.size() || !family.is_inf(slot) || family.weights[slot] != 1)
    throw std::invalid_argument("the growing slot must be an infinite part of weight 1");
  auto at = [&](std::uint32_t n) {
    auto parts = family.parts;
    parts[slot] = PartSize(n);
    return theta_in_labeling(p, parts, family.weights, budget);
  };
  const Poly D = difference_product(static_cast<std::uint32_t>(family.size()));
  auto same = [&](const Ideal<Rational>& a, const Ideal<Rational>& b) {
    return variety_contained(a, b, D, budget) && variety_contained(b, a, D, budget);
  };
  Stabilization s;
  s.slices.push_back(at(1));
  for (std::uint32_t n = 1; n <= cap; ++n) {
    s.slices.push_back(at(n + 1));
    if (same(s.slices[n - 1], s.slices[n])) {
      s.n = n;
      return s;
    }
  }
  throw BudgetExceeded("slices did not stabilize up to n = " + std::to_string(cap));
}

}  // namespace sprimes
