#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sprimes/sprime.hpp"

namespace sprimes {

struct ThetaComponent {
  GoodPair pair;
  Ideal<Rational> ideal;
};

// Θ(Z) = V(ideal) ∩ U^K, the union of the per-pair components.
struct ThetaResult {
  WeightedShape target;
  Ideal<Rational> ideal;
  std::vector<ThetaComponent> components;

  bool is_empty(const Budget& budget = {}) const {
    return saturate(ideal, difference_product(static_cast<std::uint32_t>(target.size())), budget).is_unit(budget);
  }
};

// Eliminated ideal of the closure of Z, kept in the variables t_a for a in E.
inline Ideal<Rational> projected_closure(const SPrimeData& p, const std::vector<std::size_t>& E,
                                         const Budget& budget = {}) {
  Ideal<Rational> cl = closure_ideal(p, budget);
  std::vector<Variable> drop;
  std::size_t k = 0;
  for (std::uint32_t a = 0; a < p.rank(); ++a) {
    if (k < E.size() && E[k] == a)
      ++k;
    else
      drop.push_back(tv(a + 1));
  }
  return eliminate(cl, drop, budget);
}

inline Ideal<Rational> theta_pair(const SPrimeData& p, const WeightedShape& target, const GoodPair& gp,
                                  const Budget& budget = {}) {
  if (gp.phi.size() != p.rank() || !is_good(gp, target, p.shape))
    throw std::invalid_argument("not a good pair for " + target.to_string() + " and " + p.shape.to_string());
  Ideal<Rational> elim = projected_closure(p, gp.E(), budget);
  std::map<Variable, Poly> pull;
  for (std::size_t a : gp.E()) pull[tv(static_cast<std::uint32_t>(a + 1))] = var(tv(static_cast<std::uint32_t>(gp.target(a) + 1)));
  std::vector<Poly> gens;
  for (const Poly& g : elim.generators()) {
    Poly h = g.substitute(pull);
    if (!h.is_zero()) gens.push_back(h);
  }
  return Ideal<Rational>(gens, t_variables(static_cast<std::uint32_t>(target.size())));
}

inline ThetaResult theta(const SPrimeData& p, const WeightedShape& target, const Budget& budget = {}) {
  target.validate();
  const auto K = static_cast<std::uint32_t>(target.size());
  ThetaResult out{target, Ideal<Rational>::unit(t_variables(K)), {}};
  for (const GoodPair& gp : good_pairs(target, p.shape)) {
    Ideal<Rational> c = theta_pair(p, target, gp, budget);
    out.ideal = out.components.empty() ? c : ideal_intersect(out.ideal, c, budget);
    out.components.push_back({gp, std::move(c)});
  }
  return out;
}

struct Containment {
  bool holds = false;
  ThetaResult theta;
  std::optional<Poly> separator;  // generator of Θ not vanishing on Y
  std::vector<std::string> warnings;
};

// p ⊆ q decided by Y ⊆ Θ(Z).
inline Containment contains_certified(const SPrimeData& p, const SPrimeData& q, const Budget& budget = {}) {
  Containment c;
  c.theta = theta(p, q.shape, budget);
  Ideal<Rational> y = closure_ideal(q, budget);
  if (y.is_unit(budget)) {
    c.holds = true;
    c.warnings.push_back("Y is empty; containment holds vacuously");
    return c;
  }
  c.holds = true;
  for (const Poly& g : c.theta.ideal.generators())
    if (!radical_member(g, y, budget)) {
      c.holds = false;
      c.separator = g;
      break;
    }
  return c;
}

inline bool contains(const SPrimeData& p, const SPrimeData& q, const Budget& budget = {}) {
  return contains_certified(p, q, budget).holds;
}

inline bool equal(const SPrimeData& p, const SPrimeData& q, const Budget& budget = {}) {
  return contains(p, q, budget) && contains(q, p, budget);
}

}  // namespace sprimes
