#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sprimes/theta.hpp"

namespace sprimes {

// Index layout on the window [m] for a source shape and a target shape.
struct WitnessLayout {
  std::uint32_t n = 1;
  std::vector<std::uint32_t> tau;
  std::uint32_t m = 0;
  std::vector<std::vector<std::uint32_t>> blocks;                   // 1-based indices per target part
  std::vector<std::vector<std::vector<std::uint32_t>>> sub_blocks;  // infinite target parts only
  std::uint32_t N = 1;
  std::vector<std::size_t> block_of;  // window index (0-based) -> target part
};

inline WitnessLayout make_layout(const WeightedShape& source, const WeightedShape& target) {
  WitnessLayout L;
  L.n = 1 + source.finite_sum();
  L.N = 2 * source.max_weight() - 1;
  std::uint32_t next = 1;
  for (std::size_t b = 0; b < target.size(); ++b) {
    std::uint32_t t = target.is_inf(b) ? L.n * target.weights[b] : target.parts[b].value();
    L.tau.push_back(t);
    std::vector<std::uint32_t> blk;
    for (std::uint32_t k = 0; k < t; ++k) {
      blk.push_back(next++);
      L.block_of.push_back(b);
    }
    std::vector<std::vector<std::uint32_t>> subs;
    if (target.is_inf(b))
      for (std::uint32_t k = 0; k < L.n; ++k)
        subs.emplace_back(blk.begin() + k * target.weights[b], blk.begin() + (k + 1) * target.weights[b]);
    L.blocks.push_back(std::move(blk));
    L.sub_blocks.push_back(std::move(subs));
  }
  L.m = next - 1;
  return L;
}

// part_of[i] = source part carrying window index i+1.
struct CompatiblePartition {
  std::vector<std::size_t> part_of;

  std::vector<std::vector<std::uint32_t>> traces(std::size_t r) const {
    std::vector<std::vector<std::uint32_t>> v(r);
    for (std::size_t i = 0; i < part_of.size(); ++i) v[part_of[i]].push_back(static_cast<std::uint32_t>(i + 1));
    return v;
  }
};

inline std::vector<CompatiblePartition> compatible_partitions(const GoodPair& gp, const WitnessLayout& L,
                                                              const WeightedShape& source,
                                                              const WeightedShape& target) {
  const std::size_t r = source.size();
  std::vector<std::vector<std::size_t>> fiber(target.size());
  for (std::size_t a = 0; a < r; ++a)
    if (gp.in_E(a)) fiber[gp.target(a)].push_back(a);
  // sub-block of each window index (infinite blocks only)
  std::vector<std::size_t> sub(L.m, 0);
  for (std::size_t b = 0; b < target.size(); ++b)
    for (std::size_t k = 0; k < L.sub_blocks[b].size(); ++k)
      for (std::uint32_t i : L.sub_blocks[b][k]) sub[i - 1] = k;

  std::vector<CompatiblePartition> out;
  std::vector<std::size_t> part_of(L.m);
  std::vector<std::uint32_t> size(r, 0);
  std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> in_sub;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == L.m) {
      for (std::size_t a = 0; a < r; ++a)
        if (gp.in_E(a) && size[a] == 0) return;  // (C1)
      out.push_back({part_of});
      return;
    }
    const std::size_t b = L.block_of[i];
    for (std::size_t a : fiber[b]) {
      if (!source.is_inf(a) && size[a] >= source.parts[a].value()) continue;
      if (target.is_inf(b) && in_sub[{a, sub[i]}] >= source.weights[a]) continue;  // (C3)
      part_of[i] = a;
      ++size[a];
      if (target.is_inf(b)) ++in_sub[{a, sub[i]}];
      rec(i + 1);
      --size[a];
      if (target.is_inf(b)) --in_sub[{a, sub[i]}];
    }
  };
  rec(0);
  return out;
}

namespace detail {

inline void merge_factor(std::map<std::string, std::pair<Poly, unsigned>>& acc, const Poly& f, unsigned k) {
  if (k == 0 || f.is_constant()) return;
  Poly g = primitive(f);
  auto [it, fresh] = acc.try_emplace(g.to_string(), g, k);
  if (!fresh) it->second.second += k;
}

inline Factored to_factored(const std::map<std::string, std::pair<Poly, unsigned>>& acc) {
  Factored out;
  for (const auto& [key, fk] : acc) out.factors.push_back(fk);
  return out;
}

}  // namespace detail

// Distinct lifts of u over every compatible partition and every choice of one
// index from each trace; g_{E,phi} is their product raised to #E * e_max.
struct GFactor {
  std::vector<Poly> lifts;  // sorted by canonical text
  unsigned exponent = 0;

  friend bool operator==(const GFactor& a, const GFactor& b) {
    return a.exponent == b.exponent && a.lifts == b.lifts;
  }
};

inline GFactor g_factor(const GoodPair& gp, const Poly& u, const WitnessLayout& L, const WeightedShape& source,
                        const WeightedShape& target) {
  std::vector<std::size_t> used;
  for (const Variable& v : u.variables()) {
    if (v.family != Family::t || v.index == 0 || v.index > source.size() || !gp.in_E(v.index - 1))
      throw std::invalid_argument("u-polynomial must use only t-variables of E");
    used.push_back(v.index - 1);
  }
  std::map<std::string, Poly> lifts;
  for (const auto& cp : compatible_partitions(gp, L, source, target)) {
    auto tr = cp.traces(source.size());
    std::vector<std::size_t> pick(used.size(), 0);
    for (;;) {
      std::map<Variable, Poly> sub;
      for (std::size_t k = 0; k < used.size(); ++k)
        sub[tv(static_cast<std::uint32_t>(used[k] + 1))] = var(xv(tr[used[k]][pick[k]]));
      Poly l = primitive(u.substitute(sub));
      lifts.try_emplace(l.to_string(), l);
      std::size_t k = 0;
      while (k < used.size() && ++pick[k] == tr[used[k]].size()) pick[k++] = 0;
      if (k == used.size()) break;
    }
  }
  GFactor g;
  g.exponent = static_cast<unsigned>(gp.E().size()) * source.max_weight();
  for (auto& [key, l] : lifts) g.lifts.push_back(std::move(l));
  return g;
}

struct Witness {
  WitnessLayout layout;
  Factored h1, h2, h3;
  std::vector<std::pair<GoodPair, Poly>> u_choice;  // chosen u per good pair

  Factored factored() const {
    std::map<std::string, std::pair<Poly, unsigned>> acc;
    for (const Factored* part : {&h1, &h2, &h3})
      for (const auto& [f, k] : part->factors) detail::merge_factor(acc, f, k);
    return detail::to_factored(acc);
  }
  Poly expand() const { return factored().expand(); }
};

// h = h1 h2 h3 with the given u per good pair (all good pairs must be covered).
inline Witness assemble_h(const WeightedShape& source, const WeightedShape& target,
                          const std::vector<std::pair<GoodPair, Poly>>& u_choice) {
  Witness w;
  w.layout = make_layout(source, target);
  w.u_choice = u_choice;
  const WitnessLayout& L = w.layout;
  std::map<std::string, std::pair<Poly, unsigned>> a1, a2, a3;
  for (const auto& subs : L.sub_blocks)
    for (const auto& s : subs)
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) detail::merge_factor(a1, difference<Rational>(s[i], s[j]), 1);
  for (std::size_t b = 0; b < L.blocks.size(); ++b)
    for (std::size_t c = b + 1; c < L.blocks.size(); ++c)
      for (std::uint32_t i : L.blocks[b])
        for (std::uint32_t j : L.blocks[c]) detail::merge_factor(a2, difference<Rational>(i, j), L.N);
  std::vector<GFactor> distinct;
  for (const auto& [gp, u] : u_choice) {
    GFactor g = g_factor(gp, u, L, source, target);
    if (std::find(distinct.begin(), distinct.end(), g) == distinct.end()) distinct.push_back(std::move(g));
  }
  for (const auto& g : distinct)
    for (const Poly& l : g.lifts) detail::merge_factor(a3, l, g.exponent);
  w.h1 = detail::to_factored(a1);
  w.h2 = detail::to_factored(a2);
  w.h3 = detail::to_factored(a3);
  return w;
}

// Generators of the eliminated ideal of the closure of Z for the subset E.
inline std::vector<Poly> d_generators(const SPrimeData& p, const GoodPair& gp, const Budget& budget = {}) {
  return projected_closure(p, gp.E(), budget).generators();
}

class NoWitness : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Witness for p ⊄ P(q_shape; y) at a rational point y of U^K outside Θ(Z).
inline Witness build_h(const SPrimeData& p, const WeightedShape& q_shape,
                       const std::optional<std::vector<Rational>>& y, const Budget& budget = {}) {
  auto pairs = good_pairs(q_shape, p.shape);
  std::vector<std::pair<GoodPair, Poly>> choice;
  if (!pairs.empty()) {
    if (!y) throw std::invalid_argument("good pairs exist; a point outside theta is required");
    if (y->size() != q_shape.size()) throw std::invalid_argument("point has the wrong number of coordinates");
    for (std::size_t a = 0; a < y->size(); ++a)
      for (std::size_t b = a + 1; b < y->size(); ++b)
        if (((*y)[a] - (*y)[b]).is_zero()) throw std::invalid_argument("point has repeated coordinates");
    for (const GoodPair& gp : pairs) {
      std::map<Variable, Poly> at;
      for (std::size_t a : gp.E()) at[tv(static_cast<std::uint32_t>(a + 1))] = Poly((*y)[gp.target(a)]);
      std::optional<Poly> u;
      for (const Poly& d : d_generators(p, gp, budget))
        if (!d.substitute(at).is_zero()) {
          u = d;
          break;
        }
      if (!u) throw NoWitness("the point lies in theta; containment holds there (pair " + gp.to_string() + ")");
      choice.push_back({gp, *u});
    }
  }
  return assemble_h(p.shape, q_shape, choice);
}

// Witness for p ⊄ q at the generic point of Y: each u is chosen so that its
// pullback does not vanish identically on Y.
inline Witness build_h(const SPrimeData& p, const SPrimeData& q, const Budget& budget = {}) {
  auto pairs = good_pairs(q.shape, p.shape);
  std::vector<std::pair<GoodPair, Poly>> choice;
  if (!pairs.empty()) {
    Ideal<Rational> y = closure_ideal(q, budget);
    for (const GoodPair& gp : pairs) {
      std::map<Variable, Poly> pull;
      for (std::size_t a : gp.E())
        pull[tv(static_cast<std::uint32_t>(a + 1))] = var(tv(static_cast<std::uint32_t>(gp.target(a) + 1)));
      std::optional<Poly> u;
      for (const Poly& d : d_generators(p, gp, budget))
        if (!radical_member(d.substitute(pull), y, budget)) {
          u = d;
          break;
        }
      if (!u) throw NoWitness("Y lies in the component of theta for pair " + gp.to_string());
      choice.push_back({gp, *u});
    }
  }
  return assemble_h(p.shape, q.shape, choice);
}

inline std::pair<bool, bool> certify(const Factored& h, const SPrimeData& p, const SPrimeData& q,
                                     const Budget& budget = {}) {
  return {member(h, p, budget), member(h, q, budget)};
}

inline std::pair<bool, bool> certify(const Poly& h, const SPrimeData& p, const SPrimeData& q,
                                     const Budget& budget = {}) {
  return {member(h, p, budget), member(h, q, budget)};
}

}  // namespace sprimes
