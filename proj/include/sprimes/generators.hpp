#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sprimes/witness.hpp"

namespace sprimes {

struct Generator {
  Factored factored;
  WeightedShape source;  // the (mu, d) it was built for
  bool from_h = false;   // built from a good-pair construction with a u-polynomial

  Poly expand() const { return factored.expand(); }
  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& [f, k] : factored.factors) d += f.total_degree() * k;
    return d;
  }
};

namespace detail {

using FactorMap = std::map<std::string, std::pair<Poly, unsigned>>;

inline FactorMap factor_map(const Factored& f) {
  FactorMap m;
  for (const auto& [p, k] : f.factors) merge_factor(m, p, k);
  return m;
}

inline std::vector<std::uint32_t> x_indices(const Factored& f) {
  std::set<std::uint32_t> s;
  for (const auto& [p, k] : f.factors)
    for (const Variable& v : p.variables()) s.insert(v.index);
  return {s.begin(), s.end()};
}

// Some relabeling of a's variables into b's makes a's factor multiset a sub-multiset of b's.
inline bool embeds(const Factored& a, const Factored& b) {
  auto va = x_indices(a), vb = x_indices(b);
  if (va.size() > vb.size()) return false;
  FactorMap mb = factor_map(b);
  FactorMap ma = factor_map(a);
  std::vector<std::pair<Poly, unsigned>> fa;
  for (const auto& [key, fk] : ma) fa.push_back(fk);
  std::map<Variable, Variable> sigma;
  std::vector<bool> used(vb.size(), false);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == va.size()) {
      for (const auto& [f, k] : fa) {
        auto it = mb.find(primitive(f.rename(sigma)).to_string());
        if (it == mb.end() || it->second.second < k) return false;
      }
      return true;
    }
    for (std::size_t j = 0; j < vb.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      sigma[xv(va[i])] = xv(vb[j]);
      // factors whose variables are all assigned must already match
      bool ok = true;
      for (const auto& [f, k] : fa) {
        bool ready = true;
        for (const Variable& v : f.variables())
          if (!sigma.count(v)) ready = false;
        if (!ready) continue;
        auto it = mb.find(primitive(f.rename(sigma)).to_string());
        if (it == mb.end() || it->second.second < k) {
          ok = false;
          break;
        }
      }
      if (ok && rec(i + 1)) return true;
      sigma.erase(xv(va[i]));
      used[j] = false;
    }
    return false;
  };
  return rec(0);
}

inline bool canonical_less(const std::pair<Generator, Poly>& a, const std::pair<Generator, Poly>& b) {
  auto wa = a.first.factored.window(), wb = b.first.factored.window();
  if (wa != wb) return wa < wb;
  auto da = a.second.total_degree(), db = b.second.total_degree();
  if (da != db) return da < db;
  return a.second.to_string() < b.second.to_string();
}

// Dedup by normalized polynomial equality, optionally dropping generators that
// contain a relabeled copy of another one as a factor; canonical order.
inline std::vector<Generator> normalize(std::vector<Generator> gens, bool prune) {
  if (prune) {
    std::stable_sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) {
      if (a.degree() != b.degree()) return a.degree() < b.degree();
      return x_indices(a.factored).size() < x_indices(b.factored).size();
    });
    std::vector<Generator> kept;
    for (auto& g : gens) {
      bool redundant = false;
      for (const auto& k : kept)
        if (embeds(k.factored, g.factored)) {
          redundant = true;
          break;
        }
      if (!redundant) kept.push_back(std::move(g));
    }
    gens = std::move(kept);
  }
  std::vector<std::pair<Generator, Poly>> ex;
  for (auto& g : gens) {
    Poly e = g.expand().sign_normalized();
    ex.push_back({std::move(g), std::move(e)});
  }
  std::sort(ex.begin(), ex.end(), canonical_less);
  std::vector<Generator> out;
  for (std::size_t i = 0; i < ex.size(); ++i)
    if (i == 0 || !(ex[i].second == ex[i - 1].second)) out.push_back(std::move(ex[i].first));
  return out;
}

}  // namespace detail

// 𝒢: one discriminant-type witness per element of Ψ0.
inline std::vector<Generator> gens_G(const WeightedShape& shape) {
  std::vector<Generator> out;
  for (const auto& mu : psi0(shape)) {
    Witness w = assemble_h(shape, mu, {});
    out.push_back({w.factored(), mu, false});
  }
  return detail::normalize(std::move(out), true);
}

struct GensHOptions {
  std::size_t max_assignments = 4096;  // cap on |Σ| per target shape
};

// ℋ: witnesses for every target below the shape whose Θ is proper, over all
// choices of u from the eliminated generating sets.
inline std::vector<Generator> gens_H(const SPrimeData& p, const Budget& budget = {}, const GensHOptions& opt = {}) {
  std::vector<Generator> out;
  if (closure_ideal(p, budget).is_zero_ideal()) return out;
  const std::uint32_t n = 1 + p.shape.finite_sum();
  for (const auto& mu : shapes_below(p.shape, n)) {
    ThetaResult th = theta(p, mu, budget);
    if (th.ideal.is_zero_ideal()) continue;
    const auto& comps = th.components;
    std::vector<std::vector<Poly>> choices;
    std::size_t total = 1;
    for (const auto& c : comps) {
      choices.push_back(d_generators(p, c.pair, budget));
      total *= choices.back().size();
      if (total > opt.max_assignments)
        throw BudgetExceeded("too many u-assignments for " + mu.to_string());
    }
    if (total == 0) continue;
    std::vector<std::size_t> pick(comps.size(), 0);
    for (;;) {
      std::vector<std::pair<GoodPair, Poly>> u;
      for (std::size_t k = 0; k < comps.size(); ++k) u.push_back({comps[k].pair, choices[k][pick[k]]});
      Witness w = assemble_h(p.shape, mu, u);
      out.push_back({w.factored(), mu, true});
      std::size_t k = 0;
      while (k < comps.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
      if (k == comps.size()) break;
    }
  }
  return detail::normalize(std::move(out), true);
}

inline std::vector<Generator> full_gens(const SPrimeData& p, const Budget& budget = {},
                                        const GensHOptions& opt = {}) {
  std::vector<Generator> all = gens_G(p.shape);
  for (auto& g : gens_H(p, budget, opt)) all.push_back(std::move(g));
  return detail::normalize(std::move(all), true);
}

struct GensReport {
  std::vector<std::pair<Generator, bool>> entries;
  bool all_members() const {
    for (const auto& [g, ok] : entries)
      if (!ok) return false;
    return true;
  }
};

inline GensReport verify_gens(const SPrimeData& p, const Budget& budget = {}) {
  GensReport r;
  MembershipOracle oracle(p, budget);
  for (auto& g : full_gens(p, budget)) {
    bool ok = oracle.member(g.factored);
    r.entries.push_back({std::move(g), ok});
  }
  return r;
}

}  // namespace sprimes
