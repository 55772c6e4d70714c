#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sprimes/poly.hpp"

namespace sprimes {

struct Budget {
  std::uint64_t max_reductions = 2'000'000;  // S-pair reductions per basis computation
  std::uint32_t max_degree = 120;             // degree of any basis element
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MonomialOrder {
  enum class Kind { lex, grevlex, block };

  Kind kind = Kind::grevlex;
  std::vector<Variable> variables;  // first entry is the largest variable
  std::size_t block_size = 0;       // block: the first block_size variables form the eliminated block

  static MonomialOrder grevlex(std::vector<Variable> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return {Kind::grevlex, std::move(vars), 0};
  }
  static MonomialOrder lex(std::vector<Variable> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return {Kind::lex, std::move(vars), 0};
  }
  // Block order with drop > keep, grevlex inside each block.
  static MonomialOrder elimination(std::vector<Variable> drop, std::vector<Variable> keep) {
    std::sort(drop.begin(), drop.end());
    drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    std::vector<Variable> all = drop;
    all.insert(all.end(), keep.begin(), keep.end());
    return {Kind::block, std::move(all), drop.size()};
  }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

namespace detail {

constexpr std::size_t kMaxVars = 32;

struct DMono {
  std::array<std::uint16_t, kMaxVars> e{};
  std::uint32_t deg = 0;

  friend bool operator==(const DMono& a, const DMono& b) { return a.deg == b.deg && a.e == b.e; }
};

inline bool divides(const DMono& a, const DMono& b, std::size_t n) {
  if (a.deg > b.deg) return false;
  for (std::size_t k = 0; k < n; ++k)
    if (a.e[k] > b.e[k]) return false;
  return true;
}

inline DMono lcm(const DMono& a, const DMono& b, std::size_t n) {
  DMono r;
  for (std::size_t k = 0; k < n; ++k) {
    r.e[k] = std::max(a.e[k], b.e[k]);
    r.deg += r.e[k];
  }
  return r;
}

inline DMono quotient(const DMono& a, const DMono& b, std::size_t n) {
  DMono r;
  for (std::size_t k = 0; k < n; ++k) r.e[k] = static_cast<std::uint16_t>(a.e[k] - b.e[k]);
  r.deg = a.deg - b.deg;
  return r;
}

inline DMono product(const DMono& a, const DMono& b, std::size_t n) {
  DMono r;
  for (std::size_t k = 0; k < n; ++k) {
    unsigned s = unsigned{a.e[k]} + b.e[k];
    if (s > 0xFFFFu) throw BudgetExceeded("exponent overflow");
    r.e[k] = static_cast<std::uint16_t>(s);
  }
  r.deg = a.deg + b.deg;
  return r;
}

inline bool coprime(const DMono& a, const DMono& b, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k)
    if (a.e[k] && b.e[k]) return false;
  return true;
}

struct DOrder {
  MonomialOrder::Kind kind;
  std::size_t n;
  std::size_t block;

  // grevlex tie-break on [lo, hi) after equal degree
  static int grevlex_tail(const DMono& a, const DMono& b, std::size_t lo, std::size_t hi) {
    for (std::size_t k = hi; k-- > lo;)
      if (a.e[k] != b.e[k]) return a.e[k] < b.e[k] ? 1 : -1;
    return 0;
  }

  // 1 if a > b, -1 if a < b, 0 if equal
  int cmp(const DMono& a, const DMono& b) const {
    switch (kind) {
      case MonomialOrder::Kind::lex:
        for (std::size_t k = 0; k < n; ++k)
          if (a.e[k] != b.e[k]) return a.e[k] > b.e[k] ? 1 : -1;
        return 0;
      case MonomialOrder::Kind::grevlex:
        if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
        return grevlex_tail(a, b, 0, n);
      case MonomialOrder::Kind::block: {
        std::uint32_t da = 0, db = 0;
        for (std::size_t k = 0; k < block; ++k) {
          da += a.e[k];
          db += b.e[k];
        }
        if (da != db) return da > db ? 1 : -1;
        if (int c = grevlex_tail(a, b, 0, block)) return c;
        std::uint32_t ra = a.deg - da, rb = b.deg - db;
        if (ra != rb) return ra > rb ? 1 : -1;
        return grevlex_tail(a, b, block, n);
      }
    }
    return 0;
  }
};

template <class F>
struct DTerm {
  DMono m;
  F c;
};

template <class F>
using DPoly = std::vector<DTerm<F>>;  // strictly descending in the order

// p[ps..] - c * m * g[gs..]
template <class F>
DPoly<F> sub_mul(const DPoly<F>& p, std::size_t ps, const F& c, const DMono& m, const DPoly<F>& g, std::size_t gs,
                 const DOrder& ord) {
  DPoly<F> r;
  r.reserve(p.size() - ps + g.size() - gs);
  std::size_t i = ps, j = gs;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      r.push_back(p[i++]);
      continue;
    }
    DMono mg = product(m, g[j].m, ord.n);
    if (i == p.size()) {
      r.push_back({mg, -(c * g[j].c)});
      ++j;
      continue;
    }
    int s = ord.cmp(p[i].m, mg);
    if (s > 0) {
      r.push_back(p[i++]);
    } else if (s < 0) {
      r.push_back({mg, -(c * g[j].c)});
      ++j;
    } else {
      F v = p[i].c - c * g[j].c;
      if (!v.is_zero()) r.push_back({p[i].m, v});
      ++i;
      ++j;
    }
  }
  return r;
}

template <class F>
void make_monic(DPoly<F>& p) {
  if (p.empty() || p[0].c.is_one()) return;
  F inv = F(1) / p[0].c;
  for (auto& t : p) t.c *= inv;
}

// Full reduction of p by monic divisors.
template <class F>
DPoly<F> reduce(DPoly<F> p, const std::vector<const DPoly<F>*>& divisors, const DOrder& ord) {
  DPoly<F> r;
  std::size_t head = 0;
  while (head < p.size()) {
    const DPoly<F>* hit = nullptr;
    for (const DPoly<F>* g : divisors) {
      if (divides((*g)[0].m, p[head].m, ord.n)) {
        hit = g;
        break;
      }
    }
    if (hit) {
      DMono q = quotient(p[head].m, (*hit)[0].m, ord.n);
      F c = p[head].c;
      p = sub_mul(p, head + 1, c, q, *hit, 1, ord);
      head = 0;
    } else {
      r.push_back(p[head]);
      ++head;
    }
  }
  return r;
}

template <class F>
DPoly<F> spoly(const DPoly<F>& f, const DPoly<F>& g, const DOrder& ord) {
  DMono l = lcm(f[0].m, g[0].m, ord.n);
  DPoly<F> a;
  DMono qf = quotient(l, f[0].m, ord.n);
  for (std::size_t k = 1; k < f.size(); ++k) a.push_back({product(qf, f[k].m, ord.n), f[k].c});
  return sub_mul(a, 0, F(1), quotient(l, g[0].m, ord.n), g, 1, ord);
}

struct Pair {
  std::size_t i, j;
  DMono lcm;
};

// Buchberger completion with the Gebauer-Moeller update; returns the reduced basis.
template <class F>
std::vector<DPoly<F>> buchberger(std::vector<DPoly<F>> input, const DOrder& ord, const Budget& budget) {
  std::vector<DPoly<F>> polys;
  std::vector<std::size_t> G;
  std::vector<Pair> B;
  const std::size_t n = ord.n;

  auto update = [&](std::size_t h) {
    const DMono& Hh = polys[h][0].m;
    std::vector<Pair> C;
    C.reserve(G.size());
    for (std::size_t g : G) C.push_back({g, h, lcm(polys[g][0].m, Hh, n)});
    std::vector<Pair> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      const Pair& p = C[a];
      if (coprime(polys[p.i][0].m, Hh, n)) {
        D.push_back(p);
        continue;
      }
      bool dominated = false;
      for (std::size_t b = a + 1; b < C.size() && !dominated; ++b)
        if (divides(C[b].lcm, p.lcm, n)) dominated = true;
      for (std::size_t b = 0; b < D.size() && !dominated; ++b)
        if (divides(D[b].lcm, p.lcm, n)) dominated = true;
      if (!dominated) D.push_back(p);
    }
    std::vector<Pair> nb;
    for (const Pair& p : B) {
      bool drop = divides(Hh, p.lcm, n) && !(lcm(polys[p.i][0].m, Hh, n) == p.lcm) &&
                  !(lcm(polys[p.j][0].m, Hh, n) == p.lcm);
      if (!drop) nb.push_back(p);
    }
    for (const Pair& p : D)
      if (!coprime(polys[p.i][0].m, Hh, n)) nb.push_back(p);
    B = std::move(nb);
    std::vector<std::size_t> ng;
    for (std::size_t g : G)
      if (!divides(Hh, polys[g][0].m, n)) ng.push_back(g);
    ng.push_back(h);
    G = std::move(ng);
  };

  auto check_degree = [&](const DPoly<F>& p) {
    for (const auto& t : p)
      if (t.m.deg > budget.max_degree)
        throw BudgetExceeded("Groebner basis degree exceeds max_degree=" + std::to_string(budget.max_degree));
  };

  for (auto& f : input) {
    if (f.empty()) continue;
    make_monic(f);
    check_degree(f);
    polys.push_back(std::move(f));
    update(polys.size() - 1);
  }

  std::uint64_t reductions = 0;
  while (!B.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < B.size(); ++k) {
      int c = ord.cmp(B[k].lcm, B[best].lcm);
      if (c < 0 || (c == 0 && std::make_pair(B[k].j, B[k].i) < std::make_pair(B[best].j, B[best].i))) best = k;
    }
    Pair p = B[best];
    B.erase(B.begin() + static_cast<std::ptrdiff_t>(best));
    if (++reductions > budget.max_reductions)
      throw BudgetExceeded("Groebner basis needs more than max_reductions=" + std::to_string(budget.max_reductions));
    DPoly<F> s = spoly(polys[p.i], polys[p.j], ord);
    std::vector<const DPoly<F>*> divs;
    for (std::size_t g : G) divs.push_back(&polys[g]);
    DPoly<F> h = reduce(std::move(s), divs, ord);
    if (h.empty()) continue;
    make_monic(h);
    check_degree(h);
    polys.push_back(std::move(h));
    update(polys.size() - 1);
  }

  // minimalize
  std::vector<std::size_t> minimal;
  for (std::size_t a : G) {
    bool redundant = false;
    for (std::size_t b : G) {
      if (a == b) continue;
      if (divides(polys[b][0].m, polys[a][0].m, n) && (!(polys[b][0].m == polys[a][0].m) || b < a)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(a);
  }
  std::vector<DPoly<F>> out;
  for (std::size_t a : minimal) {
    std::vector<const DPoly<F>*> others;
    for (std::size_t b : minimal)
      if (b != a) others.push_back(&polys[b]);
    DPoly<F> r = reduce(polys[a], others, ord);
    make_monic(r);
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [&](const DPoly<F>& x, const DPoly<F>& y) { return ord.cmp(x[0].m, y[0].m) > 0; });
  return out;
}

template <class F>
class Dense {
 public:
  explicit Dense(const MonomialOrder& o) : order_(o) {
    if (o.variables.size() > kMaxVars) throw std::invalid_argument("too many variables for the Groebner kernel");
    ord_ = {o.kind, o.variables.size(), o.block_size};
    for (std::size_t k = 0; k < o.variables.size(); ++k) pos_[o.variables[k]] = k;
  }

  const DOrder& order() const { return ord_; }

  DPoly<F> to_dense(const Polynomial<F>& f) const {
    DPoly<F> r;
    r.reserve(f.size());
    for (const auto& [m, c] : f.terms()) {
      DMono d;
      for (const auto& [v, e] : m.factors()) {
        auto it = pos_.find(v);
        if (it == pos_.end()) throw std::invalid_argument("variable " + v.name() + " is not part of the monomial order");
        if (e > 0xFFFFu) throw BudgetExceeded("exponent overflow");
        d.e[it->second] = static_cast<std::uint16_t>(e);
        d.deg += e;
      }
      r.push_back({d, c});
    }
    std::sort(r.begin(), r.end(), [&](const DTerm<F>& a, const DTerm<F>& b) { return ord_.cmp(a.m, b.m) > 0; });
    return r;
  }

  Polynomial<F> from_dense(const DPoly<F>& p) const {
    Polynomial<F> r;
    for (const auto& t : p) {
      std::vector<Monomial::Factor> f;
      for (std::size_t k = 0; k < ord_.n; ++k)
        if (t.m.e[k]) f.push_back({order_.variables[k], t.m.e[k]});
      std::sort(f.begin(), f.end());
      r.add_term(Monomial::from_sorted(std::move(f)), t.c);
    }
    return r;
  }

 private:
  MonomialOrder order_;
  DOrder ord_{};
  std::map<Variable, std::size_t> pos_;
};

}  // namespace detail

// A reduced Groebner basis, kept both as named polynomials and in kernel form.
template <class F>
struct ReducedBasis {
  MonomialOrder order;
  std::vector<Polynomial<F>> elements;
  std::vector<detail::DPoly<F>> dense;

  bool is_unit() const { return elements.size() == 1 && elements[0].is_constant(); }
};

template <class F>
using BasisPtr = std::shared_ptr<const ReducedBasis<F>>;

template <class F>
BasisPtr<F> compute_basis(const std::vector<Polynomial<F>>& gens, const MonomialOrder& ord, const Budget& budget) {
  detail::Dense<F> conv(ord);
  std::vector<detail::DPoly<F>> in;
  for (const auto& g : gens)
    if (!g.is_zero()) in.push_back(conv.to_dense(g));
  auto rb = std::make_shared<ReducedBasis<F>>();
  rb->order = ord;
  rb->dense = detail::buchberger(std::move(in), conv.order(), budget);
  for (const auto& d : rb->dense) rb->elements.push_back(conv.from_dense(d));
  return rb;
}

template <class F>
class Ideal {
 public:
  Ideal() : cache_(std::make_shared<Cache>()) {}
  Ideal(std::vector<Polynomial<F>> gens, std::vector<Variable> ambient)
      : gens_(std::move(gens)), ambient_(std::move(ambient)), cache_(std::make_shared<Cache>()) {
    std::sort(ambient_.begin(), ambient_.end());
    ambient_.erase(std::unique(ambient_.begin(), ambient_.end()), ambient_.end());
    for (const auto& g : gens_)
      for (const Variable& v : g.variables())
        if (!std::binary_search(ambient_.begin(), ambient_.end(), v))
          throw std::invalid_argument("generator uses variable " + v.name() + " outside the ambient ring");
    gens_.erase(std::remove_if(gens_.begin(), gens_.end(), [](const Polynomial<F>& g) { return g.is_zero(); }),
                gens_.end());
  }

  static Ideal zero(std::vector<Variable> ambient) { return Ideal({}, std::move(ambient)); }
  static Ideal unit(std::vector<Variable> ambient) { return Ideal({Polynomial<F>(1)}, std::move(ambient)); }

  const std::vector<Polynomial<F>>& generators() const { return gens_; }
  const std::vector<Variable>& ambient() const { return ambient_; }
  bool is_zero_ideal() const { return gens_.empty(); }

  BasisPtr<F> basis(const MonomialOrder& ord, const Budget& budget = {}) const {
    {
      std::lock_guard<std::mutex> lock(cache_->mu);
      for (const auto& b : cache_->bases)
        if (b->order == ord) return b;
    }
    BasisPtr<F> b = compute_basis(gens_, ord, budget);
    std::lock_guard<std::mutex> lock(cache_->mu);
    cache_->bases.push_back(b);
    return b;
  }
  BasisPtr<F> grevlex_basis(const Budget& budget = {}) const { return basis(MonomialOrder::grevlex(ambient_), budget); }

  // Install a basis known to be reduced for ord (used after elimination).
  void seed(BasisPtr<F> b) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    cache_->bases.push_back(std::move(b));
  }

  bool is_unit(const Budget& budget = {}) const {
    for (const auto& g : gens_)
      if (g.is_constant()) return true;
    return grevlex_basis(budget)->is_unit();
  }

  bool contains(const Polynomial<F>& f, const Budget& budget = {}) const;

 private:
  struct Cache {
    std::mutex mu;
    std::vector<BasisPtr<F>> bases;
  };
  std::vector<Polynomial<F>> gens_;
  std::vector<Variable> ambient_;
  std::shared_ptr<Cache> cache_;
};

template <class F>
BasisPtr<F> groebner_basis(const Ideal<F>& I, const MonomialOrder& ord, const Budget& budget = {}) {
  return I.basis(ord, budget);
}

template <class F>
Polynomial<F> normal_form(const Polynomial<F>& f, const ReducedBasis<F>& G) {
  detail::Dense<F> conv(G.order);
  std::vector<const detail::DPoly<F>*> divs;
  for (const auto& d : G.dense) divs.push_back(&d);
  return conv.from_dense(detail::reduce(conv.to_dense(f), divs, conv.order()));
}

template <class F>
bool Ideal<F>::contains(const Polynomial<F>& f, const Budget& budget) const {
  if (f.is_zero()) return true;
  return normal_form(f, *grevlex_basis(budget)).is_zero();
}

// Auxiliary variable not present in the given variable list.
inline Variable fresh_aux(const std::vector<Variable>& vars) {
  std::uint32_t k = 0;
  for (const Variable& v : vars)
    if (v.family == Family::z) k = std::max(k, v.index);
  return zv(k + 1);
}

template <class F>
Ideal<F> eliminate(const Ideal<F>& I, const std::vector<Variable>& drop, const Budget& budget = {}) {
  std::set<Variable> dropset(drop.begin(), drop.end());
  std::vector<Variable> keep;
  for (const Variable& v : I.ambient())
    if (!dropset.count(v)) keep.push_back(v);
  if (dropset.empty()) return I;
  for (const Variable& v : dropset)
    if (!std::binary_search(I.ambient().begin(), I.ambient().end(), v))
      throw std::invalid_argument("cannot eliminate " + v.name() + ": not an ambient variable");
  auto G = I.basis(MonomialOrder::elimination(drop, keep), budget);
  std::vector<Polynomial<F>> kept;
  for (const auto& g : G->elements) {
    bool clean = true;
    for (const Variable& v : g.variables())
      if (dropset.count(v)) clean = false;
    if (clean) kept.push_back(g);
  }
  Ideal<F> out(kept, keep);
  // the restriction of a reduced block basis is the reduced grevlex basis of the elimination ideal
  auto rb = std::make_shared<ReducedBasis<F>>();
  rb->order = MonomialOrder::grevlex(keep);
  detail::Dense<F> conv(rb->order);
  rb->elements = kept;
  for (const auto& g : kept) rb->dense.push_back(conv.to_dense(g));
  out.seed(rb);
  return out;
}

template <class F>
Ideal<F> saturate(const Ideal<F>& I, const Polynomial<F>& f, const Budget& budget = {}) {
  if (f.is_zero()) throw std::invalid_argument("saturation by the zero polynomial");
  if (f.is_constant() || I.is_zero_ideal()) return I;
  std::vector<Variable> amb = I.ambient();
  for (const Variable& v : f.variables())
    if (!std::binary_search(amb.begin(), amb.end(), v))
      throw std::invalid_argument("saturating polynomial uses a non-ambient variable");
  Variable z = fresh_aux(amb);
  std::vector<Polynomial<F>> gens = I.generators();
  gens.push_back(Polynomial<F>(1) - Polynomial<F>::variable(z) * f);
  std::vector<Variable> amb2 = amb;
  amb2.push_back(z);
  return eliminate(Ideal<F>(gens, amb2), {z}, budget);
}

template <class F>
bool radical_member(const Polynomial<F>& f, const Ideal<F>& I, const Budget& budget = {}) {
  if (f.is_zero()) return true;
  if (I.contains(f, budget)) return true;
  if (I.is_zero_ideal()) return false;
  std::vector<Variable> amb = I.ambient();
  for (const Variable& v : f.variables())
    if (!std::binary_search(amb.begin(), amb.end(), v)) amb.push_back(v);
  Variable z = fresh_aux(amb);
  std::vector<Polynomial<F>> gens = I.generators();
  gens.push_back(Polynomial<F>(1) - Polynomial<F>::variable(z) * f);
  amb.push_back(z);
  return Ideal<F>(gens, amb).is_unit(budget);
}

template <class F>
Ideal<F> ideal_intersect(const Ideal<F>& I, const Ideal<F>& J, const Budget& budget = {}) {
  if (I.ambient() != J.ambient()) throw std::invalid_argument("intersection needs a common ambient ring");
  if (I.is_unit(budget)) return J;
  if (J.is_unit(budget)) return I;
  if (I.is_zero_ideal() || J.is_zero_ideal()) return Ideal<F>::zero(I.ambient());
  std::vector<Variable> amb = I.ambient();
  Variable z = fresh_aux(amb);
  Polynomial<F> zp = Polynomial<F>::variable(z);
  std::vector<Polynomial<F>> gens;
  for (const auto& g : I.generators()) gens.push_back(zp * g);
  for (const auto& g : J.generators()) gens.push_back((Polynomial<F>(1) - zp) * g);
  amb.push_back(z);
  return eliminate(Ideal<F>(gens, amb), {z}, budget);
}

// V(I) ∩ {D != 0} ⊆ V(J)
template <class F>
bool variety_contained(const Ideal<F>& I, const Ideal<F>& J, const Polynomial<F>& D, const Budget& budget = {}) {
  Ideal<F> sat = saturate(I, D, budget);
  for (const auto& g : J.generators())
    if (!radical_member(g, sat, budget)) return false;
  return true;
}

template <class F>
bool ideal_equal(const Ideal<F>& I, const Ideal<F>& J, const Budget& budget = {}) {
  if (I.ambient() != J.ambient()) throw std::invalid_argument("comparison needs a common ambient ring");
  return I.grevlex_basis(budget)->elements == J.grevlex_basis(budget)->elements;
}

// prod_{a<b} (t_a - t_b) over the given t-indices 1..r
template <class F = Rational>
Polynomial<F> difference_product(std::uint32_t r) {
  if (r == 0) return Polynomial<F>(1);
  return discriminant<F>(index_range(1, r), Family::t);
}

template <class F = Rational>
std::vector<Variable> t_variables(std::uint32_t r) {
  std::vector<Variable> v;
  for (std::uint32_t i = 1; i <= r; ++i) v.push_back(tv(i));
  return v;
}

// Clear denominators and content; positive leading coefficient (char 0), monic otherwise.
template <class F>
Polynomial<F> primitive(const Polynomial<F>& f) {
  if (f.is_zero()) return f;
  if constexpr (F::characteristic == 0) {
    mpz_class den = 1, num = 0;
    for (const auto& [m, c] : f.terms()) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.value().get_den_mpz_t());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.value().get_num_mpz_t());
    }
    mpq_class s(den, num);
    if (f.leading_coefficient().sign() < 0) s = -s;
    return F(s) * f;
  } else {
    return F(1) / f.leading_coefficient() * f;
  }
}

}  // namespace sprimes
