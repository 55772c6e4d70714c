#pragma once

#include <string>
#include <vector>

#include "sprimes/groebner.hpp"

namespace sprimes {

// ξ-only ideal obtained from ⟨ξ_i - t - ε_i, ε_i^{q_i}⟩ by eliminating t and the ε's.
template <class F>
Ideal<F> contract_ideal(const std::vector<std::uint32_t>& q, const Budget& budget = {}) {
  if (q.empty()) throw std::invalid_argument("n must be at least 1");
  for (auto k : q)
    if (k == 0) throw std::invalid_argument("weights are positive");
  const auto n = static_cast<std::uint32_t>(q.size());
  std::vector<Variable> drop{tv(1)}, amb;
  std::vector<Polynomial<F>> gens;
  for (std::uint32_t i = 1; i <= n; ++i) {
    drop.push_back(ev(i));
    auto e = Polynomial<F>::variable(ev(i));
    gens.push_back(Polynomial<F>::variable(xv(i)) - Polynomial<F>::variable(tv(1)) - e);
    gens.push_back(e.pow(q[i - 1]));
  }
  amb = drop;
  for (std::uint32_t i = 1; i <= n; ++i) amb.push_back(xv(i));
  return eliminate(Ideal<F>(gens, amb), drop, budget);
}

inline bool is_power_of(std::uint32_t q, std::uint32_t p) {
  if (q == 0) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

template <class F>
Ideal<F> predicted_contraction(const std::vector<std::uint32_t>& q) {
  const auto n = static_cast<std::uint32_t>(q.size());
  std::vector<Variable> xs;
  for (std::uint32_t i = 1; i <= n; ++i) xs.push_back(xv(i));
  std::vector<Polynomial<F>> gens;
  if constexpr (F::characteristic == 0) {
    for (std::uint32_t i = 1; i <= n; ++i)
      for (std::uint32_t j = i + 1; j <= n; ++j) gens.push_back(difference<F>(i, j).pow(q[i - 1] + q[j - 1] - 1));
  } else {
    for (auto k : q)
      if (k != q[0] || !is_power_of(k, F::characteristic))
        throw std::invalid_argument("characteristic p needs a uniform weight that is a power of p");
    for (std::uint32_t i = 1; i <= n; ++i)
      for (std::uint32_t j = i + 1; j <= n; ++j) gens.push_back(difference<F>(i, j).pow(q[0]));
  }
  return Ideal<F>(gens, xs);
}

struct ContractReport {
  std::uint32_t characteristic = 0;
  std::vector<std::uint32_t> q;
  std::vector<std::string> basis;      // reduced grevlex basis of the contraction
  std::vector<std::string> predicted;  // predicted generators
  bool predicted_in_contraction = false;
  bool contraction_in_predicted = false;
  bool verified() const { return predicted_in_contraction && contraction_in_predicted; }
};

template <class F>
ContractReport verify_contract(const std::vector<std::uint32_t>& q, const Budget& budget = {}) {
  ContractReport r;
  r.characteristic = F::characteristic;
  r.q = q;
  Ideal<F> pred = predicted_contraction<F>(q);
  Ideal<F> got = contract_ideal<F>(q, budget);
  for (const auto& g : got.grevlex_basis(budget)->elements) r.basis.push_back(g.to_string());
  for (const auto& g : pred.generators()) r.predicted.push_back(g.to_string());
  r.predicted_in_contraction = true;
  for (const auto& g : pred.generators()) r.predicted_in_contraction = r.predicted_in_contraction && got.contains(g, budget);
  r.contraction_in_predicted = true;
  for (const auto& g : got.generators()) r.contraction_in_predicted = r.contraction_in_predicted && pred.contains(g, budget);
  return r;
}

// Prime characteristics available at run time.
inline const std::vector<std::uint32_t>& supported_characteristics() {
  static const std::vector<std::uint32_t> v{0, 2, 3, 5, 7, 11, 13};
  return v;
}

inline ContractReport verify_contract(const std::vector<std::uint32_t>& q, std::uint32_t characteristic,
                                      const Budget& budget = {}) {
  switch (characteristic) {
    case 0: return verify_contract<Rational>(q, budget);
    case 2: return verify_contract<ModP<2>>(q, budget);
    case 3: return verify_contract<ModP<3>>(q, budget);
    case 5: return verify_contract<ModP<5>>(q, budget);
    case 7: return verify_contract<ModP<7>>(q, budget);
    case 11: return verify_contract<ModP<11>>(q, budget);
    case 13: return verify_contract<ModP<13>>(q, budget);
    default: throw std::invalid_argument("unsupported characteristic " + std::to_string(characteristic));
  }
}

// Characteristic 0: f lies in the contraction iff every ∂^k f with k_i < q_i
// vanishes on the diagonal ξ_1 = ... = ξ_n.
inline bool derivative_criterion(const Poly& f, const std::vector<std::uint32_t>& q) {
  const auto n = static_cast<std::uint32_t>(q.size());
  std::map<Variable, Poly> diag;
  for (std::uint32_t i = 1; i <= n; ++i) diag[xv(i)] = var(xv(1));
  std::vector<std::uint32_t> k(n, 0);
  for (;;) {
    Poly d = f;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < k[i]; ++j) d = d.derivative(xv(i + 1));
    if (!d.substitute(diag).is_zero()) return false;
    std::uint32_t i = 0;
    while (i < n && ++k[i] == q[i]) k[i++] = 0;
    if (i == n) return true;
  }
}

}  // namespace sprimes
