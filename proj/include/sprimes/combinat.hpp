#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace sprimes {

class PartSize {
 public:
  static constexpr std::uint32_t kInf = 0xFFFFFFFFu;

  constexpr PartSize() = default;
  constexpr explicit PartSize(std::uint32_t v) : v_(v) {
    if (v == 0) throw std::invalid_argument("part sizes are positive");
  }
  static constexpr PartSize inf() { return PartSize(kInf); }

  constexpr bool is_inf() const { return v_ == kInf; }
  constexpr std::uint32_t value() const { return v_; }

  friend constexpr auto operator<=>(const PartSize&, const PartSize&) = default;

  std::string to_string() const { return is_inf() ? "inf" : std::to_string(v_); }

 private:
  std::uint32_t v_ = 1;
};

inline constexpr PartSize INF = PartSize::inf();
inline PartSize fin(std::uint32_t v) { return PartSize(v); }

struct WeightedShape {
  std::vector<PartSize> parts;
  std::vector<std::uint32_t> weights;

  std::size_t size() const { return parts.size(); }
  bool is_inf(std::size_t a) const { return parts[a].is_inf(); }

  void validate() const {
    if (parts.size() != weights.size()) throw std::invalid_argument("parts and weights differ in length");
    if (std::none_of(parts.begin(), parts.end(), [](PartSize p) { return p.is_inf(); }))
      throw std::invalid_argument("an infinity-composition needs an infinite part");
    for (auto w : weights)
      if (w == 0) throw std::invalid_argument("weights are positive");
  }

  bool is_reduced() const {
    for (std::size_t a = 0; a < size(); ++a)
      if (!parts[a].is_inf() && weights[a] != 1) return false;
    return true;
  }

  bool is_canonical() const {
    if (!is_reduced()) return false;
    for (std::size_t a = 1; a < size(); ++a)
      if (std::tie(parts[a - 1], weights[a - 1]) < std::tie(parts[a], weights[a])) return false;
    return true;
  }

  std::uint32_t max_weight() const { return weights.empty() ? 0 : *std::max_element(weights.begin(), weights.end()); }

  // sum of the finite parts
  std::uint32_t finite_sum() const {
    std::uint32_t s = 0;
    for (auto p : parts)
      if (!p.is_inf()) s += p.value();
    return s;
  }
  // sum of the weights on infinite parts
  std::uint32_t infinite_weight() const {
    std::uint32_t s = 0;
    for (std::size_t a = 0; a < size(); ++a)
      if (parts[a].is_inf()) s += weights[a];
    return s;
  }

  std::string to_string() const {
    std::string s = "((";
    for (std::size_t a = 0; a < size(); ++a) s += (a ? "," : "") + parts[a].to_string();
    s += "),(";
    for (std::size_t a = 0; a < size(); ++a) s += (a ? "," : "") + std::to_string(weights[a]);
    return s + "))";
  }

  friend auto operator<=>(const WeightedShape&, const WeightedShape&) = default;
  friend bool operator==(const WeightedShape&, const WeightedShape&) = default;
};

struct CanonicalForm {
  WeightedShape shape;
  std::vector<std::size_t> old_to_new;  // part a moves to position old_to_new[a]
};

inline CanonicalForm canonicalize(const std::vector<PartSize>& parts, const std::vector<std::uint32_t>& weights) {
  WeightedShape raw{parts, weights};
  raw.validate();
  for (std::size_t a = 0; a < raw.size(); ++a)
    if (!raw.parts[a].is_inf()) raw.weights[a] = 1;
  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(raw.parts[a], raw.weights[a]) > std::tie(raw.parts[b], raw.weights[b]);
  });
  CanonicalForm out;
  out.old_to_new.resize(raw.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.shape.parts.push_back(raw.parts[order[k]]);
    out.shape.weights.push_back(raw.weights[order[k]]);
    out.old_to_new[order[k]] = k;
  }
  return out;
}

inline WeightedShape make_shape(const std::vector<PartSize>& parts, const std::vector<std::uint32_t>& weights) {
  return canonicalize(parts, weights).shape;
}

// A good pair: phi[a] is the target of source part a, or -1 when a is outside E.
struct GoodPair {
  std::vector<int> phi;

  std::vector<std::size_t> E() const {
    std::vector<std::size_t> e;
    for (std::size_t a = 0; a < phi.size(); ++a)
      if (phi[a] >= 0) e.push_back(a);
    return e;
  }
  bool in_E(std::size_t a) const { return phi[a] >= 0; }
  std::size_t target(std::size_t a) const { return static_cast<std::size_t>(phi[a]); }

  std::string to_string() const {
    std::string s = "E={";
    bool first = true;
    for (std::size_t a : E()) {
      s += (first ? "" : ",") + std::to_string(a + 1);
      first = false;
    }
    s += "} phi=(";
    first = true;
    for (std::size_t a : E()) {
      s += (first ? "" : ",") + std::to_string(phi[a] + 1);
      first = false;
    }
    return s + ")";
  }

  friend bool operator==(const GoodPair&, const GoodPair&) = default;
};

inline bool is_good(const GoodPair& gp, const WeightedShape& target, const WeightedShape& source) {
  for (std::size_t b = 0; b < target.size(); ++b) {
    bool inf_sum = false;
    std::uint64_t fin_sum = 0, inf_weight = 0;
    for (std::size_t a = 0; a < source.size(); ++a) {
      if (gp.phi[a] != static_cast<int>(b)) continue;
      if (source.is_inf(a)) {
        inf_sum = true;
        inf_weight += source.weights[a];
      } else {
        fin_sum += source.parts[a].value();
      }
    }
    if (target.is_inf(b)) {
      if (!inf_sum) return false;                   // (G1)
      if (target.weights[b] > inf_weight) return false;  // (G2)
    } else if (!inf_sum && target.parts[b].value() > fin_sum) {
      return false;  // (G1)
    }
  }
  return true;
}

namespace detail {

// Calls fn on every map from [r] to {-1, 0, .., k-1}; stops when fn returns false.
inline void for_each_partial_map(std::size_t r, std::size_t k, const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> phi(r, -1);
  for (;;) {
    if (!fn(phi)) return;
    std::size_t a = 0;
    while (a < r) {
      if (phi[a] + 1 < static_cast<int>(k)) {
        ++phi[a];
        break;
      }
      phi[a] = -1;
      ++a;
    }
    if (a == r) return;
  }
}

inline bool good_pair_less(const GoodPair& x, const GoodPair& y) {
  auto ex = x.E(), ey = y.E();
  if (ex != ey) return ex < ey;
  for (std::size_t a : ex)
    if (x.phi[a] != y.phi[a]) return x.phi[a] < y.phi[a];
  return false;
}

}  // namespace detail

inline std::vector<GoodPair> good_pairs(const WeightedShape& target, const WeightedShape& source) {
  std::vector<GoodPair> out;
  detail::for_each_partial_map(source.size(), target.size(), [&](const std::vector<int>& phi) {
    GoodPair gp{phi};
    if (is_good(gp, target, source)) out.push_back(gp);
    return true;
  });
  std::sort(out.begin(), out.end(), detail::good_pair_less);
  return out;
}

// a ≼ b
inline bool shape_leq(const WeightedShape& a, const WeightedShape& b) {
  bool found = false;
  detail::for_each_partial_map(b.size(), a.size(), [&](const std::vector<int>& phi) {
    if (is_good(GoodPair{phi}, a, b)) found = true;
    return !found;
  });
  return found;
}

// All canonical shapes with 1..max_parts parts, finite parts in [1, finite_cap]
// and infinite weights in [1, weight_cap].
inline std::vector<WeightedShape> shapes_in_box(std::size_t max_parts, std::uint32_t finite_cap,
                                                std::uint32_t weight_cap) {
  // choices sorted descending: infinite parts by weight, then finite parts
  std::vector<std::pair<PartSize, std::uint32_t>> choices;
  for (std::uint32_t w = weight_cap; w >= 1; --w) choices.push_back({INF, w});
  for (std::uint32_t v = finite_cap; v >= 1; --v) choices.push_back({PartSize(v), 1});
  std::vector<WeightedShape> out;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!pick.empty() && choices[pick[0]].first.is_inf()) {
      WeightedShape s;
      for (std::size_t c : pick) {
        s.parts.push_back(choices[c].first);
        s.weights.push_back(choices[c].second);
      }
      out.push_back(s);
    }
    if (pick.size() == max_parts) return;
    for (std::size_t c = from; c < choices.size(); ++c) {
      pick.push_back(c);
      rec(c);
      pick.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

// Shapes obtained by one elementary downward move; each is ≼ s.
inline std::vector<WeightedShape> immediate_predecessors(const WeightedShape& s, std::uint32_t finite_cap) {
  std::vector<WeightedShape> out;
  auto push = [&](std::vector<PartSize> p, std::vector<std::uint32_t> w) {
    if (p.empty() || std::none_of(p.begin(), p.end(), [](PartSize x) { return x.is_inf(); })) return;
    out.push_back(make_shape(p, w));
  };
  const std::size_t r = s.size();
  for (std::size_t a = 0; a < r; ++a) {
    auto p = s.parts;
    auto w = s.weights;
    p.erase(p.begin() + static_cast<std::ptrdiff_t>(a));
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(a));
    push(p, w);
    if (!s.is_inf(a) && s.parts[a].value() > 1) {
      auto p2 = s.parts;
      p2[a] = PartSize(s.parts[a].value() - 1);
      push(p2, s.weights);
    }
    if (s.is_inf(a) && s.weights[a] > 1) {
      auto w2 = s.weights;
      --w2[a];
      push(s.parts, w2);
    }
    if (s.is_inf(a) && s.weights[a] == 1) {
      auto p2 = s.parts;
      p2[a] = PartSize(finite_cap);
      push(p2, s.weights);
    }
    for (std::size_t b = a + 1; b < r; ++b) {
      std::vector<PartSize> p3;
      std::vector<std::uint32_t> w3;
      for (std::size_t c = 0; c < r; ++c)
        if (c != a && c != b) {
          p3.push_back(s.parts[c]);
          w3.push_back(s.weights[c]);
        }
      if (s.is_inf(a) || s.is_inf(b)) {
        std::uint32_t wsum = (s.is_inf(a) ? s.weights[a] : 0) + (s.is_inf(b) ? s.weights[b] : 0);
        p3.push_back(INF);
        w3.push_back(wsum);
      } else {
        p3.push_back(PartSize(std::min(finite_cap, s.parts[a].value() + s.parts[b].value())));
        w3.push_back(1);
      }
      push(p3, w3);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

class BoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Psi0Bounds {
  std::size_t max_parts;
  std::uint32_t finite_cap;
  std::uint32_t weight_cap;
};

inline Psi0Bounds psi0_bounds(const WeightedShape& base) {
  return {base.size() + 1, 1 + base.finite_sum(), 1 + base.infinite_weight()};
}

// Minimal shapes not ≼ base.
inline std::vector<WeightedShape> psi0(const WeightedShape& base) {
  base.validate();
  const Psi0Bounds bx = psi0_bounds(base);
  std::vector<WeightedShape> psi;
  for (auto& s : shapes_in_box(bx.max_parts, bx.finite_cap, bx.weight_cap))
    if (!shape_leq(s, base)) psi.push_back(std::move(s));

  std::vector<WeightedShape> minimal;
  for (const auto& x : psi) {
    bool is_min = true;
    for (const auto& y : psi)
      if (!(y == x) && shape_leq(y, x)) {
        is_min = false;
        break;
      }
    if (is_min) minimal.push_back(x);
  }

  // local certificate: every elementary predecessor lies below the base
  for (const auto& x : minimal)
    for (const auto& y : immediate_predecessors(x, bx.finite_cap))
      if (!shape_leq(y, base))
        throw BoundError("minimality certificate failed for " + x.to_string() + " via " + y.to_string());

  // boundary check: enlarging a part or weight beyond the box, or adding a part,
  // must not create an element of Psi that escapes the returned antichain
  auto dominated = [&](const WeightedShape& s) {
    for (const auto& m : minimal)
      if (shape_leq(m, s)) return true;
    return false;
  };
  for (const auto& s : shapes_in_box(bx.max_parts, bx.finite_cap, bx.weight_cap)) {
    std::vector<WeightedShape> probes;
    for (std::size_t a = 0; a < s.size(); ++a) {
      auto p = s.parts;
      auto w = s.weights;
      if (s.is_inf(a))
        ++w[a];
      else
        p[a] = PartSize(p[a].value() + 1);
      probes.push_back(make_shape(p, w));
    }
    if (s.size() == bx.max_parts) {
      auto p = s.parts;
      auto w = s.weights;
      p.push_back(PartSize(1));
      w.push_back(1);
      probes.push_back(make_shape(p, w));
    }
    for (const auto& pr : probes)
      if (!shape_leq(pr, base) && !dominated(pr))
        throw BoundError("search box too small: " + pr.to_string() + " escapes the antichain");
  }
  return minimal;
}

// Shapes ≼ base with at most base.size() parts, finite parts ≤ finite_cap
// and infinite weights ≤ the total infinite weight of base.
inline std::vector<WeightedShape> shapes_below(const WeightedShape& base, std::uint32_t finite_cap) {
  std::vector<WeightedShape> out;
  for (auto& s : shapes_in_box(base.size(), finite_cap, std::max<std::uint32_t>(1, base.infinite_weight())))
    if (shape_leq(s, base)) out.push_back(std::move(s));
  return out;
}

struct RefinementPair {
  std::vector<std::size_t> phi;  // source part -> target part
  std::vector<PartSize> kappa;   // composition on the source index set

  friend bool operator==(const RefinementPair&, const RefinementPair&) = default;
};

inline std::vector<RefinementPair> refinement_pairs(const WeightedShape& source, const WeightedShape& target) {
  const std::size_t r = source.size(), k = target.size();
  std::vector<RefinementPair> out;
  if (k == 0) return out;
  std::vector<std::size_t> phi(r, 0);
  for (;;) {
    // fibers
    std::vector<std::vector<std::size_t>> fiber(k);
    for (std::size_t a = 0; a < r; ++a) fiber[phi[a]].push_back(a);
    bool ok = true;
    std::vector<PartSize> kappa(r, PartSize(1));
    std::vector<std::size_t> free_parts;  // sources in finite fibers
    for (std::size_t b = 0; b < k && ok; ++b) {
      if (fiber[b].empty()) {
        ok = false;
      } else if (target.is_inf(b)) {
        bool has_inf = false;
        for (std::size_t a : fiber[b]) {
          kappa[a] = source.parts[a];
          has_inf = has_inf || source.is_inf(a);
        }
        ok = has_inf;
      }
    }
    if (ok) {
      // enumerate compositions of each finite target over its fiber
      std::vector<std::size_t> finite_targets;
      for (std::size_t b = 0; b < k; ++b)
        if (!target.is_inf(b)) finite_targets.push_back(b);
      std::function<void(std::size_t, std::size_t, std::uint32_t)> rec = [&](std::size_t ti, std::size_t fi,
                                                                              std::uint32_t remaining) {
        if (ti == finite_targets.size()) {
          out.push_back({phi, kappa});
          return;
        }
        const auto& fb = fiber[finite_targets[ti]];
        std::size_t a = fb[fi];
        bool last = fi + 1 == fb.size();
        std::uint32_t cap = source.is_inf(a) ? remaining : std::min(remaining, source.parts[a].value());
        std::uint32_t reserve = static_cast<std::uint32_t>(fb.size() - fi - 1);
        for (std::uint32_t v = 1; v <= cap; ++v) {
          if (last && v != remaining) continue;
          if (!last && remaining - v < reserve) break;
          kappa[a] = PartSize(v);
          if (last) {
            std::size_t nt = ti + 1;
            rec(nt, 0, nt < finite_targets.size() ? target.parts[finite_targets[nt]].value() : 0);
          } else {
            rec(ti, fi + 1, remaining - v);
          }
        }
      };
      if (finite_targets.empty())
        out.push_back({phi, kappa});
      else
        rec(0, 0, target.parts[finite_targets[0]].value());
    }
    std::size_t a = r;
    while (a-- > 0) {
      if (++phi[a] < k) break;
      phi[a] = 0;
      if (a == 0) return out;
    }
    if (r == 0) return out;
  }
}

}  // namespace sprimes
