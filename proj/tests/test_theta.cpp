#include <gtest/gtest.h>

#include <random>

#include "sprimes/theta.hpp"

using namespace sprimes;

namespace {

SPrimeData P(std::vector<PartSize> parts, std::vector<std::uint32_t> w, std::vector<const char*> z) {
  std::vector<Poly> g;
  for (const char* s : z) g.push_back(parse(s));
  return make_sprime(parts, w, g);
}

WeightedShape S(std::vector<PartSize> p, std::vector<std::uint32_t> w) { return make_shape(p, w); }

Ideal<Rational> I(std::vector<const char*> gens, std::uint32_t r) {
  std::vector<Poly> g;
  for (const char* s : gens) g.push_back(parse(s));
  return Ideal<Rational>(g, t_variables(r));
}

GoodPair pair_for(const WeightedShape& target, const WeightedShape& source, std::vector<int> phi) {
  for (const auto& gp : good_pairs(target, source))
    if (gp.phi == phi) return gp;
  throw std::logic_error("pair not good");
}

// small random S-prime data with at most two parts
SPrimeData sample_data(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 5), c(-2, 2), w(1, 2), fsize(1, 2);
  int k = kind(rng);
  auto num = [&](int v) { return Poly(static_cast<long>(v)); };
  Poly t1 = var(tv(1)), t2 = var(tv(2));
  switch (k) {
    case 0:
      return make_sprime({INF}, {static_cast<std::uint32_t>(w(rng))}, {});
    case 1:
      return make_sprime({INF}, {static_cast<std::uint32_t>(w(rng))}, {t1 - num(c(rng))});
    case 2:
      return make_sprime({INF, INF}, {static_cast<std::uint32_t>(w(rng)), static_cast<std::uint32_t>(w(rng))},
                         {t1 + num(c(rng) == 0 ? 1 : c(rng)) * t2 - num(c(rng))});
    case 3: {
      int a = c(rng), b = c(rng);
      if (a == b) b = a + 1;
      return make_sprime({INF, INF}, {static_cast<std::uint32_t>(w(rng)), static_cast<std::uint32_t>(w(rng))},
                         {t1 - num(a), t2 - num(b)});
    }
    case 4:
      return make_sprime({INF, INF}, {static_cast<std::uint32_t>(w(rng)), static_cast<std::uint32_t>(w(rng))},
                         {t1 * t1 + t2 * t2 - num(1)});
    default:
      return make_sprime({INF, fin(static_cast<std::uint32_t>(fsize(rng)))}, {static_cast<std::uint32_t>(w(rng)), 1},
                         c(rng) % 2 ? std::vector<Poly>{} : std::vector<Poly>{t2 - num(c(rng))});
  }
}

WeightedShape random_target(std::mt19937& rng) {
  std::uniform_int_distribution<int> n(1, 3), w(1, 4), f(1, 2), coin(0, 1);
  int parts = n(rng);
  std::vector<PartSize> p{INF};
  std::vector<std::uint32_t> ws{static_cast<std::uint32_t>(w(rng))};
  for (int a = 1; a < parts; ++a) {
    bool inf = coin(rng);
    p.push_back(inf ? INF : PartSize(static_cast<std::uint32_t>(f(rng))));
    ws.push_back(inf ? static_cast<std::uint32_t>(w(rng)) : 1);
  }
  return S(p, ws);
}

}  // namespace

TEST(ThetaPair, Examples) {
  auto line = P({INF, INF}, {1, 1}, {"t1+t2"});
  auto t2 = S({INF}, {2});
  EXPECT_TRUE(ideal_equal(theta_pair(line, t2, pair_for(t2, line.shape, {0, 0})), I({"2*t1"}, 1)));
  auto circle = P({INF, INF}, {2, 2}, {"t1^2+t2^2-1"});
  auto t3 = S({INF}, {3});
  EXPECT_TRUE(ideal_equal(theta_pair(circle, t3, pair_for(t3, circle.shape, {0, 0})), I({"2*t1^2-1"}, 1)));
  EXPECT_TRUE(theta_pair(circle, t2, pair_for(t2, circle.shape, {0, -1})).is_zero_ideal());
  EXPECT_THROW(theta_pair(circle, S({INF}, {5}), GoodPair{{0, 0}}), std::invalid_argument);
}

TEST(Theta, Examples) {
  auto zero22 = P({INF, INF}, {2, 2}, {});
  auto a = theta(zero22, S({INF}, {5}));
  EXPECT_TRUE(a.components.empty());
  EXPECT_TRUE(a.ideal.is_unit());
  auto circle = P({INF, INF}, {2, 2}, {"t1^2+t2^2-1"});
  EXPECT_TRUE(theta(circle, S({INF}, {2})).ideal.is_zero_ideal());
  auto shifted = P({INF, INF}, {1, 1}, {"t1+t2-1"});
  auto c = theta(shifted, S({INF}, {2}));
  EXPECT_EQ(c.components.size(), 1u);
  EXPECT_TRUE(ideal_equal(c.ideal, I({"2*t1-1"}, 1)));
}

TEST(Contains, LineThroughOrigin) {
  auto p = P({INF, INF}, {1, 1}, {"t1+t2"});
  EXPECT_TRUE(contains(p, P({INF}, {1}, {"t1"})));
  EXPECT_TRUE(contains(p, P({INF}, {2}, {"t1"})));
  auto c = contains_certified(p, P({INF}, {3}, {"t1"}));
  EXPECT_FALSE(c.holds);
  EXPECT_TRUE(c.theta.ideal.is_unit());
  ASSERT_TRUE(c.separator.has_value());
}

TEST(Contains, ShiftedLine) {
  auto p = P({INF, INF}, {1, 1}, {"t1+t2-1"});
  EXPECT_TRUE(contains(p, P({INF}, {1}, {"t1"})));
  auto c = contains_certified(p, P({INF}, {2}, {"t1"}));
  EXPECT_FALSE(c.holds);
  ASSERT_TRUE(c.separator.has_value());
  EXPECT_FALSE(radical_member(*c.separator, I({"t1"}, 1)));
  EXPECT_FALSE(contains(p, P({INF}, {3}, {"t1"})));
}

TEST(Contains, EmptyTargetWarns) {
  auto q = P({INF, INF}, {1, 1}, {"t1-t2"});
  auto c = contains_certified(P({INF}, {1}, {}), q);
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.warnings.size(), 1u);
}

TEST(Equal, Examples) {
  auto p = P({INF, INF}, {1, 1}, {"t1+t2"});
  EXPECT_TRUE(equal(p, p));
  auto a = P({INF, INF}, {2, 1}, {"t1-2*t2-1"});
  auto b = P({INF, INF}, {1, 2}, {"t2-2*t1-1"});
  EXPECT_EQ(a.shape, b.shape);
  EXPECT_TRUE(equal(a, b));
  EXPECT_FALSE(equal(P({INF}, {1}, {"t1"}), P({INF}, {2}, {"t1"})));
}

TEST(ThetaProperties, CompositionContainment) {
  std::mt19937 rng(41);
  int cases = 0;
  for (int trial = 0; trial < 100; ++trial) {
    SPrimeData p = sample_data(rng);
    WeightedShape a = random_target(rng), b = random_target(rng);
    ThetaResult first = theta(p, a);
    SPrimeData mid{a, first.ideal, true, {}};
    ThetaResult composed = theta(mid, b);
    ThetaResult direct = theta(p, b);
    Poly D = difference_product(static_cast<std::uint32_t>(b.size()));
    EXPECT_TRUE(variety_contained(composed.ideal, direct.ideal, D))
        << p.shape.to_string() << " -> " << a.to_string() << " -> " << b.to_string();
    ++cases;
  }
  EXPECT_GE(cases, 100);
}

TEST(ThetaProperties, ReflexiveAndTransitive) {
  std::mt19937 rng(43);
  std::vector<SPrimeData> pool;
  for (int k = 0; k < 14; ++k) pool.push_back(sample_data(rng));
  // a few fixed members so that chains exist
  pool.push_back(P({INF}, {1}, {}));
  pool.push_back(P({INF}, {2}, {"t1"}));
  pool.push_back(P({INF, INF}, {1, 1}, {"t1+t2"}));
  const std::size_t n = pool.size();
  std::vector<std::vector<bool>> c(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i][j] = contains(pool[i], pool[j]);
  int chains = 0;
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_TRUE(c[i][i]) << pool[i].shape.to_string();
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (c[i][j] && c[j][k]) {
          EXPECT_TRUE(c[i][k]);
          ++chains;
        }
  }
  EXPECT_GE(chains, 100);
}

TEST(ThetaProperties, WeightOneTargetAlwaysContains) {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    SPrimeData p = sample_data(rng);
    EXPECT_TRUE(contains(p, radical_of(p))) << p.shape.to_string();
  }
}

TEST(ThetaProperties, RelabelingInvariance) {
  std::mt19937 rng(53);
  std::uniform_int_distribution<int> c(-2, 2), w(1, 2);
  int cases = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::uint32_t wt = static_cast<std::uint32_t>(w(rng));
    int a = c(rng), b = c(rng), k = c(rng);
    Poly t1 = var(tv(1)), t2 = var(tv(2));
    Poly z = trial % 2 ? t1 * t1 + Poly(static_cast<long>(a)) * t2 - Poly(static_cast<long>(b))
                       : Poly(static_cast<long>(a == 0 ? 1 : a)) * t1 + Poly(static_cast<long>(k)) * t2 -
                             Poly(static_cast<long>(b));
    std::map<Variable, Variable> swap{{tv(1), tv(2)}, {tv(2), tv(1)}};
    SPrimeData p = make_sprime({INF, INF}, {wt, wt}, {z});
    SPrimeData ps = make_sprime({INF, INF}, {wt, wt}, {z.rename(swap)});
    SPrimeData q = sample_data(rng);
    EXPECT_EQ(contains(p, q), contains(ps, q)) << z.to_string() << " vs " << q.shape.to_string();
    EXPECT_EQ(contains(q, p), contains(q, ps)) << z.to_string() << " vs " << q.shape.to_string();
    ++cases;
  }
  EXPECT_GE(cases, 100);
}
