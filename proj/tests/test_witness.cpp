#include <gtest/gtest.h>

#include <random>

#include "sprimes/witness.hpp"

using namespace sprimes;

namespace {

SPrimeData P(std::vector<PartSize> parts, std::vector<std::uint32_t> w, std::vector<const char*> z) {
  std::vector<Poly> g;
  for (const char* s : z) g.push_back(parse(s));
  return make_sprime(parts, w, g);
}

WeightedShape S(std::vector<PartSize> p, std::vector<std::uint32_t> w) { return make_shape(p, w); }

Poly D(std::uint32_t a, std::uint32_t b) { return discriminant<Rational>(index_range(a, b)); }

}  // namespace

TEST(Layout, Sizes) {
  auto L = make_layout(S({INF, fin(1)}, {2, 1}), S({INF, fin(2)}, {3, 1}));
  EXPECT_EQ(L.n, 2u);
  EXPECT_EQ(L.tau, (std::vector<std::uint32_t>{6, 2}));
  EXPECT_EQ(L.m, 8u);
  EXPECT_EQ(L.N, 3u);
  ASSERT_EQ(L.sub_blocks[0].size(), 2u);
  EXPECT_EQ(L.sub_blocks[0][1], (std::vector<std::uint32_t>{4, 5, 6}));
  EXPECT_TRUE(L.sub_blocks[1].empty());
  EXPECT_EQ(L.blocks[1], (std::vector<std::uint32_t>{7, 8}));
}

TEST(CompatiblePartitions, Examples) {
  auto circle = S({INF, INF}, {2, 2});
  for (std::uint32_t a : {3u, 4u}) {
    auto target = S({INF}, {a});
    auto gps = good_pairs(target, circle);
    ASSERT_EQ(gps.size(), 1u);
    auto parts = compatible_partitions(gps[0], make_layout(circle, target), circle, target);
    EXPECT_EQ(parts.size(), 6u) << a;
    for (const auto& cp : parts)
      for (const auto& tr : cp.traces(2)) {
        EXPECT_GE(tr.size(), 1u);
        EXPECT_LE(tr.size(), 2u);
      }
  }
  auto line = S({INF}, {1});
  auto gp = good_pairs(line, line);
  ASSERT_EQ(gp.size(), 1u);
  EXPECT_EQ(compatible_partitions(gp[0], make_layout(line, line), line, line).size(), 1u);
}

TEST(BuildH, DiscriminantExamples) {
  auto p = P({INF, INF}, {2, 2}, {});
  EXPECT_EQ(build_h(p, S({INF}, {5}), std::nullopt).expand(), D(1, 5));
  Poly b = D(1, 3);
  for (std::uint32_t i = 1; i <= 3; ++i) b = b * difference<Rational>(i, 4).pow(3);
  EXPECT_EQ(build_h(p, S({INF, fin(1)}, {3, 1}), std::nullopt).expand(), b);
  EXPECT_EQ(build_h(p, S({INF, fin(1), fin(1)}, {1, 1, 1}), std::nullopt).expand(), D(1, 3).pow(3));
  EXPECT_EQ(build_h(P({INF}, {2}, {}), S({INF, fin(1)}, {1, 1}), std::nullopt).expand(), parse("(x1-x2)^3"));
}

TEST(BuildH, CircleDiagonal) {
  auto circle = P({INF, INF}, {2, 2}, {"t1^2+t2^2-1"});
  Poly want = D(1, 3) * parse("(x1^2+x2^2-1)^4*(x1^2+x3^2-1)^4*(x2^2+x3^2-1)^4");
  auto q = P({INF}, {3}, {"t1"});
  auto generic = build_h(circle, q);
  EXPECT_EQ(generic.expand(), want);
  auto at_point = build_h(circle, q.shape, std::vector<Rational>{Rational(0)});
  EXPECT_EQ(at_point.expand(), want);
  auto [in_p, in_q] = certify(generic.factored(), circle, q);
  EXPECT_TRUE(in_p);
  EXPECT_FALSE(in_q);
}

TEST(BuildH, PointInsideThetaHasNoWitness) {
  auto line = P({INF, INF}, {1, 1}, {"t1+t2"});
  EXPECT_THROW(build_h(line, S({INF}, {2}), std::vector<Rational>{Rational(0)}), NoWitness);
  EXPECT_THROW(build_h(line, P({INF}, {2}, {"t1"})), NoWitness);
  EXPECT_THROW(build_h(line, S({INF}, {2}), std::nullopt), std::invalid_argument);
  EXPECT_THROW(build_h(line, S({INF, INF}, {1, 1}), std::vector<Rational>{Rational(1), Rational(1)}),
               std::invalid_argument);
}

TEST(Certify, Examples) {
  auto p = P({INF, INF}, {1, 1}, {});
  EXPECT_TRUE(certify(D(1, 3), p, P({INF}, {3}, {"t1"})).first);
  auto r = certify(parse("(x1-x2)^3"), P({INF}, {2}, {}), P({INF, fin(1)}, {1, 1}, {}));
  EXPECT_EQ(r, std::make_pair(true, false));
  EXPECT_EQ(certify(Poly(1), P({INF}, {2}, {}), P({INF}, {1}, {"t1"})), std::make_pair(false, false));
}

TEST(WitnessProperties, ExponentAuditAndSeparation) {
  std::vector<SPrimeData> ps{P({INF}, {1}, {}),
                             P({INF}, {2}, {"t1"}),
                             P({INF, INF}, {1, 1}, {"t1+t2"}),
                             P({INF, INF}, {1, 1}, {"t1+t2-1"}),
                             P({INF, INF}, {2, 1}, {"t1-1", "t2+1"}),
                             P({INF, fin(1)}, {1, 1}, {}),
                             P({INF, INF}, {2, 2}, {"t1^2+t2^2-1"})};
  std::vector<SPrimeData> qs{P({INF}, {3}, {"t1"}),     P({INF}, {2}, {}),       P({INF}, {2}, {"t1-1"}),
                             P({INF, fin(1)}, {2, 1}, {}), P({INF, INF}, {1, 1}, {"t1", "t2-2"}),
                             P({INF, fin(1), fin(1)}, {1, 1, 1}, {})};
  int separated = 0;
  for (const auto& p : ps)
    for (const auto& q : qs) {
      if (contains(p, q)) continue;
      Witness w = build_h(p, q);
      const auto& L = w.layout;
      for (const auto& [f, k] : w.h2.factors) {
        EXPECT_EQ(k, L.N);
        auto vars = f.variables();
        ASSERT_EQ(vars.size(), 2u);
        EXPECT_NE(L.block_of[vars.begin()->index - 1], L.block_of[std::next(vars.begin())->index - 1]);
      }
      for (const auto& [f, k] : w.h1.factors) EXPECT_EQ(k, 1u);
      Factored h = w.factored();
      EXPECT_LE(h.window(), L.m);
      EXPECT_EQ(certify(h, p, q), std::make_pair(true, false)) << p.shape.to_string() << " vs " << q.shape.to_string();
      ++separated;
    }
  EXPECT_GE(separated, 10);
}
