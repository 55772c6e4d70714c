#include <gtest/gtest.h>

#include "sprimes/generators.hpp"

using namespace sprimes;

namespace {

SPrimeData P(std::vector<PartSize> parts, std::vector<std::uint32_t> w, std::vector<const char*> z) {
  std::vector<Poly> g;
  for (const char* s : z) g.push_back(parse(s));
  return make_sprime(parts, w, g);
}

WeightedShape S(std::vector<PartSize> p, std::vector<std::uint32_t> w) { return make_shape(p, w); }

std::set<std::string> texts(const std::vector<Generator>& gens) {
  std::set<std::string> s;
  for (const auto& g : gens) s.insert(g.expand().sign_normalized().to_string());
  return s;
}

std::set<std::string> texts(std::initializer_list<const char*> polys) {
  std::set<std::string> s;
  for (const char* p : polys) s.insert(parse(p).sign_normalized().to_string());
  return s;
}

const char* kD3 = "(x1-x2)*(x1-x3)*(x2-x3)";
const char* kD5 =
    "(x1-x2)*(x1-x3)*(x1-x4)*(x1-x5)*(x2-x3)*(x2-x4)*(x2-x5)*(x3-x4)*(x3-x5)*(x4-x5)";

}  // namespace

TEST(GensG, Examples) {
  EXPECT_EQ(texts(gens_G(S({INF}, {2}))), texts({kD3, "(x1-x2)^3"}));
  EXPECT_EQ(texts(gens_G(S({INF, INF}, {2, 2}))),
            texts({kD5, "(x1-x2)*(x1-x3)*(x2-x3)*(x1-x4)^3*(x2-x4)^3*(x3-x4)^3", "((x1-x2)*(x1-x3)*(x2-x3))^3"}));
  EXPECT_EQ(texts(gens_G(S({INF}, {1}))), texts({"x1-x2"}));
}

TEST(GensH, ZeroIdealGivesNothing) {
  EXPECT_TRUE(gens_H(P({INF, INF}, {2, 2}, {})).empty());
}

TEST(GensH, PointOnLineAreMembers) {
  auto p = P({INF}, {2}, {"t1"});
  auto h = gens_H(p);
  EXPECT_FALSE(h.empty());
  MembershipOracle oracle(p);
  for (const auto& g : h) EXPECT_TRUE(oracle.member(g.factored)) << g.expand().to_string();
}

TEST(FullGens, CircleFive) {
  auto circle = P({INF, INF}, {2, 2}, {"t1^2+t2^2-1"});
  auto gens = full_gens(circle);
  auto want = texts({kD5, "(x1-x2)*(x1-x3)*(x2-x3)*(x1-x4)^3*(x2-x4)^3*(x3-x4)^3",
                     "((x1-x2)*(x1-x3)*(x2-x3))^3",
                     "(x1-x2)*(x1-x3)*(x2-x3)*(x1^2+x2^2-1)^4*(x1^2+x3^2-1)^4*(x2^2+x3^2-1)^4",
                     "(x1-x2)^3*(x1^2+x2^2-1)^4"});
  EXPECT_EQ(texts(gens), want);
  auto h = gens_H(circle);
  auto ht = texts(h);
  EXPECT_TRUE(ht.count(parse("(x1-x2)^3*(x1^2+x2^2-1)^4").to_string()));
  EXPECT_TRUE(ht.count(parse("(x1-x2)*(x1-x3)*(x2-x3)*(x1^2+x2^2-1)^4*(x1^2+x3^2-1)^4*(x2^2+x3^2-1)^4").to_string()));
}

TEST(FullGens, SmallShapes) {
  EXPECT_EQ(texts(full_gens(P({INF}, {2}, {}))), texts({kD3, "(x1-x2)^3"}));
  EXPECT_EQ(texts(full_gens(P({INF}, {1}, {}))), texts({"x1-x2"}));
}

TEST(FullGens, Deterministic) {
  auto p = P({INF, INF}, {1, 1}, {"t1+t2-1"});
  auto a = full_gens(p), b = full_gens(p);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].expand(), b[i].expand());
}

TEST(VerifyGens, AllMembers) {
  for (const auto& p : {P({INF, INF}, {2, 2}, {"t1^2+t2^2-1"}), P({INF}, {2}, {}), P({INF}, {1}, {}),
                        P({INF, INF}, {1, 1}, {"t1+t2"}), P({INF, fin(1)}, {2, 1}, {"t2-1"})}) {
    auto r = verify_gens(p);
    EXPECT_FALSE(r.entries.empty());
    EXPECT_TRUE(r.all_members()) << p.shape.to_string();
  }
}

TEST(GensProperties, SeparatingPowerOnCircle) {
  // every target outside the closure contains no full generating set
  auto circle = P({INF, INF}, {2, 2}, {"t1^2+t2^2-1"});
  auto gens = full_gens(circle);
  std::vector<SPrimeData> targets;
  for (const auto& mu : psi0(circle.shape)) {
    std::vector<Poly> z;
    for (std::uint32_t b = 1; b <= mu.size(); ++b) z.push_back(var(tv(b)) - Poly(static_cast<long>(b)));
    targets.push_back(make_sprime(mu, z));
  }
  // points off the diagonal images of the circle
  targets.push_back(P({INF}, {3}, {"t1"}));
  targets.push_back(P({INF}, {4}, {"t1-1"}));
  targets.push_back(P({INF, fin(1)}, {2, 1}, {"t1", "t2-2"}));
  targets.push_back(P({INF, INF}, {1, 1}, {"t1-1", "t2-1/2"}));
  targets.push_back(P({INF, INF}, {2, 2}, {"t1-3", "t2"}));
  for (const auto& q : targets) {
    ASSERT_FALSE(contains(circle, q)) << q.shape.to_string();
    MembershipOracle oracle(q);
    bool separated = false;
    for (const auto& g : gens) separated = separated || !oracle.member(g.factored);
    EXPECT_TRUE(separated) << q.shape.to_string();
  }
}
