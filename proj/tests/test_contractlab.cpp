#include <gtest/gtest.h>

#include <random>

#include "sprimes/contractlab.hpp"

using namespace sprimes;

TEST(ContractIdeal, Examples) {
  auto a = contract_ideal<Rational>({1, 1});
  EXPECT_TRUE(ideal_equal(a, Ideal<Rational>({parse("x1-x2")}, {xv(1), xv(2)})));
  auto b = contract_ideal<Rational>({2, 2});
  ASSERT_EQ(b.grevlex_basis()->elements.size(), 1u);
  EXPECT_EQ(b.grevlex_basis()->elements[0], parse("(x1-x2)^3"));
  using F2 = ModP<2>;
  auto c = contract_ideal<F2>({2, 2});
  ASSERT_EQ(c.grevlex_basis()->elements.size(), 1u);
  EXPECT_EQ(c.grevlex_basis()->elements[0], parse<F2>("(x1-x2)^2"));
  EXPECT_TRUE(contract_ideal<Rational>({3}).is_zero_ideal());
  EXPECT_THROW(contract_ideal<Rational>({}), std::invalid_argument);
}

TEST(VerifyContract, CharZero) {
  for (auto q : std::vector<std::vector<std::uint32_t>>{{1, 1}, {2, 2}, {2, 2, 2}, {1, 2}, {3, 3}, {1, 2, 3}}) {
    auto r = verify_contract(q, 0);
    EXPECT_TRUE(r.predicted_in_contraction);
    EXPECT_TRUE(r.verified()) << r.basis.size();
  }
  EXPECT_EQ(verify_contract({1, 2}, 0).predicted, std::vector<std::string>{"x1^2 - 2*x1*x2 + x2^2"});
}

TEST(VerifyContract, PositiveCharacteristic) {
  EXPECT_TRUE(verify_contract({2, 2}, 2).verified());
  EXPECT_TRUE(verify_contract({2, 2, 2}, 2).verified());
  EXPECT_TRUE(verify_contract({3, 3}, 3).verified());
  EXPECT_THROW(verify_contract({1, 2}, 2), std::invalid_argument);
  EXPECT_THROW(verify_contract({3, 3}, 2), std::invalid_argument);
  EXPECT_THROW(verify_contract({2, 2}, 4), std::invalid_argument);
}

TEST(VerifyContract, WrongPredictionIsRejected) {
  // char 0 with exponent q rather than 2q-1 is strictly larger than the contraction
  Ideal<Rational> got = contract_ideal<Rational>({2, 2});
  EXPECT_FALSE(got.contains(parse("(x1-x2)^2")));
}

TEST(DerivativeCriterion, AgreesWithElimination) {
  std::mt19937 rng(61);
  std::uniform_int_distribution<int> coef(-2, 2), pick(1, 3), deg(0, 3);
  auto random_poly = [&](std::uint32_t n) {
    Poly p;
    for (int k = 0; k < 3; ++k) {
      Poly m(coef(rng));
      int d = deg(rng);
      for (int j = 0; j < d; ++j) m = m * var(xv(static_cast<std::uint32_t>(1 + (pick(rng) - 1) % n)));
      p += m;
    }
    return p;
  };
  std::vector<std::vector<std::uint32_t>> qs{{2, 2}, {1, 2}, {2, 2, 2}, {1, 2, 2}, {3, 1}};
  int members = 0, others = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& q = qs[static_cast<std::size_t>(trial) % qs.size()];
    const auto n = static_cast<std::uint32_t>(q.size());
    Ideal<Rational> c = contract_ideal<Rational>(q);
    Poly f = random_poly(n);
    if (trial % 2) {
      const auto& g = c.generators();
      f = f * g[static_cast<std::size_t>(trial / 2) % g.size()] + random_poly(n) * g[0];
    }
    bool in = c.contains(f);
    EXPECT_EQ(derivative_criterion(f, q), in) << f.to_string();
    (in ? members : others)++;
  }
  EXPECT_GT(members, 40);
  EXPECT_GT(others, 10);
}
