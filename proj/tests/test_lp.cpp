#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace torsep;

TEST(Lp, FeasibleSystemGivesExactSolution) {
  LinearSystem sys;
  sys.num_vars = 2;
  sys.add_equality({Rational(1), Rational(1)}, 1);
  sys.add_inequality({Rational(1), Rational(-1)}, Rational(1, 3));
  auto res = lp_feasible(sys);
  ASSERT_TRUE(res.feasible());
  EXPECT_TRUE(verify_solution(sys, res.solution));
}

TEST(Lp, InfeasibleSystemGivesFarkasVector) {
  LinearSystem sys;
  sys.num_vars = 1;
  sys.add_inequality({Rational(1)}, 1);
  sys.add_inequality({Rational(-1)}, 0);
  auto res = lp_feasible(sys);
  ASSERT_FALSE(res.feasible());
  EXPECT_TRUE(verify_farkas(sys, res.certificate));
}

TEST(Lp, NoConstraintsIsFeasible) {
  LinearSystem sys;
  sys.num_vars = 3;
  EXPECT_TRUE(lp_feasible(sys).feasible());
}

TEST(Lp, RandomSystemsAlwaysCertified) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> e(-3, 3);
  int infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    LinearSystem sys;
    sys.num_vars = 1 + rng() % 3;
    const std::size_t me = rng() % 3, mi = rng() % 4;
    for (std::size_t r = 0; r < me + mi; ++r) {
      RatVector row(sys.num_vars);
      for (auto& x : row) x = e(rng);
      if (r < me) sys.add_equality(row, e(rng));
      else sys.add_inequality(row, e(rng));
    }
    auto res = lp_feasible(sys);
    if (res.feasible()) {
      EXPECT_TRUE(verify_solution(sys, res.solution));
    } else {
      ++infeasible;
      EXPECT_TRUE(verify_farkas(sys, res.certificate));
    }
  }
  EXPECT_GT(infeasible, 0);
}

TEST(Lp, ConeMembershipMatchesCramerOracle) {
  std::mt19937_64 rng(23);
  int inside = 0, outside = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t d = 1 + rng() % 3;
    const std::size_t g = 1 + rng() % 4;
    auto gens = oracle::random_weights(rng, d, g, -2, 2).weights();
    auto v = oracle::random_weights(rng, d, 1, -3, 3)[0];
    auto cm = cone_member(v, gens);
    EXPECT_EQ(cm.inside, oracle::cramer_cone_member(v, gens)) << "trial " << trial;
    EXPECT_TRUE(verify_membership(cm, v, gens));
    (cm.inside ? inside : outside)++;
  }
  EXPECT_GT(inside, 50);
  EXPECT_GT(outside, 50);
}

TEST(Lp, MembershipExamples) {
  std::vector<IntVector> gens = {int_vector({2, 0}), int_vector({0, 2})};
  auto in = cone_member(int_vector({1, 1}), gens);
  ASSERT_TRUE(in.inside);
  EXPECT_EQ(in.coefficients, (RatVector{Rational(1, 2), Rational(1, 2)}));
  auto out = cone_member(int_vector({-1, -1}), gens);
  ASSERT_FALSE(out.inside);
  EXPECT_LT(dot(out.separator, int_vector({-1, -1})), 0);
}
