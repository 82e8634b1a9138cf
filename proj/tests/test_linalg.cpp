#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace torsep;

TEST(Linalg, KernelOfSingleRelation) {
  auto w = oracle::ws(2, {{1, 1}, {2, 0}, {0, 2}});
  auto k = kernel_lattice(w.matrix());
  ASSERT_EQ(k.rank(), 1u);
  EXPECT_EQ(k.basis[0], int_vector({2, -1, -1}));
}

TEST(Linalg, KernelOfFullRankIsTrivial) {
  auto w = oracle::ws(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(kernel_lattice(w.matrix()).rank(), 0u);
}

TEST(Linalg, KernelOfEmptyMatrixIsEverything) {
  IntMatrix a(0, 3);
  auto k = kernel_lattice(a);
  EXPECT_EQ(k.basis, (std::vector<IntVector>{int_vector({1, 0, 0}), int_vector({0, 1, 0}), int_vector({0, 0, 1})}));
}

TEST(Linalg, KernelMatchesBoxEnumeration) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + rng() % 2;
    const std::size_t n = 2 + rng() % 3;
    auto w = oracle::random_weights(rng, d, n, -2, 2);
    auto k = kernel_lattice(w.matrix());
    for (const auto& b : k.basis) EXPECT_TRUE(oracle::in_kernel(w, b));
    // every small kernel vector has integer coordinates in the basis
    for (const auto& c : oracle::kernel_vectors(w, 2)) EXPECT_TRUE(lattice_coordinates(k, c).has_value());
    EXPECT_EQ(k.rank() + rank(w.matrix()), n);
  }
}

TEST(Linalg, HermiteFormIsCanonical) {
  std::vector<IntVector> a = {int_vector({2, 4, 6}), int_vector({1, 1, 1})};
  std::vector<IntVector> b = {int_vector({3, 5, 7}), int_vector({-1, -1, -1})};
  EXPECT_EQ(hermite_normal_form(a, 3), hermite_normal_form(b, 3));
  auto h = hermite_normal_form(a, 3);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_GT(h[0][0], 0);
  EXPECT_EQ(h[1][0], 0);
}

TEST(Linalg, DeterminantMatchesLeibniz) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> e(-4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    IntMatrix m(n, n);
    std::vector<RatVector> q(n, RatVector(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = e(rng);
        q[i][j] = m(i, j);
      }
    EXPECT_EQ(Rational(determinant(m)), oracle::leibniz_det(q));
  }
}

TEST(Linalg, RankMatchesMinors) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t d = 1 + rng() % 3;
    const std::size_t n = 1 + rng() % 4;
    auto w = oracle::random_weights(rng, d, n, -2, 2);
    EXPECT_EQ(rank_of_vectors(w.weights(), d), oracle::minor_rank(w.weights(), d));
  }
}

TEST(Linalg, IndependentRowsGiveNonzeroMinor) {
  auto w = oracle::ws(3, {{1, 0, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}});
  auto a = w.matrix();
  auto rows = independent_rows(a);
  EXPECT_EQ(rows.size(), 3u);
}

TEST(Linalg, SolveDetectsInconsistency) {
  IntMatrix m(2, 1);
  m(0, 0) = 1;
  m(1, 0) = 1;
  EXPECT_FALSE(solve_full_column_rank(m, {Rational(1), Rational(2)}).has_value());
  auto x = solve_full_column_rank(m, {Rational(3), Rational(3)});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], 3);
}
