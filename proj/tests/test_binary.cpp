#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace torsep;

namespace {

BinaryForm linear(long a, long b) { return BinaryForm(1, {Rational(a), Rational(b)}); }

// Product of random pairwise non-proportional linear forms with chosen
// multiplicities; the oracle answer is the number of exponent-one factors.
struct Product {
  BinaryForm form;
  std::size_t simple = 0;
};

Product random_product(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> coef(-4, 4);
  std::vector<std::pair<long, long>> used;
  auto proportional = [](std::pair<long, long> p, std::pair<long, long> q) {
    return p.first * q.second == p.second * q.first;
  };
  Product out{BinaryForm(0, {Rational(1 + static_cast<long>(rng() % 3))}), 0};
  const std::size_t k = 1 + rng() % 4;
  while (used.size() < k) {
    std::pair<long, long> l{coef(rng), coef(rng)};
    if (l.first == 0 && l.second == 0) continue;
    if (std::any_of(used.begin(), used.end(), [&](auto q) { return proportional(l, q); })) continue;
    used.push_back(l);
    const std::size_t m = 1 + rng() % 3;
    if (m == 1) ++out.simple;
    out.form = multiply(out.form, power(linear(l.first, l.second), m));
  }
  return out;
}

}  // namespace

TEST(Binary, Examples) {
  auto f = parse_binary_form("x*y^5");
  EXPECT_TRUE(decide_sp_binary_orbit(f));
  EXPECT_EQ(simple_linear_factor_count(f), 1u);

  auto g = parse_binary_form("x^2*y^2");
  EXPECT_FALSE(decide_sp_binary_orbit(g));
  auto dec = squarefree_multiplicity_parts(g);
  ASSERT_EQ(dec.parts.size(), 1u);
  EXPECT_EQ(dec.parts[0].multiplicity, 2u);
  EXPECT_EQ(dec.parts[0].part, parse_binary_form("x*y"));

  auto h = parse_binary_form("(x^2+y^2)^2");
  EXPECT_FALSE(decide_sp_binary_orbit(h));
  EXPECT_EQ(simple_linear_factor_count(h), 0u);
  EXPECT_EQ(reconstruct(squarefree_multiplicity_parts(h)), h);

  EXPECT_TRUE(decide_sp_binary_orbit(parse_binary_form("x^2 + y^2")));
  EXPECT_EQ(simple_linear_factor_count(parse_binary_form("x*(y+3x)^2")), 1u);
}

TEST(Binary, PureYPower) {
  auto f = parse_binary_form("2y^3");
  auto dec = squarefree_multiplicity_parts(f);
  ASSERT_EQ(dec.parts.size(), 1u);
  EXPECT_EQ(dec.parts[0].multiplicity, 3u);
  EXPECT_EQ(reconstruct(dec), f);
  EXPECT_FALSE(decide_sp_binary_orbit(f));
  EXPECT_TRUE(decide_sp_binary_orbit(parse_binary_form("y")));
}

TEST(Binary, RandomProductsOfLinearForms) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 300; ++trial) {
    auto p = random_product(rng);
    EXPECT_EQ(simple_linear_factor_count(p.form), p.simple) << to_string(p.form);
    EXPECT_EQ(decide_sp_binary_orbit(p.form), p.simple > 0) << to_string(p.form);
    EXPECT_EQ(reconstruct(squarefree_multiplicity_parts(p.form)), p.form);
  }
}

TEST(Binary, InvariantUnderGl2) {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<long> e(-3, 3);
  for (int trial = 0; trial < 150; ++trial) {
    auto p = random_product(rng);
    std::array<Rational, 4> g;
    do {
      for (auto& x : g) x = e(rng);
    } while (g[0] * g[3] - g[1] * g[2] == 0);
    auto q = substitute(p.form, g);
    EXPECT_EQ(decide_sp_binary_orbit(q), decide_sp_binary_orbit(p.form));
    EXPECT_EQ(simple_linear_factor_count(q), p.simple);
  }
}

TEST(Binary, ParserAcceptsNotation) {
  EXPECT_EQ(parse_binary_form("x^2 - 2xy + y^2"), parse_binary_form("(x-y)^2"));
  EXPECT_EQ(parse_binary_form("x y/2"), BinaryForm(2, {Rational(0), Rational(1, 2), Rational(0)}));
  EXPECT_EQ(parse_binary_form("-(x)"), linear(-1, 0));
  EXPECT_EQ(to_string(parse_binary_form("x^3 - 3*x*y^2")), "x^3 - 3*x*y^2");
}

TEST(Binary, ParserErrors) {
  EXPECT_THROW(parse_binary_form("x^2 + y"), InputError);
  EXPECT_THROW(parse_binary_form("x - x"), InputError);
  EXPECT_THROW(parse_binary_form("3"), InputError);
  EXPECT_THROW(parse_binary_form("x + z"), InputError);
  EXPECT_THROW(parse_binary_form("(x + y"), InputError);
  EXPECT_THROW(parse_binary_form("x / y"), InputError);
  try {
    parse_binary_form("x + $");
    FAIL();
  } catch (const InputError& err) {
    EXPECT_NE(std::string(err.what()).find("column 5"), std::string::npos) << err.what();
  }
}
