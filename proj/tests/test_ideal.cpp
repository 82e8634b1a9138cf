#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"

using namespace torsep;

namespace {

const auto kNilpotent = oracle::ws(2, {{1, 1}, {2, 0}, {0, 2}});
const auto kFive = oracle::ws(3, {{1, 0, 0}, {1, 1, 0}, {0, 1, 2}, {0, 2, 1}, {1, 0, 1}});

bool has(const std::vector<Binomial>& bs, const IntVector& c) {
  auto b = Binomial::from_lattice_vector(c);
  return std::find(bs.begin(), bs.end(), b) != bs.end();
}

// Minimal-support kernel vectors found in a box, made primitive.
std::set<IntVector> box_circuits(const WeightSystem& w, long bound) {
  auto all = oracle::kernel_vectors(w, bound);
  auto support = [](const IntVector& c) {
    IndexSet s;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) s.push_back(i);
    return s;
  };
  std::set<IntVector> out;
  for (const auto& c : all) {
    if (is_zero(c)) continue;
    auto sc = support(c);
    bool minimal = std::none_of(all.begin(), all.end(), [&](const IntVector& o) {
      if (is_zero(o)) return false;
      auto so = support(o);
      return so.size() < sc.size() && std::includes(sc.begin(), sc.end(), so.begin(), so.end());
    });
    if (minimal) out.insert(primitive(c));
  }
  return out;
}

}  // namespace

TEST(Ideal, SingleRelationOctant) {
  LatticeBasis w{3, {int_vector({2, -1, -1})}};
  auto gens = octant_semigroup_generators(w, Octant{3, {0}});
  EXPECT_EQ(gens, (std::vector<IntVector>{int_vector({2, -1, -1})}));
}

TEST(Ideal, TrivialLatticeHasNoGenerators) {
  LatticeBasis w{3, {}};
  EXPECT_TRUE(octant_semigroup_generators(w, Octant{3, {0, 1}}).empty());
}

TEST(Ideal, FiveCharacterOctant) {
  auto w = kernel_lattice(kFive.matrix());
  auto gens = octant_semigroup_generators(w, Octant{5, {0, 1, 2}});
  EXPECT_NE(std::find(gens.begin(), gens.end(), int_vector({0, 1, 1, -1, -1})), gens.end());
}

TEST(Ideal, NilpotentBinomial) {
  auto bs = binomial_generators(kNilpotent);
  ASSERT_EQ(bs.size(), 1u);
  EXPECT_EQ(to_string(bs[0]), "x1^2 - x2*x3");
}

TEST(Ideal, CoordinateSpaceHasEmptyIdeal) {
  EXPECT_TRUE(binomial_generators(oracle::ws(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).empty());
}

TEST(Ideal, FiveCharacterSystem) {
  auto bs = binomial_generators(kFive);
  EXPECT_TRUE(spans_kernel(bs, kFive));
  EXPECT_TRUE(has(bs, int_vector({3, -1, 1, 0, -2})));
  EXPECT_TRUE(has(bs, int_vector({3, -2, 0, 1, -1})));
  EXPECT_TRUE(has(bs, int_vector({0, 1, 1, -1, -1})));
  EXPECT_TRUE(binomial_scan(bs).compatible);
}

TEST(Ideal, ScanForms) {
  auto f2 = binomial_scan({Binomial::from_lattice_vector(int_vector({2, -1, -1}))});
  EXPECT_FALSE(f2.compatible);
  EXPECT_EQ(f2.form, 2);
  EXPECT_EQ(f2.index, 0u);
  auto f1 = binomial_scan({Binomial::from_lattice_vector(int_vector({1, 1}))});
  EXPECT_FALSE(f1.compatible);
  EXPECT_EQ(f1.form, 1);
  EXPECT_TRUE(binomial_scan({Binomial::from_lattice_vector(int_vector({2}))}).compatible);
  EXPECT_TRUE(binomial_scan({}).compatible);
}

TEST(Ideal, ElementaryVectorsMatchBoxSearch) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + rng() % 2;
    const std::size_t n = 2 + rng() % 3;
    auto w = oracle::random_weights(rng, d, n, -1, 1);
    auto ev = elementary_vectors(kernel_lattice(w.matrix()));
    std::set<IntVector> got(ev.begin(), ev.end());
    // with entries in [-1,1] and n <= 4 every circuit fits in the box
    EXPECT_EQ(got, box_circuits(w, 3)) << "trial " << trial;
  }
}

TEST(Ideal, GeneratorsSpanKernelAndContainSmallOctantVectors) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 1 + rng() % 3;
    const std::size_t n = 2 + rng() % 3;
    auto w = oracle::random_weights(rng, d, n, -2, 2);
    auto bs = binomial_generators(w);
    EXPECT_TRUE(spans_kernel(bs, w));
    for (const auto& b : bs) EXPECT_TRUE(b.in_kernel(w.matrix()));
    EXPECT_TRUE(std::is_sorted(bs.begin(), bs.end()));
    // every kernel vector in the box is a nonnegative integer combination of
    // generators from its own octant; check the indecomposable ones appear
    auto kv = oracle::kernel_vectors(w, 2);
    for (const auto& c : kv) {
      if (is_zero(c)) continue;
      bool decomposable = std::any_of(kv.begin(), kv.end(), [&](const IntVector& a) {
        if (is_zero(a) || a == c) return false;
        IntVector rest = c - a;
        if (is_zero(rest)) return false;
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (c[i] >= 0 ? (a[i] < 0 || rest[i] < 0) : (a[i] > 0 || rest[i] > 0)) return false;
        }
        return true;
      });
      if (!decomposable) {
        EXPECT_TRUE(has(bs, c)) << "trial " << trial << " vector " << to_string_vec(c);
      }
    }
  }
}

TEST(Ideal, ExactOrbitPointEvaluation) {
  auto x = orbit_point(kNilpotent, {Rational(2), Rational(3)});
  EXPECT_EQ(x, (RatVector{Rational(6), Rational(4), Rational(9)}));
  EXPECT_EQ(evaluate(binomial_generators(kNilpotent)[0], x), 0);
}

TEST(Ideal, VanishingOverFiniteField) {
  auto bs = binomial_generators(kFive);
  auto rep = verify_vanishing(bs, kFive, 100, 10007, 1);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.evaluations, 100 * bs.size());
  EXPECT_TRUE(verify_vanishing({}, kFive, 5, 10007, 1).passed());
  // a binomial off the toric ideal is caught
  auto bad = Binomial::from_lattice_vector(int_vector({1, -1, 0, 0, 0}));
  EXPECT_FALSE(verify_vanishing({bad}, kFive, 20, 10007, 1).passed());
  EXPECT_THROW(verify_vanishing(bs, kFive, 10, 10005, 1), InputError);
  EXPECT_THROW(verify_vanishing(bs, kFive, 10, 2, 1), InputError);
}

TEST(Ideal, NegativeWeightsVanish) {
  auto w = oracle::ws(1, {{1}, {-1}, {2}, {-2}, {0}});
  auto bs = binomial_generators(w);
  EXPECT_TRUE(spans_kernel(bs, w));
  EXPECT_TRUE(verify_vanishing(bs, w, 30, 101, 7).passed());
}
