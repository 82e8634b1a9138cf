#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace torsep;

TEST(Cone, HomogenizeAppendsOne) {
  auto w = oracle::ws(2, {{1, 2}, {1, 1}, {3, 0}, {0, 2}});
  auto h = homogenize(w);
  EXPECT_EQ(h.dim(), 3u);
  EXPECT_EQ(h[0], int_vector({1, 2, 1}));
  EXPECT_EQ(h[3], int_vector({0, 2, 1}));
}

TEST(Cone, WeightSystemRejectsBadInput) {
  EXPECT_THROW(WeightSystem(2, {int_vector({1}), int_vector({2, 0})}), InputError);
  EXPECT_THROW(WeightSystem(2, {}), InputError);
  EXPECT_THROW(WeightSystem(0, {IntVector{}}), InputError);
}

TEST(Cone, StrictConvexity) {
  auto line = oracle::ws(1, {{1}, {-1}});
  auto sc = is_strictly_convex(line);
  EXPECT_FALSE(sc.pointed);
  EXPECT_TRUE(verify_strict_convexity(sc, line));

  auto ray = oracle::ws(1, {{0}, {3}});
  EXPECT_TRUE(is_strictly_convex(ray).pointed);
}

TEST(Cone, EdgeTestOnNilpotentExample) {
  auto w = oracle::ws(2, {{1, 1}, {2, 0}, {0, 2}});
  auto e0 = edge_test(w, 0);
  EXPECT_FALSE(e0.excludes_vector());
  EXPECT_TRUE(e0.excludes_negation());
  auto e1 = edge_test(w, 1);
  EXPECT_TRUE(e1.excludes_vector());
  EXPECT_TRUE(e1.excludes_negation());
}

TEST(Cone, MinimalFacesProjectiveLine) {
  // homogenized (0),(1),(2): minimal faces {1},{1,2,3},{3}
  auto h = homogenize(oracle::ws(1, {{0}, {1}, {2}}));
  EXPECT_EQ(minimal_face(h, 0).members, (IndexSet{0}));
  EXPECT_EQ(minimal_face(h, 1).members, (IndexSet{0, 1, 2}));
  EXPECT_EQ(minimal_face(h, 2).members, (IndexSet{2}));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(verify_minimal_face(minimal_face(h, i), h));
}

TEST(Cone, FacesOfNilpotentExample) {
  auto w = oracle::ws(2, {{1, 1}, {2, 0}, {0, 2}});
  auto lat = enumerate_faces(w);
  EXPECT_EQ(lat.index_sets(), (std::vector<IndexSet>{{}, {1}, {2}, {0, 1, 2}}));
}

TEST(Cone, FacesMatchFunctionalBoxSearchInThePlane) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t d = 1 + rng() % 2;
    const std::size_t n = 1 + rng() % 5;
    auto w = oracle::random_weights(rng, d, n, -2, 2);
    auto lat = enumerate_faces(w);
    auto sets = lat.index_sets();
    std::set<IndexSet> got(sets.begin(), sets.end());
    EXPECT_EQ(got, oracle::box_faces(w, 8)) << "trial " << trial;
    for (const auto& f : lat.faces) EXPECT_TRUE(verify_face(f, w));
  }
}

TEST(Cone, BoxFacesAreFoundInSpace) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    auto w = oracle::random_weights(rng, 3, 1 + rng() % 5, -2, 2);
    auto sets = enumerate_faces(w).index_sets();
    std::set<IndexSet> got(sets.begin(), sets.end());
    for (const auto& s : oracle::box_faces(w, 3)) EXPECT_TRUE(got.count(s)) << "trial " << trial;
  }
}

TEST(Cone, MinimalFaceIsIntersectionOfFaces) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t d = 1 + rng() % 3;
    auto w = oracle::random_weights(rng, d, 1 + rng() % 5, -2, 2);
    auto lat = enumerate_faces(w);
    for (std::size_t i = 0; i < w.size(); ++i) {
      auto mf = minimal_face(w, i);
      EXPECT_TRUE(verify_minimal_face(mf, w));
      EXPECT_EQ(mf.members, intersect_faces_containing(lat, i, w.size()));
    }
  }
}

TEST(Cone, GuardIsNamed) {
  std::vector<IntVector> w(14, int_vector({1}));
  try {
    enumerate_faces(WeightSystem(1, w));
    FAIL() << "guard did not trigger";
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.guard(), "max-n");
  }
}
