#include <gtest/gtest.h>

#include <map>
#include <tuple>

#include "energylab/constructors.hpp"
#include "energylab/energy.hpp"
#include "energylab/error.hpp"
#include "oracle.hpp"

using namespace energylab;

TEST(Constructors, Subspace) {
  EXPECT_EQ(subspace(3, 0).elements(), (std::vector<Element>{0}));
  EXPECT_EQ(subspace(3, 3).size(), 8u);
  const GSet h = subspace(4, 2);
  EXPECT_EQ(h.elements(), (std::vector<Element>{0, 1, 2, 3}));
  EXPECT_EQ(energy_k(h, 2).value, 64);
  EXPECT_THROW(subspace(3, 4), Error);
}

TEST(Constructors, Dissociated) {
  const Group g = Group::make({2, 2, 2, 2});
  EXPECT_TRUE(is_dissociated(GSet::from_elements(g, {1, 2, 4})));
  EXPECT_FALSE(is_dissociated(GSet::from_elements(g, {1, 2, 3})));
  EXPECT_TRUE(is_dissociated(GSet(g)));
  // In Z_7, 1 + 2 + 4 = 0 collides with the empty sum.
  EXPECT_FALSE(is_dissociated(GSet::from_elements(Group::make({7}), {1, 2, 4})));
  EXPECT_TRUE(is_dissociated(GSet::from_elements(Group::make({16}), {1, 2, 4})));
}

TEST(Constructors, HPlusLambdaGolden) {
  const HPlusLambda parts = h_plus_lambda_parts(6, 2, 4);
  EXPECT_EQ(parts.a.size(), 16u);
  EXPECT_EQ(parts.h.size(), 4u);
  EXPECT_EQ(parts.lambda.size(), 4u);
  EXPECT_EQ(energy_k(parts.a, 2).value, 2560);
  EXPECT_EQ(energy_k(parts.a, 3).value, 28672);
  EXPECT_EQ(energy_k(parts.a, 2).value, oracle::energy_quadruples(parts.a));
  // Slice sizes: 16 on the 4 shifts of H, 8 on 24 further shifts.
  const auto c = oracle::correlation(parts.a, parts.a);
  std::map<std::int64_t, int> hist;
  for (auto v : c) {
    if (v) ++hist[v];
  }
  EXPECT_EQ(hist, (std::map<std::int64_t, int>{{8, 24}, {16, 4}}));
  EXPECT_EQ(h_plus_lambda(6, 2, 1), parts.h);
}

TEST(Constructors, HPlusLambdaSumsetSliceBound) {
  for (auto [n, dim, k] : {std::tuple{6, 2, 4}, {8, 3, 5}, {10, 4, 6}}) {
    const HPlusLambda p = h_plus_lambda_parts(n, dim, k);
    const GSet s = sumset(p.a, p.a);
    std::size_t total = 0;
    s.for_each([&](Element x) { total += sumset(p.a, slice(p.a, x)).size(); });
    EXPECT_LE(total, p.h.size() * s.size() + 2 * p.a.size() * s.size());
  }
}

TEST(Constructors, PureLambdaSlices) {
  const GSet l = h_plus_lambda(8, 0, 6);
  const auto c = oracle::correlation(l, l);
  for (Element s = 1; s < c.size(); ++s) EXPECT_LE(c[s], 2);
  const auto a = static_cast<std::int64_t>(l.size());
  EXPECT_LE(energy_k(l, 2).value, Int(a * a + 2 * (a * a - a)));
}

TEST(Constructors, ArithmeticProgressions) {
  const GSet ap = arithmetic_progression(101, 0, 1, 8);
  EXPECT_EQ(ap.elements(), (std::vector<Element>{0, 1, 2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(difference_set(ap, ap).size(), 15u);
  EXPECT_EQ(arithmetic_progression(7, 0, 1, 3).elements(), (std::vector<Element>{0, 1, 2}));
  const GSet sub = arithmetic_progression(12, 0, 4, 3);
  EXPECT_EQ(sub.elements(), (std::vector<Element>{0, 4, 8}));
  EXPECT_EQ(energy_k(sub, 2).value, 27);
  EXPECT_EQ(arithmetic_progression(10, 7, -3, 2).elements(), (std::vector<Element>{4, 7}));
}

TEST(Constructors, RandomSetIsFrozen) {
  const Group g = Group::make({101});
  EXPECT_EQ(random_set(g, 1.0, 3), GSet::whole(g));
  EXPECT_THROW(random_set(g, 0.0, 3), Error);
  const std::vector<Element> golden = {1,  6,  13, 15, 24, 27, 30, 31, 36, 37, 42, 43, 53, 59,
                                       60, 61, 69, 74, 75, 77, 82, 83, 85, 88, 91, 95, 98};
  EXPECT_EQ(random_set(g, 0.2, 42).elements(), golden);
  EXPECT_EQ(random_set(g, 0.2, 42), random_set(g, 0.2, 42));
  EXPECT_NE(random_set(g, 0.2, 42), random_set(g, 0.2, 43));
}

TEST(Constructors, CosetUnion) {
  const GSet a = coset_union(6, {2, 2, 2});
  EXPECT_EQ(a.size(), 10u);
  EXPECT_THROW(coset_union(4, {3, 3}), Error);
}
