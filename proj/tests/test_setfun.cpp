#include <gtest/gtest.h>

#include "energylab/constructors.hpp"
#include "energylab/error.hpp"
#include "energylab/setfun.hpp"
#include "oracle.hpp"

using namespace energylab;

namespace {

GSet running() { return GSet::from_elements(Group::make({7}), {0, 1, 2}); }

std::vector<std::int64_t> lanes_of(const DenseFunc& f) {
  auto s = f.lanes();
  return {s.begin(), s.end()};
}

}  // namespace

TEST(GSet, BasicOperations) {
  const Group g = Group::make({7});
  GSet a = GSet::from_elements(g, {2, 0, 1});
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a.elements(), (std::vector<Element>{0, 1, 2}));
  a.insert(5);
  a.erase(0);
  EXPECT_EQ(a.elements(), (std::vector<Element>{1, 2, 5}));
  EXPECT_EQ(running().translate(6).elements(), (std::vector<Element>{0, 1, 6}));
  EXPECT_EQ(running().negate().elements(), (std::vector<Element>{0, 5, 6}));
  EXPECT_TRUE(GSet::from_elements(g, {1}).is_subset_of(running()));
  EXPECT_EQ(running().intersection_size(a), 2u);
  EXPECT_THROW(GSet::from_elements(g, {7}), Error);
  EXPECT_THROW(a.insert(7), Error);
  EXPECT_THROW(a.erase(9), Error);
}

TEST(Convolution, RunningExampleTables) {
  const DenseFunc a = DenseFunc::indicator(running());
  EXPECT_EQ(lanes_of(correlate(a, a)), (std::vector<std::int64_t>{3, 2, 1, 0, 0, 1, 2}));
  EXPECT_EQ(lanes_of(convolve(a, a)), (std::vector<std::int64_t>{1, 2, 3, 2, 1, 0, 0}));
}

TEST(Convolution, SubgroupIdempotence) {
  const GSet h = subspace(5, 3);
  const auto c = correlation_counts(h, h);
  for (Element x = 0; x < h.group().size(); ++x) EXPECT_EQ(c[x], h.contains(x) ? 8 : 0);
}

TEST(Convolution, PathsAgreeWithBruteForce) {
  for (auto factors : std::vector<std::vector<std::uint32_t>>{{101}, {2, 2, 2, 2, 2, 2}, {6, 10}}) {
    const Group g = Group::make(factors);
    const GSet a = random_set(g, 0.3, 5);
    const GSet b = random_set(g, 0.2, 6);
    const auto conv = oracle::convolution(a, b);
    const auto corr = oracle::correlation(a, b);
    const DenseFunc fa = DenseFunc::indicator(a);
    const DenseFunc fb = DenseFunc::indicator(b);
    for (ConvolutionPath p : {ConvolutionPath::Direct, ConvolutionPath::Transform, ConvolutionPath::Auto}) {
      EXPECT_EQ(lanes_of(convolve(fa, fb, p)), conv);
      EXPECT_EQ(lanes_of(correlate(fa, fb, p)), corr);
    }
    EXPECT_EQ(convolution_counts(a, b), conv);
    EXPECT_EQ(correlation_counts(a, b), corr);
    const auto raw = convolve_transform_raw(fa, fb);
    for (std::size_t i = 0; i < raw.size(); ++i) EXPECT_NEAR(raw[i], static_cast<double>(conv[i]), 1e-6);
  }
}

TEST(Convolution, SignedAndWideValues) {
  const Group g = Group::make({5});
  const DenseFunc f = DenseFunc::integer(g, {3, -1, 0, 2, -4});
  const DenseFunc h = DenseFunc::integer(g, {1, 0, -2, 0, 5});
  const DenseFunc direct = convolve(f, h, ConvolutionPath::Direct);
  const DenseFunc transform = convolve(f, h, ConvolutionPath::Transform);
  EXPECT_EQ(direct, transform);
  for (Element x = 0; x < 5; ++x) {
    std::int64_t acc = 0;
    for (Element y = 0; y < 5; ++y) acc += f.lanes()[y] * h.lanes()[g.sub(x, y)];
    EXPECT_EQ(direct.exact(x), acc);
  }
  // Values near 2^62 force the arbitrary-precision lanes.
  const std::int64_t big = std::int64_t{1} << 62;
  const DenseFunc w = DenseFunc::integer(g, {big, big, 0, 0, 0});
  const DenseFunc ww = convolve(w, w);
  EXPECT_EQ(ww.kind(), DenseFunc::Kind::Wide);
  EXPECT_EQ(ww.exact(1), Int(2) * Int(big) * Int(big));
}

TEST(Convolution, SigmaAndGeneralized) {
  EXPECT_EQ(sigma_k(running(), 2), 1);
  EXPECT_EQ(sigma_k(running(), 3), 1);
  const GSet h = subspace(4, 2);
  EXPECT_EQ(sigma_k(h, 2), 4);
  const GSet r = random_set(Group::make({31}), 0.3, 9);
  for (int k = 1; k <= 4; ++k) EXPECT_EQ(sigma_k(r, k), oracle::sigma(r, k));

  const DenseFunc a = DenseFunc::indicator(running());
  const DenseFunc two[] = {a, a};
  const Element x1[] = {1};
  EXPECT_EQ(generalized_convolution(two, x1), 2);
  const DenseFunc three[] = {a, a, a};
  const Element x2[] = {1, 2};
  EXPECT_EQ(generalized_convolution(three, x2), 1);
}

TEST(Slices, RunningExample) {
  const GSet a = running();
  EXPECT_EQ(slice(a, a, ShiftTuple{{1}}).elements(), (std::vector<Element>{0, 1}));
  EXPECT_EQ(slice(a, a, ShiftTuple{{1, 2}}).elements(), (std::vector<Element>{0}));
  EXPECT_EQ(slice(a, ShiftTuple{}), a);
  const GSet h = subspace(4, 2);
  EXPECT_EQ(slice(h, Element{3}), h);
  // |A_s| = (A o A)(s).
  const GSet r = random_set(Group::make({2, 2, 2, 2, 2, 2}), 0.3, 2);
  const auto c = oracle::correlation(r, r);
  for (Element s = 0; s < 64; ++s) EXPECT_EQ(static_cast<std::int64_t>(slice(r, s).size()), c[s]);
}

TEST(Sumsets, RunningExample) {
  EXPECT_EQ(sumset(running(), running()).elements(), (std::vector<Element>{0, 1, 2, 3, 4}));
  EXPECT_EQ(difference_set(running(), running()).elements(), (std::vector<Element>{0, 1, 2, 5, 6}));
  const GSet h = subspace(5, 2);
  EXPECT_EQ(sumset(h, h), h);
}

TEST(DeltaSumset, RunningExampleBothPaths) {
  for (DeltaPath p : {DeltaPath::Direct, DeltaPath::Identity}) {
    EXPECT_EQ(delta_sumset_size(running(), 2, Sign::Minus, p), 19);
    EXPECT_EQ(delta_sumset_size(running(), 2, Sign::Plus, p), 19);
  }
  const GSet h = subspace(4, 2);
  EXPECT_EQ(delta_sumset_size(h, 2, Sign::Minus), 16);
  EXPECT_THROW(delta_sumset_size(running(), 3, Sign::Minus, DeltaPath::Direct), Error);
}

TEST(DeltaSumset, MatchesDistinctTupleCount) {
  for (auto factors : std::vector<std::vector<std::uint32_t>>{{23}, {2, 2, 2, 2, 2}, {3, 9}}) {
    const Group g = Group::make(factors);
    const GSet a = random_set(g, 0.3, 11);
    for (int n = 2; n <= 3; ++n) {
      EXPECT_EQ(delta_sumset_size(a, n, Sign::Minus), oracle::delta_sumset(a, n, true));
      EXPECT_EQ(delta_sumset_size(a, n, Sign::Plus), oracle::delta_sumset(a, n, false));
    }
  }
}

TEST(DeltaSumset, BudgetIsEnforced) {
  const GSet a = random_set(Group::make({101}), 0.3, 1);
  EXPECT_THROW(delta_sumset_size(a, 3, Sign::Minus, DeltaPath::Identity, 10), CapError);
}

TEST(Slices, EnumerationVisitsEveryNonemptyTuple) {
  const GSet a = random_set(Group::make({19}), 0.35, 4);
  std::size_t visited = 0;
  std::vector<std::vector<Element>> seen;
  for_each_nonempty_slice(a, 2, [&](const ShiftTuple& t, const GSet& s) {
    ++visited;
    EXPECT_FALSE(s.empty());
    EXPECT_EQ(s, slice(a, t));
    seen.push_back(t.shifts);
  });
  std::size_t expected = 0;
  for (Element s1 = 0; s1 < 19; ++s1)
    for (Element s2 = 0; s2 < 19; ++s2) expected += !slice(a, ShiftTuple{{s1, s2}}).empty();
  EXPECT_EQ(visited, expected);
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
}

TEST(KatzKoester, HoldsOnExamples) {
  EXPECT_TRUE(katz_koester_check(running(), ShiftTuple{{1}}));
  EXPECT_TRUE(katz_koester_check(running(), ShiftTuple{}));
  const GSet a = random_set(Group::make({2, 2, 2, 2, 2, 2, 2, 2}), 0.1, 3);
  for_each_nonempty_slice(a, 2, [&](const ShiftTuple& t, const GSet&) { EXPECT_TRUE(katz_koester_check(a, t)); });
}
