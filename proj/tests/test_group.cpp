#include <gtest/gtest.h>

#include <cstdlib>

#include "energylab/error.hpp"
#include "energylab/group.hpp"
#include "energylab/setfun.hpp"
#include "oracle.hpp"

using namespace energylab;

TEST(Group, SizesFromFactors) {
  EXPECT_EQ(Group::make({7}).size(), 7u);
  EXPECT_EQ(Group::make({2, 2, 2}).size(), 8u);
  EXPECT_EQ(Group::make({2, 3}).size(), 6u);
  EXPECT_TRUE(Group::make({2, 2, 2}).is_elementary_2());
  EXPECT_TRUE(Group::make({7}).is_cyclic());
}

TEST(Group, Arithmetic) {
  const Group z6 = Group::make({6});
  EXPECT_EQ(z6.add(4, 5), 3u);
  const Group f8 = Group::make({2, 2, 2});
  EXPECT_EQ(f8.add(0b101, 0b110), 0b011u);
  EXPECT_EQ(Group::make({7}).neg(2), 5u);
}

TEST(Group, MixedRadixMatchesCoordinates) {
  const Group g = Group::make({3, 4, 5});
  for (Element x = 0; x < g.size(); ++x) {
    for (Element y = 0; y < g.size(); y += 7) {
      const auto dx = g.decode(x);
      const auto dy = g.decode(y);
      std::vector<std::uint32_t> sum(3);
      const std::uint32_t n[3] = {3, 4, 5};
      for (int i = 0; i < 3; ++i) sum[i] = (dx[i] + dy[i]) % n[i];
      EXPECT_EQ(g.add(x, y), g.encode(sum));
      EXPECT_EQ(g.add(g.sub(x, y), y), x);
    }
    EXPECT_EQ(g.add(x, g.neg(x)), 0u);
  }
}

TEST(Group, ParseAndErrors) {
  EXPECT_EQ(Group::parse("2, 2,2").size(), 8u);
  EXPECT_THROW(Group::parse("2,x"), Error);
  EXPECT_THROW(Group::make({}), Error);
  EXPECT_THROW(Group::make({1}), Error);
  EXPECT_THROW(Group::make({7}).add(7, 0), Error);
  EXPECT_THROW(Group::make({1024, 1024}, 1u << 19), CapError);
}

TEST(Group, CapFromEnvironment) {
  ::setenv("ENERGY_LAB_MAX_N", "64", 1);
  EXPECT_THROW(Group::make({128}), CapError);
  EXPECT_NO_THROW(Group::make({64}));
  ::setenv("ENERGY_LAB_MAX_N", "junk", 1);
  EXPECT_THROW(Group::make({8}), Error);
  ::unsetenv("ENERGY_LAB_MAX_N");
  EXPECT_EQ(Group::configured_max_size(), Group::kDefaultMaxSize);
}

TEST(Fourier, PointMassIsFlat) {
  const Group g = Group::make({7});
  const Spectrum s = fourier(GSet::from_elements(g, {0}));
  for (const Complex& v : s.values) EXPECT_NEAR(std::abs(v - Complex(1, 0)), 0, 1e-12);
}

TEST(Fourier, SubgroupTransformIsSupportedOnAnnihilator) {
  const Group g = Group::make({2, 2, 2, 2});
  const GSet h = GSet::from_elements(g, {0, 1, 2, 3});
  const Spectrum s = fourier(h);
  for (Element xi = 0; xi < g.size(); ++xi) {
    // Annihilator of span(e1, e2): characters with the two low coordinates zero.
    const double expected = (xi & 3) == 0 ? 4.0 : 0.0;
    EXPECT_NEAR(s.values[xi].real(), expected, 1e-12);
    EXPECT_NEAR(s.values[xi].imag(), 0.0, 1e-12);
  }
}

TEST(Fourier, MatchesNaiveCharactersOnSeveralShapes) {
  for (auto factors : std::vector<std::vector<std::uint32_t>>{{7}, {2, 3}, {4, 2, 2}, {101}, {3, 5, 7}, {128}, {67, 2}}) {
    const Group g = Group::make(factors);
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = static_cast<double>((i * 37 + 11) % 13) - 6;
    const Spectrum fast = fourier(g, std::span<const double>(f));
    const auto slow = oracle::dft(g, f);
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_NEAR(std::abs(fast.values[i] - slow[i]), 0, 1e-8 * static_cast<double>(g.size())) << g.describe();
    }
    const auto back = inverse_fourier(fast);
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(back[i].real(), f[i], 1e-9);
  }
}

TEST(Fourier, RunningExampleAutocorrelation) {
  const Group g = Group::make({7});
  const Spectrum s = fourier(GSet::from_elements(g, {0, 1, 2}));
  EXPECT_NEAR(s.values[0].real(), 3.0, 1e-12);
  for (Element x = 0; x < 7; ++x) {
    Complex acc = 0;
    for (Element y = 0; y < 7; ++y) acc += std::conj(s.values[y]) * s.values[g.add(y, x)];
    EXPECT_NEAR(std::abs(acc / 7.0 - s.values[x]), 0, 1e-9);
  }
}
