#include <gtest/gtest.h>

#include <cmath>

#include "energylab/constructors.hpp"
#include "energylab/energy.hpp"
#include "energylab/error.hpp"
#include "oracle.hpp"

using namespace energylab;

namespace {

const Group& z7() {
  static const Group g = Group::make({7});
  return g;
}
GSet running() { return GSet::from_elements(z7(), {0, 1, 2}); }

}  // namespace

TEST(Energy, RunningExampleGoldenValues) {
  EXPECT_EQ(energy_k(running(), 1).value, 9);
  EXPECT_EQ(energy_k(running(), 2).value, 19);
  EXPECT_EQ(energy_k(running(), 3).value, 45);
  EXPECT_EQ(energy_k(running(), 4).value, 115);
  EXPECT_EQ(energy_k(running(), 3).str(), "45");
  EXPECT_EQ(t_energy(running(), 2).value, 19);
  EXPECT_EQ(starred_energy(running(), 3).value, 18);
}

TEST(Energy, AgreesWithTupleCounts) {
  for (auto factors : std::vector<std::vector<std::uint32_t>>{{37}, {2, 2, 2, 2, 2}, {4, 6}}) {
    const GSet a = random_set(Group::make(factors), 0.3, 17);
    EXPECT_EQ(energy_k(a, 2).value, oracle::energy_quadruples(a));
    for (int k = 1; k <= 5; ++k) {
      EXPECT_EQ(energy_k(a, k).value, Int(static_cast<long long>(oracle::energy(a, k))));
    }
    for (int k = 2; k <= 3; ++k) EXPECT_EQ(t_energy(a, k).value, oracle::t_energy(a, k));
  }
}

TEST(Energy, SubgroupClosedForms) {
  const GSet h = subspace(5, 3);
  for (int k = 1; k <= 4; ++k) {
    EXPECT_EQ(energy_k(h, k).value, ipow(Int(8), static_cast<unsigned>(k + 1)));
    if (k >= 2) {
      EXPECT_EQ(t_energy(h, k).value, ipow(Int(8), static_cast<unsigned>(2 * k - 1)));
    }
  }
  EXPECT_EQ(energy_pair_k(h, h, 2).value, 512);
}

TEST(Energy, RealExponent) {
  const EnergyValue v = energy_k(running(), 1.5);
  EXPECT_FALSE(v.exact);
  EXPECT_NEAR(v.approx, std::pow(3, 1.5) + 2 * std::pow(2, 1.5) + 2, 1e-12);
  EXPECT_THROW(energy_k(running(), 0.5), Error);
}

TEST(Energy, PairAndMixed) {
  const GSet b = GSet::from_elements(z7(), {0, 3});
  EXPECT_EQ(energy_pair_k(running(), b, 2).value, 6);
  EXPECT_EQ(energy_pair_k(running(), running(), 3).value, energy_k(running(), 3).value);

  const GSet d = difference_set(running(), running());
  const GSet a = running();
  const GSet daa[] = {d, a, a};
  const GSet aad[] = {a, a, d};
  const auto dd = oracle::correlation(d, d);
  const auto aa = oracle::correlation(a, a);
  std::int64_t expected = 0;
  for (Element x = 0; x < 7; ++x) expected += dd[x] * aa[x] * aa[x];
  EXPECT_EQ(mixed_energy(daa).value, expected);
  EXPECT_EQ(mixed_energy(aad).value, expected);

  const DenseFunc f = DenseFunc::indicator(a);
  const DenseFunc ff[] = {f, f};
  EXPECT_EQ(mixed_energy(ff).value, 19);
}

TEST(Energy, TransformDualIdentity) {
  // T_2(|A^|^2) = N^3 E_4(A), checked by an explicit character sum.
  const auto spec = oracle::dft(z7(), oracle::indicator(running()));
  long double total = 0;
  for (Element x = 0; x < 7; ++x) {
    long double conv = 0;
    for (Element y = 0; y < 7; ++y) conv += std::norm(spec[y]) * std::norm(spec[z7().sub(x, y)]);
    total += conv * conv;
  }
  EXPECT_NEAR(static_cast<double>(total), 343.0 * 115.0, 1e-6);
}

TEST(Energy, RestrictedAndSigma) {
  const GSet a = running();
  const GSet d = difference_set(a, a);
  EXPECT_EQ(restricted_energy(a, d, 2).value, energy_k(a, 2).value);
  EXPECT_EQ(sigma_p(a, GSet::from_elements(z7(), {0})).value, 3);
  EXPECT_EQ(sigma_p(a, d).value, 9);
}

TEST(WeightKernel, ClosedForms) {
  const GSet h = subspace(4, 2);
  const WeightKernel q = WeightKernel::correlation_power(h, 1);
  EXPECT_EQ(weighted_energy(h, q), 64);

  const Group g = z7();
  const WeightKernel one = WeightKernel::difference(DenseFunc::integer(g, std::vector<std::int64_t>(7, 1)));
  const GSet b = GSet::from_elements(g, {0, 3});
  EXPECT_EQ(weighted_energy(running(), b, one), 6);

  const WeightKernel sq = WeightKernel::correlation_power(running(), 2);
  const auto c = oracle::correlation(running(), running());
  std::int64_t expected = 0;
  for (Element x : {0u, 1u, 2u})
    for (Element y : {0u, 1u, 2u}) expected += c[g.sub(x, y)] * c[g.sub(x, y)];
  EXPECT_EQ(weighted_energy(running(), sq), expected);
}

TEST(WeightKernel, SymmetryAndDefiniteness) {
  const Group g = z7();
  EXPECT_THROW(WeightKernel::difference(DenseFunc::integer(g, {0, 1, 0, 0, 0, 0, 0})), Error);
  std::vector<std::int64_t> m(49, 0);
  m[1] = 1;
  EXPECT_THROW(WeightKernel::matrix(g, m), Error);
  m[7] = 1;
  const WeightKernel q = WeightKernel::matrix(g, m);
  ASSERT_TRUE(q.psd().has_value());
  EXPECT_FALSE(*q.psd());
  EXPECT_TRUE(*WeightKernel::correlation_power(running(), 1).psd());
  EXPECT_TRUE(*WeightKernel::correlation_power(running(), 3).psd());
}

TEST(Wiener, ClosedFormsAndEnergyBound) {
  EXPECT_NEAR(wiener_norm(subspace(6, 3)), 1.0, 1e-9);
  EXPECT_NEAR(wiener_norm(GSet::from_elements(z7(), {0})), 1.0, 1e-12);
  const double v = wiener_norm(running());
  double expected = 0;
  for (const auto& z : oracle::dft(z7(), oracle::indicator(running()))) expected += std::abs(z);
  EXPECT_NEAR(v, expected / 7, 1e-12);
  // E(A, B) >= |B|^3 / ||A||_W^2 for every B ⊆ A.
  for (unsigned mask = 1; mask < 8; ++mask) {
    GSet b(z7());
    for (Element i = 0; i < 3; ++i) {
      if (mask >> i & 1) b.insert(i);
    }
    const double e = to_double(energy_pair_k(running(), b, 2).value);
    EXPECT_GE(e * v * v, std::pow(static_cast<double>(b.size()), 3) * (1 - 1e-12));
  }
}
