#pragma once

#include "energylab/exact.hpp"
#include "energylab/setfun.hpp"

namespace energylab {

inline constexpr int kMaxGowersDegree = 6;

// Unnormalized projected norm as a cube count, with the normalized value
// (count / N^{d+1})^{1/2^d}.
struct GowersValue {
  Int count = 0;
  int d = 1;
  double normalized = 0;
};

// ||A||_{U^d} by the slice recursion ||A||_{U^d} = sum_h ||A_h||_{U^{d-1}},
// ||B||_{U^1} = |B|^2. Requires 1 <= d <= kMaxGowersDegree.
GowersValue gowers_u(const GSet& a, int d);

struct PairU3 {
  Int value = 0;
  // Set when A or B is empty; the lower bound is then vacuous.
  bool vacuous = false;
};

// sum_{s1, s2} (sum_x A(x) B(x+s1) A(x+s2) B(x+s1+s2))^2.
PairU3 gowers_pair_u3(const GSet& a, const GSet& b);

// (U^{d-1} / N^d)^{1/2^{d-1}} <= (U^d / N^{d+1})^{1/2^d}, compared exactly as
// (U^{d-1})^2 <= U^d N^{d-1}. Requires d >= 2.
bool gowers_normalized_monotonicity(const GSet& a, int d);

}  // namespace energylab
