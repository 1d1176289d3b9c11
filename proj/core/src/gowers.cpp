#include "energylab/gowers.hpp"

#include <algorithm>
#include <cmath>

#include "energylab/error.hpp"

namespace energylab {

namespace {

Int energy_of(const GSet& b) {
  const std::size_t m = b.size();
  if (m <= 1) return Int(m);
  if (m * m <= b.group().size() / 4) {
    // Sparse slice: count runs of equal differences instead of a length-N table.
    const Group& g = b.group();
    const auto elems = b.elements();
    std::vector<Element> diffs;
    diffs.reserve(m * m);
    for (Element x : elems) {
      for (Element y : elems) diffs.push_back(g.sub_fast(x, y));
    }
    std::sort(diffs.begin(), diffs.end());
    ExactSum total;
    for (std::size_t i = 0; i < diffs.size();) {
      std::size_t j = i;
      while (j < diffs.size() && diffs[j] == diffs[i]) ++j;
      const auto run = static_cast<std::int64_t>(j - i);
      total.add_product(run, run);
      i = j;
    }
    return total.value();
  }
  ExactSum total;
  for (std::int64_t c : correlation_counts(b, b)) {
    if (c) total.add_product(c, c);
  }
  return total.value();
}

Int cube_count(const GSet& a, int d) {
  if (d == 1) return Int(a.size()) * a.size();
  if (d == 2 || a.size() <= 1) return d == 2 ? energy_of(a) : Int(a.size());
  ExactSum total;
  const Group& g = a.group();
  difference_set(a, a).for_each([&](Element h) {
    GSet ah(g);
    a.for_each([&](Element x) {
      if (a.contains(g.add_fast(x, h))) ah.insert(x);
    });
    total.add(cube_count(ah, d - 1));
  });
  return total.value();
}

}  // namespace

GowersValue gowers_u(const GSet& a, int d) {
  if (d < 1 || d > kMaxGowersDegree) {
    throw Error("Gowers degree must lie in [1, " + std::to_string(kMaxGowersDegree) + "]");
  }
  GowersValue out;
  out.d = d;
  out.count = cube_count(a, d);
  const double n = static_cast<double>(a.group().size());
  // log form keeps N^{d+1} from overflowing.
  const double c = to_double(out.count);
  out.normalized = c == 0 ? 0.0 : std::exp((std::log(c) - (d + 1) * std::log(n)) / std::ldexp(1.0, d));
  return out;
}

PairU3 gowers_pair_u3(const GSet& a, const GSet& b) {
  require_same_group(a.group(), b.group());
  PairU3 out;
  if (a.empty() || b.empty()) {
    out.vacuous = true;
    return out;
  }
  // The inner sum is (C o C)(s2) with C = A ∩ (B - s1).
  const Group& g = a.group();
  ExactSum total;
  difference_set(b, a).for_each([&](Element s1) {
    GSet c(g);
    a.for_each([&](Element x) {
      if (b.contains(g.add_fast(x, s1))) c.insert(x);
    });
    total.add(energy_of(c));
  });
  out.value = total.value();
  return out;
}

bool gowers_normalized_monotonicity(const GSet& a, int d) {
  if (d < 2) throw Error("monotonicity check needs d >= 2");
  const Int lower = gowers_u(a, d - 1).count;
  const Int upper = gowers_u(a, d).count;
  return lower * lower <= upper * ipow(Int(a.group().size()), static_cast<unsigned>(d - 1));
}

}  // namespace energylab
