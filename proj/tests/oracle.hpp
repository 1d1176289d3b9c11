#pragma once

// Brute-force reference computations. Everything here enumerates tuples or characters
// explicitly and shares no code path with the library beyond Group arithmetic.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include "energylab/group.hpp"
#include "energylab/setfun.hpp"

namespace oracle {

using energylab::Element;
using energylab::GSet;
using energylab::Group;

inline std::vector<Element> elems(const GSet& a) {
  std::vector<Element> v;
  for (Element x = 0; x < a.group().size(); ++x) {
    if (a.contains(x)) v.push_back(x);
  }
  return v;
}

// #{(a, b) in A x B : b - a = x}.
inline std::vector<std::int64_t> correlation(const GSet& a, const GSet& b) {
  const Group& g = a.group();
  std::vector<std::int64_t> out(g.size(), 0);
  for (Element x : elems(a)) {
    for (Element y : elems(b)) ++out[g.sub(y, x)];
  }
  return out;
}

inline std::vector<std::int64_t> convolution(const GSet& a, const GSet& b) {
  const Group& g = a.group();
  std::vector<std::int64_t> out(g.size(), 0);
  for (Element x : elems(a)) {
    for (Element y : elems(b)) ++out[g.add(x, y)];
  }
  return out;
}

// E_k(A) as the number of 2k-tuples with a_1 - a'_1 = ... = a_k - a'_k.
inline long double energy(const GSet& a, int k) {
  std::map<Element, long double> diff;
  const Group& g = a.group();
  for (Element x : elems(a)) {
    for (Element y : elems(a)) diff[g.sub(x, y)] += 1;
  }
  long double total = 0;
  for (auto& [d, c] : diff) total += std::pow(c, static_cast<long double>(k));
  return total;
}

// E(A) by explicit quadruples.
inline std::int64_t energy_quadruples(const GSet& a) {
  const Group& g = a.group();
  const auto v = elems(a);
  std::int64_t count = 0;
  for (Element a1 : v)
    for (Element a2 : v)
      for (Element a3 : v)
        for (Element a4 : v) count += g.sub(a1, a2) == g.sub(a3, a4);
  return count;
}

// T_k(A) by counting k-fold sums.
inline std::int64_t t_energy(const GSet& a, int k) {
  const Group& g = a.group();
  std::vector<std::int64_t> counts(g.size(), 0);
  counts[0] = 1;
  for (int i = 0; i < k; ++i) {
    std::vector<std::int64_t> next(g.size(), 0);
    for (Element x = 0; x < g.size(); ++x) {
      if (!counts[x]) continue;
      for (Element y : elems(a)) next[g.add(x, y)] += counts[x];
    }
    counts = next;
  }
  std::int64_t total = 0;
  for (auto c : counts) total += c * c;
  return total;
}

// #{(a_1..a_k) : a_1 + ... + a_k = 0}.
inline std::int64_t sigma(const GSet& a, int k) {
  const Group& g = a.group();
  const auto v = elems(a);
  std::int64_t count = 0;
  std::function<void(int, Element)> rec = [&](int depth, Element sum) {
    if (depth == k) {
      count += sum == 0;
      return;
    }
    for (Element x : v) rec(depth + 1, g.add(sum, x));
  };
  rec(0, 0);
  return count;
}

// |A^n ∓ Δ(A)| as the number of distinct tuples (a_1 ∓ a, ..., a_n ∓ a).
inline std::size_t delta_sumset(const GSet& a, int n, bool minus) {
  const Group& g = a.group();
  const auto v = elems(a);
  std::set<std::vector<Element>> seen;
  std::vector<Element> tuple(static_cast<std::size_t>(n));
  std::function<void(int)> rec = [&](int depth) {
    if (depth == n) {
      for (Element d : v) {
        std::vector<Element> t(tuple.size());
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = minus ? g.sub(tuple[i], d) : g.add(tuple[i], d);
        seen.insert(t);
      }
      return;
    }
    for (Element x : v) {
      tuple[static_cast<std::size_t>(depth)] = x;
      rec(depth + 1);
    }
  };
  rec(0);
  return seen.size();
}

// Cube count sum_{x, h_1..h_d} prod_ω A(x + ω.h) over the whole group.
inline std::int64_t gowers(const GSet& a, int d) {
  const Group& g = a.group();
  const std::size_t n = g.size();
  std::vector<Element> h(static_cast<std::size_t>(d));
  std::int64_t total = 0;
  std::function<void(int)> rec = [&](int depth) {
    if (depth == d) {
      for (Element x = 0; x < n; ++x) {
        bool all = true;
        for (std::size_t w = 0; w < (std::size_t{1} << d) && all; ++w) {
          Element v = x;
          for (int i = 0; i < d; ++i) {
            if (w >> i & 1) v = g.add(v, h[static_cast<std::size_t>(i)]);
          }
          all = a.contains(v);
        }
        total += all;
      }
      return;
    }
    for (Element s = 0; s < n; ++s) {
      h[static_cast<std::size_t>(depth)] = s;
      rec(depth + 1);
    }
  };
  rec(0);
  return total;
}

// f^(ξ) = sum_x f(x) exp(-2πi sum_j ξ_j x_j / n_j), with explicit coordinates.
inline std::vector<std::complex<double>> dft(const Group& g, const std::vector<double>& f) {
  const auto factors = g.factors();
  std::vector<std::complex<double>> out(g.size());
  for (Element xi = 0; xi < g.size(); ++xi) {
    const auto cx = g.decode(xi);
    std::complex<double> acc = 0;
    for (Element x = 0; x < g.size(); ++x) {
      if (f[x] == 0) continue;
      const auto dx = g.decode(x);
      double phase = 0;
      for (std::size_t j = 0; j < factors.size(); ++j) {
        phase += static_cast<double>((static_cast<std::uint64_t>(cx[j]) * dx[j]) % factors[j]) / factors[j];
      }
      acc += f[x] * std::polar(1.0, -2 * std::numbers::pi * phase);
    }
    out[xi] = acc;
  }
  return out;
}

inline std::vector<double> indicator(const GSet& a) {
  std::vector<double> f(a.group().size(), 0.0);
  for (Element x : elems(a)) f[x] = 1;
  return f;
}

// γ by plain enumeration of subsets: min over |B| >= ceil(β|A|) of E_α(B)(|A|/|B|)^{2α}/E_α(A).
inline double gamma(const GSet& a, double alpha, double beta) {
  const auto v = elems(a);
  const std::size_t m = v.size();
  const std::size_t lo = static_cast<std::size_t>(std::ceil(beta * static_cast<double>(m) - 1e-9));
  const double base = static_cast<double>(energy(a, static_cast<int>(alpha)));
  double best = 1;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    const std::size_t size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size < lo) continue;
    GSet b(a.group());
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) b.insert(v[i]);
    }
    const double r = static_cast<double>(energy(b, static_cast<int>(alpha))) *
                     std::pow(static_cast<double>(m) / static_cast<double>(size), 2 * alpha) / base;
    best = std::min(best, r);
  }
  return best;
}

}  // namespace oracle
