#include "energylab/structure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "energylab/error.hpp"
#include "energylab/gowers.hpp"
#include "energylab/random.hpp"

namespace energylab {

namespace {

Int energy_of(const GSet& a) {
  ExactSum total;
  for (std::int64_t c : correlation_counts(a, a)) {
    if (c) total.add_product(c, c);
  }
  return total.value();
}

Int pair_energy(const GSet& a, const GSet& b) {
  const auto ca = correlation_counts(a, a);
  const auto cb = correlation_counts(b, b);
  ExactSum total;
  for (std::size_t x = 0; x < ca.size(); ++x) {
    if (ca[x] && cb[x]) total.add_product(ca[x], cb[x]);
  }
  return total.value();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Smallest integer m with m >= x, guarding against representation error just above an integer.
std::size_t ceil_size(double x) {
  const double r = std::ceil(x - 1e-9);
  return r <= 0 ? 0 : static_cast<std::size_t>(r);
}

std::size_t floor_size(double x) {
  const double r = std::floor(x + 1e-9);
  return r <= 0 ? 0 : static_cast<std::size_t>(r);
}

GSet from_mask(const Group& g, const std::vector<Element>& elems, std::uint64_t mask) {
  GSet out(g);
  while (mask) {
    out.insert(elems[static_cast<std::size_t>(__builtin_ctzll(mask))]);
    mask &= mask - 1;
  }
  return out;
}

void require_exhaustive_size(const GSet& a, std::size_t cap) {
  if (a.size() > cap) {
    throw CapError("exhaustive subset search is capped at |A| <= " + std::to_string(cap) + ", got " +
                   std::to_string(a.size()));
  }
}

}  // namespace

bool members_disjoint(const DisjointFamily& family) {
  if (family.members.empty()) return true;
  GSet seen(family.members.front().set.group());
  for (const auto& m : family.members) {
    if (m.set.size() < family.min_size) return false;
    if (!m.set.disjoint_with(seen)) return false;
    seen = seen.unite(m.set);
  }
  return true;
}

// ---------------------------------------------------------------- translates

DisjointFamily greedy_disjoint_translates(const GSet& a, const GSet& b) {
  require_same_group(a.group(), b.group());
  if (a.empty() || b.empty()) throw Error("greedy translates need nonempty A and B");
  DisjointFamily out;
  out.algorithm = "greedy_disjoint_translates";
  out.min_size = ceil_size(a.size() / 2.0);
  GSet used(a.group());
  b.for_each([&](Element shift) {
    const GSet residual = a.translate(shift).minus(used);
    if (2 * residual.size() >= a.size()) {
      used = used.unite(residual);
      out.members.push_back({shift, residual});
    }
  });
  const Int e = pair_energy(a, b);
  const Int s = out.members.size();
  const Int lhs_a = Int(a.size()) * b.size() * b.size();
  out.bound = to_double(lhs_a) / (16.0 * to_double(e));
  out.bound_met = 16 * s * e >= lhs_a || 2 * s >= b.size();
  out.disjoint = members_disjoint(out);
  out.contained = std::all_of(out.members.begin(), out.members.end(),
                              [&](const FamilyMember& m) { return m.set.is_subset_of(a.translate(m.tag)); });
  out.parameters = {{"|A|", std::to_string(a.size())}, {"|B|", std::to_string(b.size())}, {"E(A,B)", to_decimal(e)}};
  return out;
}

DisjointFamily greedy_disjoint_in_target(const GSet& a, const GSet& b, const GSet& s) {
  require_same_group(a.group(), b.group());
  require_same_group(a.group(), s.group());
  if (a.empty() || b.empty()) throw Error("greedy target family needs nonempty A and B");
  const auto bs = b.elements();
  std::vector<std::size_t> hits(bs.size());
  std::int64_t sigma = 0;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    hits[i] = a.translate(bs[i]).intersection_size(s);
    sigma += static_cast<std::int64_t>(hits[i]);
  }
  const std::int64_t nb = static_cast<std::int64_t>(b.size());
  if (sigma < 16 * nb) {
    throw PreconditionError("sigma = " + std::to_string(sigma) + " < 16|B| = " + std::to_string(16 * nb));
  }
  const std::size_t m = static_cast<std::size_t>((sigma + 8 * nb - 1) / (8 * nb));
  const std::size_t first =
      static_cast<std::size_t>(std::max_element(hits.begin(), hits.end()) - hits.begin());
  std::vector<Element> order{bs[first]};
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (i != first) order.push_back(bs[i]);
  }

  DisjointFamily out;
  out.algorithm = "greedy_disjoint_in_target";
  out.min_size = m;
  GSet used(a.group());
  for (Element shift : order) {
    const GSet residual = a.translate(shift).intersect(s).minus(used);
    if (residual.size() < m) continue;
    GSet member(a.group());
    std::size_t taken = 0;
    residual.for_each([&](Element x) {
      if (taken < m) {
        member.insert(x);
        ++taken;
      }
    });
    used = used.unite(member);
    out.members.push_back({shift, std::move(member)});
  }
  const Int e = pair_energy(a, b);
  const Int sig = sigma;
  const Int sa = a.size();
  out.bound = std::pow(static_cast<double>(sigma), 3) /
              (256.0 * std::pow(static_cast<double>(a.size()), 2) * static_cast<double>(nb) * to_double(e));
  out.bound_met = 256 * Int(out.members.size()) * sa * sa * nb * e >= sig * sig * sig;
  out.disjoint = members_disjoint(out);
  out.contained = std::all_of(out.members.begin(), out.members.end(), [&](const FamilyMember& mem) {
    return mem.set.is_subset_of(a.translate(mem.tag).intersect(s));
  });
  out.parameters = {{"sigma", std::to_string(sigma)}, {"member_size", std::to_string(m)}, {"E(A,B)", to_decimal(e)}};
  return out;
}

// ---------------------------------------------------------------- slices

DisjointFamily greedy_disjoint_slices(const GSet& a, const GSet& d) {
  require_same_group(a.group(), d.group());
  if (d.empty()) throw Error("greedy slices need a nonempty D");
  if (!d.is_subset_of(difference_set(a, a))) throw Error("greedy slices need D ⊆ A - A");
  const Group& g = a.group();
  std::vector<std::size_t> cost(g.size(), 0);
  Int sigma = 0;
  d.for_each([&](Element s) {
    cost[s] = difference_set(a, slice(a, s)).size();
    sigma += cost[s];
  });

  DisjointFamily out;
  out.algorithm = "greedy_disjoint_slices";
  out.min_size = 1;
  GSet alive = d;
  while (2 * alive.size() >= d.size() && !alive.empty()) {
    Element best = 0;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    alive.for_each([&](Element s) {
      if (cost[s] < best_cost) {
        best_cost = cost[s];
        best = s;
      }
    });
    const GSet as = slice(a, best);
    alive = alive.minus(difference_set(a, as));
    out.members.push_back({best, as});
  }
  const Int l = out.members.size();
  const Int dd = d.size();
  out.bound = static_cast<double>(d.size()) * static_cast<double>(d.size()) / (4.0 * to_double(sigma));
  out.bound_met = 4 * l * sigma >= dd * dd;
  out.disjoint = members_disjoint(out);
  out.contained = std::all_of(out.members.begin(), out.members.end(),
                              [&](const FamilyMember& m) { return m.set == slice(a, m.tag); });
  out.parameters = {{"|D|", std::to_string(d.size())}, {"sigma", to_decimal(sigma)}};
  return out;
}

// ---------------------------------------------------------------- random family

Int family_overlap(const std::vector<GSet>& ms) {
  if (ms.empty()) return 0;
  std::vector<std::int64_t> mult(ms.front().group().size(), 0);
  for (const auto& m : ms) {
    require_same_group(ms.front().group(), m.group());
    m.for_each([&](Element x) { ++mult[x]; });
  }
  ExactSum total;
  for (std::int64_t c : mult) {
    if (c) total.add_product(c, c);
  }
  return total.value();
}

DisjointFamily random_disjoint_family(const std::vector<GSet>& ms, std::int64_t delta, double c,
                                      std::uint64_t seed) {
  if (ms.empty()) throw Error("random family needs at least one set");
  if (delta < 1) throw Error("Δ must be positive");
  if (!(c >= 1)) throw Error("C must be at least 1");
  for (const auto& m : ms) {
    const double size = static_cast<double>(m.size());
    if (size < static_cast<double>(delta) || size > c * static_cast<double>(delta)) {
      throw PreconditionError("every M_i needs Δ <= |M_i| <= CΔ");
    }
  }
  const Int sigma = family_overlap(ms);
  const Int t = ms.size();
  if (10000 * sigma > t * t * delta) {
    throw PreconditionError("σ = " + to_decimal(sigma) + " exceeds 10^-4 t^2 Δ");
  }
  const double td = static_cast<double>(ms.size());
  const double sd = to_double(sigma);
  const double p = td * static_cast<double>(delta) / (2.0 * sd);
  const double keep = static_cast<double>(delta) / (8.0 * c + 4.0);
  const double target = td * td * static_cast<double>(delta) / ((32.0 * c + 16.0) * sd);

  DisjointFamily out;
  out.algorithm = "random_disjoint_family";
  out.min_size = ceil_size(keep);
  out.bound = target;
  out.succeeded = false;
  const Group& g = ms.front().group();
  for (int attempt = 0; attempt < kRandomFamilyRetries && !out.succeeded; ++attempt) {
    SplitMix64 rng(seed, static_cast<std::uint64_t>(attempt));
    out.members.clear();
    GSet used(g);
    for (std::size_t i = 0; i < ms.size(); ++i) {
      if (!rng.bernoulli(p)) continue;
      GSet residual(g);
      ms[i].for_each([&](Element x) {
        if (!used.contains(x)) residual.insert(x);
      });
      ms[i].for_each([&](Element x) { used.insert(x); });
      if (static_cast<double>(residual.size()) >= keep - 1e-9) {
        out.members.push_back({static_cast<Element>(i), std::move(residual)});
      }
    }
    out.attempts = attempt + 1;
    out.succeeded = static_cast<double>(out.members.size()) >= target - 1e-9;
  }
  out.bound_met = out.succeeded;
  out.disjoint = members_disjoint(out);
  out.contained = std::all_of(out.members.begin(), out.members.end(),
                              [&](const FamilyMember& m) { return m.set.is_subset_of(ms[m.tag]); });
  out.parameters = {{"t", std::to_string(ms.size())}, {"Delta", std::to_string(delta)}, {"C", fmt(c)},
                    {"sigma", to_decimal(sigma)}, {"p", fmt(p)}, {"seed", std::to_string(seed)},
                    {"retries", std::to_string(kRandomFamilyRetries)}};
  return out;
}

// ---------------------------------------------------------------- regular part

std::vector<std::int64_t> cubic_convolution(const GSet& a) {
  const DenseFunc ind = DenseFunc::indicator(a);
  const DenseFunc sq = convolve(ind, ind, ConvolutionPath::Direct);
  const DenseFunc out = correlate(sq, ind, ConvolutionPath::Direct);
  const auto lanes = out.lanes();
  return {lanes.begin(), lanes.end()};
}

GSet regular_part(const GSet& a) {
  if (a.empty()) throw Error("regular part needs a nonempty set");
  const auto cube = cubic_convolution(a);
  const Int e = energy_of(a);
  GSet out(a.group());
  a.for_each([&](Element x) {
    if (Int(a.size()) * cube[x] <= 2 * e) out.insert(x);
  });
  if (2 * out.size() < a.size()) throw Error("regular part is smaller than |A|/2");
  return out;
}

// ---------------------------------------------------------------- connectedness

namespace {

// Correlation counts of a subset of A maintained under single-element toggles; the histogram
// of count values makes sum_x c(x)^α an O(|A|) evaluation.
class SubsetCorrelation {
 public:
  SubsetCorrelation(const Group& g, std::vector<Element> elems)
      : g_(g), elems_(std::move(elems)), counts_(g.size(), 0), hist_(elems_.size() + 2, 0), in_(elems_.size(), 0) {
    hist_[0] = static_cast<std::int64_t>(g.size());
  }

  void toggle(std::size_t i) {
    const int sign = in_[i] ? -1 : 1;
    if (sign < 0) in_[i] = 0;
    const Element e = elems_[i];
    for (std::size_t j = 0; j < elems_.size(); ++j) {
      if (!in_[j]) continue;
      bump(g_.sub_fast(e, elems_[j]), sign);
      bump(g_.sub_fast(elems_[j], e), sign);
    }
    bump(0, sign);
    if (sign > 0) in_[i] = 1;
    size_ += sign;
  }

  std::size_t size() const { return static_cast<std::size_t>(size_); }
  const std::vector<std::int64_t>& histogram() const { return hist_; }

 private:
  void bump(Element x, int sign) {
    --hist_[static_cast<std::size_t>(counts_[x])];
    counts_[x] += sign;
    ++hist_[static_cast<std::size_t>(counts_[x])];
  }

  const Group& g_;
  std::vector<Element> elems_;
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> hist_;
  std::vector<char> in_;
  std::int64_t size_ = 0;
};

}  // namespace

GammaResult connectedness_gamma(const GSet& a, double alpha, double beta) {
  require_exhaustive_size(a, kMaxExhaustiveSize);
  if (!(alpha >= 1)) throw Error("α must be >= 1");
  if (!(beta > 0 && beta <= 1)) throw Error("β must lie in (0, 1]");
  if (a.empty()) throw Error("connectedness needs a nonempty set");
  const auto elems = a.elements();
  const std::size_t n = elems.size();
  const std::size_t min_size = std::max<std::size_t>(1, ceil_size(beta * static_cast<double>(n)));
  const bool exact = std::floor(alpha) == alpha && alpha <= 6;
  const auto ia = static_cast<unsigned>(alpha);

  std::vector<double> pw(n + 2);
  std::vector<__int128> ipw(n + 2);
  for (std::size_t v = 0; v < pw.size(); ++v) {
    pw[v] = std::pow(static_cast<double>(v), alpha);
    __int128 acc = 1;
    for (unsigned i = 0; exact && i < ia; ++i) acc *= static_cast<__int128>(v);
    ipw[v] = acc;
  }
  const auto denom_pow = [&](std::size_t m) {
    __int128 acc = 1;
    for (unsigned i = 0; i < 2 * ia; ++i) acc *= static_cast<__int128>(m);
    return acc;
  };

  SubsetCorrelation state(a.group(), elems);
  bool have = false;
  std::uint64_t best_mask = 0;
  __int128 best_e = 0;
  std::size_t best_size = 0;
  double best_ratio = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t mask = 0;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int bit = __builtin_ctzll(i);
    state.toggle(static_cast<std::size_t>(bit));
    mask ^= std::uint64_t{1} << bit;
    const std::size_t m = state.size();
    if (m < min_size) continue;
    const auto& hist = state.histogram();
    bool better = false;
    bool tie = false;
    if (exact) {
      __int128 e = 0;
      for (std::size_t v = 1; v < hist.size(); ++v) e += hist[v] * ipw[v];
      // e / m^{2α} against best_e / best_size^{2α}.
      const __int128 lhs = e * denom_pow(best_size);
      const __int128 rhs = best_e * denom_pow(m);
      better = !have || lhs < rhs;
      tie = have && lhs == rhs;
      if (better || (tie && mask < best_mask)) best_e = e;
    } else {
      double e = 0;
      for (std::size_t v = 1; v < hist.size(); ++v) e += static_cast<double>(hist[v]) * pw[v];
      const double ratio = e / std::pow(static_cast<double>(m), 2 * alpha);
      better = !have || ratio < best_ratio;
      tie = have && ratio == best_ratio;
      if (better || (tie && mask < best_mask)) best_ratio = ratio;
    }
    if (better || (tie && mask < best_mask)) {
      have = true;
      best_mask = mask;
      best_size = m;
    }
  }
  // Normalize by the full set: ratio(B) / ratio(A).
  const double full = energy_k(a, alpha).approx / std::pow(static_cast<double>(n), 2 * alpha);
  const double best = exact ? static_cast<double>(best_e) / std::pow(static_cast<double>(best_size), 2 * alpha)
                            : best_ratio;
  return GammaResult{std::min(1.0, best / full), from_mask(a.group(), elems, best_mask)};
}

GammaResult gowers_connectedness_gamma(const GSet& a, int k, double beta) {
  require_exhaustive_size(a, kMaxExhaustiveSize);
  if (!(beta > 0 && beta <= 1)) throw Error("β must lie in (0, 1]");
  if (a.empty()) throw Error("connectedness needs a nonempty set");
  const auto elems = a.elements();
  const std::size_t n = elems.size();
  const std::size_t min_size = std::max<std::size_t>(1, ceil_size(beta * static_cast<double>(n)));
  const unsigned power = 1u << k;
  bool have = false;
  std::uint64_t best_mask = 0;
  Int best_u = 0;
  std::size_t best_size = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto m = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (m < min_size) continue;
    const Int u = gowers_u(from_mask(a.group(), elems, mask), k).count;
    // Ascending masks: a strict improvement is needed to replace the earlier witness.
    if (!have || u * ipow(Int(best_size), power) < best_u * ipow(Int(m), power)) {
      have = true;
      best_mask = mask;
      best_u = u;
      best_size = m;
    }
  }
  const Int full = gowers_u(a, k).count;
  const double gamma = to_double(best_u * ipow(Int(n), power)) / to_double(full * ipow(Int(best_size), power));
  return GammaResult{std::min(1.0, gamma), from_mask(a.group(), elems, best_mask)};
}

// ---------------------------------------------------------------- extraction

ExtractionResult extract_connected_subset(const GSet& a, const WeightKernel& q, double beta1, double beta2,
                                          double rho) {
  require_same_group(a.group(), q.group());
  require_exhaustive_size(a, kMaxExhaustiveSize);
  if (!(beta1 > 0 && beta1 <= beta2 && beta2 <= 1)) throw Error("need 0 < β1 <= β2 <= 1");
  if (!(rho > 0 && rho <= 1)) throw Error("ρ must lie in (0, 1]");
  if (!(Rational(rho) * Rational(beta2) < Rational(beta1))) throw Error("need ρ < β1/β2");
  if (a.empty()) throw Error("extraction needs a nonempty set");

  const Rational rho_q(rho);
  const Int rho_num = numerator(rho_q);
  const Int rho_den = denominator(rho_q);

  GSet current = a;
  int steps = 0;
  for (;;) {
    const auto elems = current.elements();
    const std::size_t m = elems.size();
    std::vector<__int128> r(m, 0);
    __int128 eq = 0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) r[i] += q(elems[i], elems[j]);
      eq += r[i];
    }
    const std::size_t lo = std::max<std::size_t>(1, ceil_size(beta1 * static_cast<double>(m)));
    const std::size_t hi = floor_size(beta2 * static_cast<double>(m));
    const Int eq_int = from_int128(eq);
    std::uint64_t violator = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m) && !violator; ++mask) {
      const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
      if (size < lo || size > hi) continue;
      __int128 rc = 0;
      for (std::uint64_t w = mask; w; w &= w - 1) rc += r[static_cast<std::size_t>(__builtin_ctzll(w))];
      // m * E_q(C, A^i) < ρ |C| E_q(A^i); screen in floating point, decide exactly near the boundary.
      const double lhs = static_cast<double>(m) * static_cast<double>(rc);
      const double rhs = rho * static_cast<double>(size) * static_cast<double>(eq);
      if (lhs > rhs * (1 + 1e-9) + 1e-300) continue;
      if (lhs < rhs * (1 - 1e-9) ||
          Int(m) * from_int128(rc) * rho_den < rho_num * Int(size) * eq_int) {
        violator = mask;
      }
    }
    if (!violator) break;
    for (std::uint64_t w = violator; w; w &= w - 1) current.erase(elems[static_cast<std::size_t>(__builtin_ctzll(w))]);
    ++steps;
  }

  ExtractionResult out{current, steps};
  out.energy_before = weighted_energy(a, q);
  out.energy_after = weighted_energy(current, q);
  const double na = static_cast<double>(a.size());
  out.c = to_double(out.energy_before) / (na * na * static_cast<double>(std::max<std::int64_t>(q.sup_norm(), 1)));
  if (beta1 >= 1 || out.c >= 1) {
    out.step_bound = 0;
  } else if (out.c <= 0) {
    out.step_bound = std::numeric_limits<double>::infinity();
  } else {
    out.step_bound = std::ceil(std::log(1 / out.c) / (2 * std::log((1 - beta2 * rho) / (1 - beta1))) - 1e-12);
  }
  out.step_bound_holds = static_cast<double>(steps) <= out.step_bound;
  Rational factor = 1 - Rational(beta2) * rho_q;
  const Rational rhs = Rational(out.energy_before) * rpow(factor, static_cast<unsigned>(2 * steps));
  const Rational lhs(out.energy_after);
  out.energy_bound_holds = steps == 0 ? lhs >= rhs : lhs > rhs;
  return out;
}

double connected_k_gamma(int k, double beta, int s) {
  const double exponent = -(2.0 * s * k + 2.0 * k - 2.0 * s);
  return std::ldexp(1.0, static_cast<int>(exponent)) * std::pow(beta, 2.0 * k) * std::pow(2 - beta, 2.0 * s * (k - 1));
}

ExtractionResult extract_connected_k(const GSet& a, int k, double beta) {
  if (k < 2) throw Error("k must be at least 2");
  const WeightKernel q = WeightKernel::correlation_power(a, static_cast<unsigned>(k - 1));
  return extract_connected_subset(a, q, beta, 1.0, beta / 2);
}

// ---------------------------------------------------------------- scans and oracles

SliceScan min_slice_energy_ratio(const GSet& a) {
  if (a.empty()) throw Error("slice scan needs a nonempty set");
  const auto c = correlation_counts(a, a);
  const Int e = energy_of(a);
  const Int na = a.size();
  SliceScan out;
  for (std::size_t s = 1; s < c.size(); ++s) {
    // |A_s| >= |A|/(2K) with K = |A|^3/E.
    if (c[s] == 0 || 2 * Int(c[s]) * na * na < e) continue;
    const GSet as = slice(a, static_cast<Element>(s));
    const double ratio = to_double(energy_of(as)) / std::pow(static_cast<double>(c[s]), 3);
    if (!out.found || ratio < out.ratio) {
      out.found = true;
      out.s = static_cast<Element>(s);
      out.ratio = ratio;
    }
  }
  return out;
}

DoublingResult small_doubling_subset_oracle(const GSet& a, double min_frac) {
  require_exhaustive_size(a, kMaxOracleSize);
  if (!(min_frac > 0 && min_frac <= 1)) throw Error("minFrac must lie in (0, 1]");
  if (a.empty()) throw Error("oracle needs a nonempty set");
  const Group& g = a.group();
  const auto elems = a.elements();
  const std::size_t n = elems.size();
  const std::size_t min_size = std::max<std::size_t>(1, ceil_size(min_frac * static_cast<double>(n)));
  std::vector<std::uint32_t> stamp(g.size(), 0);
  std::uint32_t epoch = 0;
  std::vector<Element> picked;
  bool have = false;
  std::uint64_t best_mask = 0;
  std::size_t best_diff = 0, best_size = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto m = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (m < min_size) continue;
    picked.clear();
    for (std::uint64_t w = mask; w; w &= w - 1) picked.push_back(elems[static_cast<std::size_t>(__builtin_ctzll(w))]);
    ++epoch;
    std::size_t diff = 0;
    for (Element x : picked) {
      for (Element y : picked) {
        const Element d = g.sub_fast(x, y);
        if (stamp[d] != epoch) {
          stamp[d] = epoch;
          ++diff;
        }
      }
    }
    if (!have || diff * best_size < best_diff * m) {
      have = true;
      best_mask = mask;
      best_diff = diff;
      best_size = m;
    }
  }
  return DoublingResult{from_mask(g, elems, best_mask),
                        static_cast<double>(best_diff) / static_cast<double>(best_size)};
}

SlicePipelineReport disjoint_slices_pipeline(const GSet& a, std::uint64_t seed) {
  SlicePipelineReport out{};
  const GSet ar = regular_part(a);
  out.regular_size = ar.size();
  const auto c = correlation_counts(ar, ar);
  // Dyadic level of (A' o A')(s), s != 0, carrying the largest share of E(A').
  std::array<Int, 64> weight{};
  bool any = false;
  for (std::size_t s = 1; s < c.size(); ++s) {
    if (c[s] == 0) continue;
    any = true;
    weight[static_cast<std::size_t>(63 - __builtin_clzll(static_cast<std::uint64_t>(c[s])))] += Int(c[s]) * c[s];
  }
  if (!any) {
    out.skip_reason = "regular part has no nonzero popular differences";
    return out;
  }
  const std::size_t level = static_cast<std::size_t>(std::max_element(weight.begin(), weight.end()) - weight.begin());
  out.delta = std::int64_t{1} << level;
  std::vector<GSet> ms;
  for (std::size_t s = 1; s < c.size(); ++s) {
    if (c[s] >= out.delta && c[s] < 2 * out.delta) ms.push_back(slice(ar, static_cast<Element>(s)));
  }
  out.popular_count = ms.size();
  out.sigma = family_overlap(ms);
  const Int t = ms.size();
  if (10000 * out.sigma > t * t * out.delta) {
    out.skip_reason = "sigma exceeds 10^-4 t^2 Delta";
    return out;
  }
  out.family = random_disjoint_family(ms, out.delta, 2.0, seed);
  out.ran = true;
  return out;
}

}  // namespace energylab
