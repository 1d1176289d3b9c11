#include "energylab/constructors.hpp"

#include <numeric>

#include "energylab/error.hpp"
#include "energylab/random.hpp"

namespace energylab {

namespace {

Group cube(int n) {
  if (n < 1) throw Error("F_2^n needs n >= 1");
  return Group::make(std::vector<std::uint32_t>(static_cast<std::size_t>(n), 2));
}

}  // namespace

GSet subspace(int n, int dim) {
  if (dim < 0 || dim > n) throw Error("subspace dimension must lie in [0, n]");
  GSet out(cube(n));
  for (Element x = 0; x < (Element{1} << dim); ++x) out.insert(x);
  return out;
}

bool is_dissociated(const GSet& l) {
  if (l.size() > kMaxDissociatedSize) {
    throw CapError("dissociativity check is capped at " + std::to_string(kMaxDissociatedSize) + " elements");
  }
  const Group& g = l.group();
  const auto elems = l.elements();
  const std::uint64_t count = std::uint64_t{1} << elems.size();
  if (count > g.size()) return false;
  // Walk the subsets in Gray-code order so each sum differs from the last by one element.
  std::vector<bool> seen(g.size(), false);
  Element sum = 0;
  seen[0] = true;
  for (std::uint64_t i = 1; i < count; ++i) {
    const int bit = __builtin_ctzll(i);
    const bool adding = ((i ^ (i >> 1)) >> bit) & 1u;
    sum = adding ? g.add_fast(sum, elems[bit]) : g.sub_fast(sum, elems[bit]);
    if (seen[sum]) return false;
    seen[sum] = true;
  }
  return true;
}

HPlusLambda h_plus_lambda_parts(int n, int dim, int k) {
  if (k < 1) throw Error("|Λ| = K must be at least 1");
  if (dim < 0 || dim + k - 1 > n) throw Error("H ⊕ Λ needs dim + K - 1 <= n");
  GSet h = subspace(n, dim);
  GSet lambda(h.group());
  lambda.insert(0);
  for (int i = 0; i < k - 1; ++i) lambda.insert(Element{1} << (dim + i));
  GSet a = sumset(h, lambda);
  if (a.size() != h.size() * lambda.size()) throw Error("H + Λ is not a direct sum");
  return {std::move(a), std::move(h), std::move(lambda)};
}

GSet h_plus_lambda(int n, int dim, int k) { return h_plus_lambda_parts(n, dim, k).a; }

GSet arithmetic_progression(std::uint32_t modulus, std::int64_t start, std::int64_t step, std::int64_t len) {
  if (len <= 0) throw Error("progression length must be positive");
  const Group g = Group::make({modulus});
  const std::int64_t n = modulus;
  const auto reduce = [n](std::int64_t v) { return ((v % n) + n) % n; };
  GSet out(g);
  std::int64_t x = reduce(start);
  const std::int64_t d = reduce(step);
  for (std::int64_t i = 0; i < len; ++i) {
    out.insert(static_cast<Element>(x));
    x = (x + d) % n;
  }
  return out;
}

GSet random_set(const Group& g, double density, std::uint64_t seed) {
  if (!(density > 0 && density <= 1)) throw Error("density must lie in (0, 1]");
  SplitMix64 rng(seed);
  GSet out(g);
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (rng.bernoulli(density)) out.insert(static_cast<Element>(x));
  }
  return out;
}

GSet coset_union(int n, const std::vector<int>& dims) {
  if (dims.empty()) throw Error("coset union needs at least one block");
  int total = 0;
  for (int d : dims) {
    if (d < 0) throw Error("block dimension must be nonnegative");
    total += d;
  }
  if (total > n) throw Error("blocks exceed n coordinates");
  GSet out(cube(n));
  int offset = 0;
  for (int d : dims) {
    for (Element x = 0; x < (Element{1} << d); ++x) out.insert(x << offset);
    offset += d;
  }
  return out;
}

}  // namespace energylab
