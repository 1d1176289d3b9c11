#pragma once

#include <cstdint>
#include <vector>

#include "energylab/setfun.hpp"

namespace energylab {

// Span of the first dim standard basis vectors of F_2^n.
GSet subspace(int n, int dim);

inline constexpr std::size_t kMaxDissociatedSize = 24;

// True iff all 2^|L| subset sums are distinct (in F_2^n: no nonempty subset sums to 0).
bool is_dissociated(const GSet& l);

struct HPlusLambda {
  GSet a;
  GSet h;
  GSet lambda;
};

// H = span(e_1..e_dim), Λ = {0, e_{dim+1}, ..., e_{dim+K-1}}, A = H ⊕ Λ in F_2^n.
HPlusLambda h_plus_lambda_parts(int n, int dim, int k);
GSet h_plus_lambda(int n, int dim, int k);

// {start + i step mod N : 0 <= i < len} in Z_N.
GSet arithmetic_progression(std::uint32_t modulus, std::int64_t start, std::int64_t step, std::int64_t len);

// Each element kept independently with probability density, in index order.
GSet random_set(const Group& g, double density, std::uint64_t seed);

// Union of subspaces of F_2^n of the given dimensions on consecutive coordinate blocks.
GSet coset_union(int n, const std::vector<int>& dims);

}  // namespace energylab
