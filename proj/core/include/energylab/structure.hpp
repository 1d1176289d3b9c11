#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "energylab/energy.hpp"
#include "energylab/setfun.hpp"

namespace energylab {

struct FamilyMember {
  // Translate b_j, slice shift s_j, or source index i, depending on the algorithm.
  Element tag = 0;
  GSet set;
};

// Pairwise disjoint sets produced by one of the extraction procedures, together with
// the count the procedure guarantees and the post-hoc audit of both.
struct DisjointFamily {
  std::vector<FamilyMember> members;
  std::size_t min_size = 0;
  std::string algorithm;
  std::vector<std::pair<std::string, std::string>> parameters;

  // Guaranteed lower bound on members.size(), as a real number.
  double bound = 0;
  bool bound_met = false;
  bool disjoint = false;
  bool contained = false;
  // Attempts used (random family only).
  int attempts = 0;
  bool succeeded = true;

  bool audit_passed() const { return bound_met && disjoint && contained && succeeded; }
  std::size_t count() const { return members.size(); }
};

// True iff the member sets are pairwise disjoint and each has at least min_size elements.
bool members_disjoint(const DisjointFamily& family);

// Scan b ∈ B in index order, keeping (A + b) minus the union so far when it has >= |A|/2
// elements. The count is >= |A||B|^2 / (16 E(A,B)) or >= |B|/2.
DisjointFamily greedy_disjoint_translates(const GSet& a, const GSet& b);

// Disjoint S_j ⊆ S ∩ (A + b_j) of size ceil(σ / (8|B|)), σ = sum_{x in S} (A*B)(x).
// Throws PreconditionError when σ < 16|B|.
DisjointFamily greedy_disjoint_in_target(const GSet& a, const GSet& b, const GSet& s);

// Shifts s_j with pairwise disjoint A_{s_j}: repeatedly take the s minimizing |A - A_s|
// in the surviving part of D and delete A - A_s, until fewer than |D|/2 survive.
DisjointFamily greedy_disjoint_slices(const GSet& a, const GSet& d);

inline constexpr int kRandomFamilyRetries = 64;

// Sample each M_i with probability p = tΔ/(2σ), strip elements of earlier sampled sets and
// keep the rest when of size >= Δ/(8C+4). Retries on fresh streams until the count reaches
// t^2 Δ / ((32C+16) σ). Throws PreconditionError when the size or σ hypotheses fail.
DisjointFamily random_disjoint_family(const std::vector<GSet>& ms, std::int64_t delta, double c,
                                      std::uint64_t seed);

// σ = sum_{i,j} |M_i ∩ M_j|, computed from element multiplicities.
Int family_overlap(const std::vector<GSet>& ms);

// ((A*A) o A)(x) for every x.
std::vector<std::int64_t> cubic_convolution(const GSet& a);

// A' = {x ∈ A : ((A*A) o A)(x) <= 2E(A)/|A|}; always |A'| >= |A|/2.
GSet regular_part(const GSet& a);

inline constexpr std::size_t kMaxExhaustiveSize = 22;
inline constexpr std::size_t kMaxOracleSize = 18;

struct GammaResult {
  double gamma = 1;
  GSet witness;
};

// min over B ⊆ A, |B| >= β|A|, of E_α(B) (|A|/|B|)^{2α} / E_α(A). Requires |A| <= 22.
GammaResult connectedness_gamma(const GSet& a, double alpha, double beta);
// Same with ||B||_{U^k} (|A|/|B|)^{2^k} / ||A||_{U^k}.
GammaResult gowers_connectedness_gamma(const GSet& a, int k, double beta);

struct ExtractionResult {
  GSet subset;
  int steps = 0;
  Int energy_before = 0;
  Int energy_after = 0;
  // c = E_q(A) / (|A|^2 ||q||_∞) and the resulting cap on the number of steps.
  double c = 0;
  double step_bound = 0;
  // E_q(A') > (1 - β2 ρ)^{2s} E_q(A), exact; equality allowed when s = 0.
  bool energy_bound_holds = false;
  bool step_bound_holds = false;
};

// Repeatedly removes the first C ⊆ A^i (ascending bitmask over the sorted elements) with
// β1|A^i| <= |C| <= β2|A^i| and E_q(C, A^i) < ρ μ(C) E_q(A^i), until none is left.
ExtractionResult extract_connected_subset(const GSet& a, const WeightKernel& q, double beta1, double beta2,
                                          double rho);

// γ = 2^{-(2sk+2k-2s)} β^{2k} (2-β)^{2s(k-1)}.
double connected_k_gamma(int k, double beta, int s);

// The q = (A o A)^{k-1}, β1 = β, β2 = 1, ρ = β/2 specialization.
ExtractionResult extract_connected_k(const GSet& a, int k, double beta);

struct SliceScan {
  bool found = false;
  Element s = 0;
  double ratio = 0;
};

// Over s != 0 with |A_s| >= |A|/(2K), K = |A|^3/E(A), the s minimizing E(A_s)/|A_s|^3.
SliceScan min_slice_energy_ratio(const GSet& a);

struct DoublingResult {
  GSet subset;
  double doubling = 0;
};

// Exhaustive: A' ⊆ A with |A'| >= minFrac |A| minimizing |A' - A'|/|A'|. Requires |A| <= 18.
DoublingResult small_doubling_subset_oracle(const GSet& a, double min_frac);

struct SlicePipelineReport {
  bool ran = false;
  std::string skip_reason;
  std::size_t regular_size = 0;
  std::int64_t delta = 0;
  std::size_t popular_count = 0;
  Int sigma = 0;
  DisjointFamily family;
};

// Regular part A', a dyadic level Δ carrying the most of E(A') and the slices A'_s over that
// level, fed to random_disjoint_family when its hypotheses hold.
SlicePipelineReport disjoint_slices_pipeline(const GSet& a, std::uint64_t seed);

}  // namespace energylab
