#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "energylab/exact.hpp"
#include "energylab/group.hpp"

namespace energylab {

// A subset of a group, stored as a bit array with a cached cardinality.
class GSet {
 public:
  explicit GSet(Group group);

  static GSet from_elements(Group group, std::span<const Element> elements);
  static GSet from_elements(Group group, std::initializer_list<Element> elements) {
    return from_elements(std::move(group), std::span<const Element>(elements.begin(), elements.size()));
  }
  static GSet whole(Group group);

  const Group& group() const { return group_; }
  std::size_t size() const { return card_; }
  bool empty() const { return card_ == 0; }

  bool contains(Element x) const { return (bits_[x >> 6] >> (x & 63)) & 1u; }
  void insert(Element x);
  void erase(Element x);

  // Sorted ascending.
  std::vector<Element> elements() const;
  std::span<const std::uint64_t> words() const { return bits_; }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word) {
        const int bit = __builtin_ctzll(word);
        fn(static_cast<Element>(w * 64 + bit));
        word &= word - 1;
      }
    }
  }

  GSet intersect(const GSet& other) const;
  GSet unite(const GSet& other) const;
  GSet minus(const GSet& other) const;
  // {a + s : a in A}.
  GSet translate(Element s) const;
  // {-a : a in A}.
  GSet negate() const;

  bool is_subset_of(const GSet& other) const;
  bool disjoint_with(const GSet& other) const;
  std::size_t intersection_size(const GSet& other) const;

  friend bool operator==(const GSet& a, const GSet& b) {
    return a.group_ == b.group_ && a.bits_ == b.bits_;
  }

 private:
  void recount();

  Group group_;
  std::vector<std::uint64_t> bits_;
  std::size_t card_ = 0;
};

// A function on the group. Integer values live in 64-bit lanes and move to
// arbitrary precision only when a result does not fit; real values are flagged.
class DenseFunc {
 public:
  enum class Kind { Integer, Wide, Real };

  static DenseFunc zeros(Group group);
  static DenseFunc integer(Group group, std::vector<std::int64_t> values);
  // Narrows to 64-bit lanes when every value fits.
  static DenseFunc wide(Group group, std::vector<Int> values);
  static DenseFunc real(Group group, std::vector<double> values);
  static DenseFunc indicator(const GSet& set);

  const Group& group() const { return group_; }
  Kind kind() const;
  bool is_exact() const { return kind() != Kind::Real; }
  std::size_t size() const { return group_.size(); }

  Int exact(Element x) const;
  double approx(Element x) const;
  // 64-bit lanes; throws unless kind() == Integer.
  std::span<const std::int64_t> lanes() const;
  std::vector<double> to_doubles() const;
  // Elements with a nonzero value, ascending.
  std::vector<Element> support() const;

  friend bool operator==(const DenseFunc& a, const DenseFunc& b);

 private:
  using Storage = std::variant<std::vector<std::int64_t>, std::vector<Int>, std::vector<double>>;
  DenseFunc(Group group, Storage storage) : group_(std::move(group)), values_(std::move(storage)) {}

  Group group_;
  Storage values_;
};

// Shifts (s_1, ..., s_{k-1}) of an iterated intersection; the empty tuple is allowed.
struct ShiftTuple {
  std::vector<Element> shifts;

  std::size_t arity() const { return shifts.size(); }
  friend bool operator==(const ShiftTuple&, const ShiftTuple&) = default;
};

enum class ConvolutionPath { Auto, Direct, Transform };

// Largest group order for which Auto picks the direct path.
inline constexpr std::size_t kDirectConvolutionLimit = std::size_t{1} << 14;

// (f * g)(x) = sum_y f(y) g(x - y).
DenseFunc convolve(const DenseFunc& f, const DenseFunc& g, ConvolutionPath path = ConvolutionPath::Auto);
// (f o g)(x) = sum_y f(y) g(y + x).
DenseFunc correlate(const DenseFunc& f, const DenseFunc& g, ConvolutionPath path = ConvolutionPath::Auto);

// Unrounded transform-path values, for residual checks against the exact path.
std::vector<double> convolve_transform_raw(const DenseFunc& f, const DenseFunc& g);
std::vector<double> correlate_transform_raw(const DenseFunc& f, const DenseFunc& g);

// Self-convolution with k + 1 factors: k = 1 gives f * f.
DenseFunc iterated_convolve(const DenseFunc& f, int k);

// sigma_k(A) = #{a_1 + ... + a_k = 0}, k >= 1.
Int sigma_k(const GSet& a, int k);

// C_k(f_0, ..., f_{k-1})(x_1, ..., x_{k-1}) = sum_z f_0(z) f_1(z + x_1) ... f_{k-1}(z + x_{k-1}).
Int generalized_convolution(std::span<const DenseFunc> fs, std::span<const Element> xs);

Spectrum fourier(const DenseFunc& f);
Spectrum fourier(const GSet& a);

// Counts for sets: (A o B)(x) = |A ∩ (B - x)| and (A * B)(x) = #{a + b = x}.
std::vector<std::int64_t> correlation_counts(const GSet& a, const GSet& b);
std::vector<std::int64_t> convolution_counts(const GSet& a, const GSet& b);

// B ∩ (A - s_1) ∩ ... ∩ (A - s_{k-1}); the empty tuple gives B ∩ A.
GSet slice(const GSet& a, const GSet& b, const ShiftTuple& t);
GSet slice(const GSet& a, const ShiftTuple& t);
// A ∩ (A - s).
GSet slice(const GSet& a, Element s);

GSet sumset(const GSet& a, const GSet& b);
// {a - b : a in A, b in B}.
GSet difference_set(const GSet& a, const GSet& b);

enum class Sign { Minus, Plus };

enum class DeltaPath {
  // Distinct tuples counted directly; n = 2 only.
  Direct,
  // Sum over shift tuples s in A^{n-1} - Δ(A) of |A ± A_s|.
  Identity,
};

// Largest number of shift tuples the identity path will visit.
inline constexpr std::uint64_t kDefaultTupleBudget = 50'000'000;

// |A^n - Δ(A)| (Sign::Minus) or |A^n + Δ(A)| (Sign::Plus).
Int delta_sumset_size(const GSet& a, int n, Sign sign, DeltaPath path = DeltaPath::Identity,
                      std::uint64_t tuple_budget = kDefaultTupleBudget);

// Visits every tuple s of the given arity with A_s nonempty, in lexicographic order,
// passing the tuple and the slice A_s. Throws CapError past the budget.
void for_each_nonempty_slice(const GSet& a, std::size_t arity,
                             const std::function<void(const ShiftTuple&, const GSet&)>& fn,
                             std::uint64_t tuple_budget = kDefaultTupleBudget);

// Same enumeration for B ∩ (A - s_1) ∩ ... ∩ (A - s_k), i.e. slice(a, b, s).
void for_each_nonempty_cross_slice(const GSet& a, const GSet& b, std::size_t arity,
                                   const std::function<void(const ShiftTuple&, const GSet&)>& fn,
                                   std::uint64_t tuple_budget = kDefaultTupleBudget);

// A - A_x ⊆ (A-A)_{-x} and A + A_x ⊆ (A+A)_x for the tuple x.
bool katz_koester_check(const GSet& a, const ShiftTuple& t);

}  // namespace energylab
