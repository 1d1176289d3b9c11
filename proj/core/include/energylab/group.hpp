#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace energylab {

// Canonical index of a group element, in [0, N).
using Element = std::uint32_t;

// A finite abelian group Z_{n_1} x ... x Z_{n_r}. Elements are mixed-radix indices with
// the first factor as the least significant digit. Copies share one immutable description.
class Group {
 public:
  static constexpr std::size_t kDefaultMaxSize = std::size_t{1} << 20;

  // Cap from ENERGY_LAB_MAX_N when set, otherwise kDefaultMaxSize.
  static std::size_t configured_max_size();

  static Group make(std::vector<std::uint32_t> factors);
  static Group make(std::vector<std::uint32_t> factors, std::size_t max_size);
  // "2,2,2,2" or "101".
  static Group parse(std::string_view spec);

  std::size_t size() const { return impl_->size; }
  std::span<const std::uint32_t> factors() const { return impl_->factors; }
  std::string describe() const;

  bool is_cyclic() const { return impl_->factors.size() == 1; }
  bool is_elementary_2() const { return impl_->elementary2; }

  Element zero() const { return 0; }
  Element add(Element x, Element y) const;
  Element sub(Element x, Element y) const;
  Element neg(Element x) const;

  // Unchecked variants for inner loops; arguments must already be in range.
  Element add_fast(Element x, Element y) const {
    if (impl_->elementary2) return x ^ y;
    if (impl_->factors.size() == 1) {
      const Element s = x + y;
      return s >= impl_->size ? s - static_cast<Element>(impl_->size) : s;
    }
    return add_mixed(x, y);
  }
  Element neg_fast(Element x) const {
    if (impl_->elementary2) return x;
    if (impl_->factors.size() == 1) return x == 0 ? 0 : static_cast<Element>(impl_->size) - x;
    return neg_mixed(x);
  }
  Element sub_fast(Element x, Element y) const { return add_fast(x, neg_fast(y)); }

  std::vector<std::uint32_t> decode(Element x) const;
  Element encode(std::span<const std::uint32_t> digits) const;

  bool contains(std::int64_t index) const {
    return index >= 0 && static_cast<std::size_t>(index) < impl_->size;
  }
  void check(std::int64_t index) const;

  friend bool operator==(const Group& a, const Group& b) {
    return a.impl_ == b.impl_ || a.impl_->factors == b.impl_->factors;
  }

 private:
  struct Impl {
    std::vector<std::uint32_t> factors;
    std::vector<std::uint32_t> strides;
    std::size_t size = 1;
    bool elementary2 = false;
  };

  explicit Group(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  Element add_mixed(Element x, Element y) const;
  Element neg_mixed(Element x) const;

  std::shared_ptr<const Impl> impl_;
};

// Throws Error unless both groups are the same.
void require_same_group(const Group& a, const Group& b);

using Complex = std::complex<double>;

// Values of a transform, indexed by dual character (identified with group elements).
struct Spectrum {
  Group group;
  std::vector<Complex> values;
};

// f^(xi) = sum_x f(x) e(-xi.x), computed axis by axis; factors of 2 use the +-1 butterfly.
Spectrum fourier(const Group& g, std::span<const Complex> values);
Spectrum fourier(const Group& g, std::span<const double> values);

// f(x) = N^{-1} sum_xi f^(xi) e(xi.x).
std::vector<Complex> inverse_fourier(const Spectrum& spectrum);

// In-place length-n DFT with kernel e(sign * j k / n), sign = -1 or +1.
void dft_inplace(std::span<Complex> line, int sign);

}  // namespace energylab
