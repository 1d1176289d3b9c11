#include "energylab/group.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "energylab/error.hpp"

namespace energylab {

std::size_t Group::configured_max_size() {
  if (const char* env = std::getenv("ENERGY_LAB_MAX_N"); env != nullptr && *env != '\0') {
    std::size_t value = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc() || ptr != end || value < 2) {
      throw Error("ENERGY_LAB_MAX_N must be an integer >= 2");
    }
    return value;
  }
  return kDefaultMaxSize;
}

Group Group::make(std::vector<std::uint32_t> factors) {
  return make(std::move(factors), configured_max_size());
}

Group Group::make(std::vector<std::uint32_t> factors, std::size_t max_size) {
  if (factors.empty()) throw Error("group needs at least one cyclic factor");
  auto impl = std::make_shared<Impl>();
  std::size_t size = 1;
  bool all_two = true;
  for (std::uint32_t n : factors) {
    if (n < 2) throw Error("cyclic factor " + std::to_string(n) + " is smaller than 2");
    if (size > max_size / n) {
      throw CapError("group order exceeds the configured cap of " + std::to_string(max_size));
    }
    impl->strides.push_back(static_cast<std::uint32_t>(size));
    size *= n;
    all_two = all_two && n == 2;
  }
  impl->factors = std::move(factors);
  impl->size = size;
  impl->elementary2 = all_two;
  return Group(std::move(impl));
}

Group Group::parse(std::string_view spec) {
  std::vector<std::uint32_t> factors;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string_view::npos) comma = spec.size();
    std::string_view token = spec.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    std::uint32_t n = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), n);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw Error("cannot parse group factor list '" + std::string(spec) + "'");
    }
    factors.push_back(n);
    pos = comma + 1;
  }
  return make(std::move(factors));
}

std::string Group::describe() const {
  std::string out;
  for (std::size_t i = 0; i < impl_->factors.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(impl_->factors[i]);
  }
  return out;
}

void Group::check(std::int64_t index) const {
  if (!contains(index)) {
    throw Error("element index " + std::to_string(index) + " outside [0, " +
                std::to_string(impl_->size) + ")");
  }
}

Element Group::add(Element x, Element y) const {
  check(x);
  check(y);
  return add_fast(x, y);
}

Element Group::sub(Element x, Element y) const {
  check(x);
  check(y);
  return sub_fast(x, y);
}

Element Group::neg(Element x) const {
  check(x);
  return neg_fast(x);
}

Element Group::add_mixed(Element x, Element y) const {
  Element out = 0;
  for (std::size_t i = 0; i < impl_->factors.size(); ++i) {
    const std::uint32_t n = impl_->factors[i];
    std::uint32_t d = x % n + y % n;
    x /= n;
    y /= n;
    if (d >= n) d -= n;
    out += d * impl_->strides[i];
  }
  return out;
}

Element Group::neg_mixed(Element x) const {
  Element out = 0;
  for (std::size_t i = 0; i < impl_->factors.size(); ++i) {
    const std::uint32_t n = impl_->factors[i];
    const std::uint32_t d = x % n;
    x /= n;
    out += (d == 0 ? 0 : n - d) * impl_->strides[i];
  }
  return out;
}

std::vector<std::uint32_t> Group::decode(Element x) const {
  check(x);
  std::vector<std::uint32_t> digits;
  digits.reserve(impl_->factors.size());
  for (std::uint32_t n : impl_->factors) {
    digits.push_back(x % n);
    x /= n;
  }
  return digits;
}

Element Group::encode(std::span<const std::uint32_t> digits) const {
  if (digits.size() != impl_->factors.size()) throw Error("coordinate vector has wrong length");
  Element out = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] >= impl_->factors[i]) throw Error("coordinate out of range");
    out += digits[i] * impl_->strides[i];
  }
  return out;
}

void require_same_group(const Group& a, const Group& b) {
  if (!(a == b)) throw Error("group mismatch: " + a.describe() + " vs " + b.describe());
}

namespace {

Complex unit_root(std::size_t k, std::size_t n, int sign) {
  const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

// Plain product; std::complex operator* takes a slow path for inf/NaN recovery.
inline Complex mul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }

void radix2(std::span<Complex> a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    std::vector<Complex> tw(half);
    for (std::size_t k = 0; k < half; ++k) tw[k] = unit_root(k, len, sign);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = a[i + k];
        const Complex v = mul(a[i + k + half], tw[k]);
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

void naive(std::span<Complex> a, int sign) {
  const std::size_t n = a.size();
  std::vector<Complex> tw(n);
  for (std::size_t k = 0; k < n; ++k) tw[k] = unit_root(k, n, sign);
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += mul(a[j], tw[(j * k) % n]);
    out[k] = acc;
  }
  std::copy(out.begin(), out.end(), a.begin());
}

// Chirp-z: a length-n DFT as a power-of-two cyclic convolution.
void bluestein(std::span<Complex> a, int sign) {
  const std::size_t n = a.size();
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;
  std::vector<Complex> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the angle argument small.
    const std::size_t k2 = (k * k) % (2 * n);
    chirp[k] = unit_root(k2, 2 * n, sign);
  }
  std::vector<Complex> u(m), v(m);
  for (std::size_t k = 0; k < n; ++k) u[k] = mul(a[k], chirp[k]);
  v[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) v[k] = v[m - k] = std::conj(chirp[k]);
  radix2(u, -1);
  radix2(v, -1);
  for (std::size_t i = 0; i < m; ++i) u[i] = mul(u[i], v[i]);
  radix2(u, +1);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n; ++k) a[k] = mul(u[k] * scale, chirp[k]);
}

void transform(const Group& g, std::vector<Complex>& data, int sign) {
  const auto factors = g.factors();
  std::size_t stride = 1;
  std::vector<Complex> line;
  for (std::uint32_t n : factors) {
    const std::size_t block = stride * n;
    line.resize(n);
    for (std::size_t hi = 0; hi < data.size(); hi += block) {
      for (std::size_t lo = 0; lo < stride; ++lo) {
        const std::size_t base = hi + lo;
        for (std::size_t k = 0; k < n; ++k) line[k] = data[base + k * stride];
        dft_inplace(line, sign);
        for (std::size_t k = 0; k < n; ++k) data[base + k * stride] = line[k];
      }
    }
    stride = block;
  }
}

}  // namespace

void dft_inplace(std::span<Complex> line, int sign) {
  const std::size_t n = line.size();
  if (n == 2) {
    const Complex a = line[0];
    const Complex b = line[1];
    line[0] = a + b;
    line[1] = a - b;
  } else if (is_power_of_two(n)) {
    radix2(line, sign);
  } else if (n <= 64) {
    naive(line, sign);
  } else {
    bluestein(line, sign);
  }
}

Spectrum fourier(const Group& g, std::span<const Complex> values) {
  if (values.size() != g.size()) throw Error("function length does not match group order");
  std::vector<Complex> data(values.begin(), values.end());
  transform(g, data, -1);
  return Spectrum{g, std::move(data)};
}

Spectrum fourier(const Group& g, std::span<const double> values) {
  if (values.size() != g.size()) throw Error("function length does not match group order");
  std::vector<Complex> data(values.begin(), values.end());
  transform(g, data, -1);
  return Spectrum{g, std::move(data)};
}

std::vector<Complex> inverse_fourier(const Spectrum& spectrum) {
  if (spectrum.values.size() != spectrum.group.size()) {
    throw Error("spectrum length does not match group order");
  }
  std::vector<Complex> data = spectrum.values;
  transform(spectrum.group, data, +1);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (Complex& c : data) c *= scale;
  return data;
}

}  // namespace energylab
