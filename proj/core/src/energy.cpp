#include "energylab/energy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "energylab/error.hpp"

namespace energylab {

namespace {

constexpr double kMaxExactExponent = 64;

bool integral(double k) { return std::floor(k) == k && k <= kMaxExactExponent; }

void require_exponent(double k) {
  if (!(k >= 1)) throw Error("energy exponent must be >= 1");
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// sum_x w(x) c(x)^k over correlation counts c, where w(x) is 0/1 from a mask or 1.
template <class Weight>
EnergyValue power_sum(EnergyKind kind, const std::vector<std::int64_t>& c, double k, Weight&& weight) {
  if (integral(k)) {
    ExactSum total;
    const auto e = static_cast<unsigned>(k);
    for (std::size_t x = 0; x < c.size(); ++x) {
      if (c[x] != 0 && weight(x)) total.add_power(c[x], e);
    }
    return EnergyValue::of(kind, k, total.value());
  }
  double total = 0;
  for (std::size_t x = 0; x < c.size(); ++x) {
    if (c[x] != 0 && weight(x)) total += std::pow(static_cast<double>(c[x]), k);
  }
  return EnergyValue::real(kind, k, total);
}

}  // namespace

std::string to_string(EnergyKind kind) {
  switch (kind) {
    case EnergyKind::E: return "E";
    case EnergyKind::T: return "T";
    case EnergyKind::Sigma: return "sigma";
    case EnergyKind::Restricted: return "restricted";
    case EnergyKind::Mixed: return "mixed";
    case EnergyKind::Weighted: return "weighted";
    case EnergyKind::Wiener: return "wiener";
  }
  return "unknown";
}

std::string EnergyValue::str() const { return exact ? to_decimal(value) : shortest(approx); }

EnergyValue EnergyValue::of(EnergyKind kind, double k, Int v) {
  EnergyValue out;
  out.kind = kind;
  out.k = k;
  out.exact = true;
  out.approx = to_double(v);
  out.value = std::move(v);
  return out;
}

EnergyValue EnergyValue::real(EnergyKind kind, double k, double v) {
  EnergyValue out;
  out.kind = kind;
  out.k = k;
  out.exact = false;
  out.approx = v;
  return out;
}

EnergyValue energy_k(const GSet& a, double k) {
  require_exponent(k);
  return power_sum(EnergyKind::E, correlation_counts(a, a), k, [](std::size_t) { return true; });
}

EnergyValue energy_pair_k(const GSet& a, const GSet& b, double k) {
  require_exponent(k);
  const auto ca = correlation_counts(a, a);
  const auto cb = correlation_counts(b, b);
  if (integral(k)) {
    ExactSum total;
    const auto e = static_cast<unsigned>(k) - 1;
    for (std::size_t x = 0; x < ca.size(); ++x) {
      if (ca[x] == 0 || (cb[x] == 0 && e > 0)) continue;
      if (e == 0) {
        total.add(static_cast<__int128>(ca[x]));
      } else {
        total.add(Int(ca[x]) * ipow(Int(cb[x]), e));
      }
    }
    return EnergyValue::of(EnergyKind::E, k, total.value());
  }
  double total = 0;
  for (std::size_t x = 0; x < ca.size(); ++x) {
    if (ca[x] != 0 && cb[x] != 0) total += static_cast<double>(ca[x]) * std::pow(static_cast<double>(cb[x]), k - 1);
  }
  return EnergyValue::real(EnergyKind::E, k, total);
}

EnergyValue mixed_energy(std::span<const DenseFunc> fs) {
  if (fs.size() < 2) throw Error("mixed energy needs at least two functions");
  std::vector<DenseFunc> corr;
  corr.reserve(fs.size());
  bool exact = true;
  for (const auto& f : fs) {
    require_same_group(fs[0].group(), f.group());
    corr.push_back(correlate(f, f));
    exact = exact && f.is_exact();
  }
  const double k = static_cast<double>(fs.size());
  const std::size_t n = fs[0].size();
  if (exact) {
    ExactSum total;
    for (std::size_t x = 0; x < n; ++x) {
      Int term = 1;
      for (const auto& c : corr) {
        term *= c.exact(static_cast<Element>(x));
        if (term == 0) break;
      }
      if (term != 0) total.add(term);
    }
    return EnergyValue::of(EnergyKind::Mixed, k, total.value());
  }
  double total = 0;
  for (std::size_t x = 0; x < n; ++x) {
    double term = 1;
    for (const auto& c : corr) term *= c.approx(static_cast<Element>(x));
    total += term;
  }
  return EnergyValue::real(EnergyKind::Mixed, k, total);
}

EnergyValue mixed_energy(std::span<const GSet> sets) {
  std::vector<DenseFunc> fs;
  fs.reserve(sets.size());
  for (const auto& s : sets) fs.push_back(DenseFunc::indicator(s));
  return mixed_energy(fs);
}

namespace {

EnergyValue square_sum(const DenseFunc& f, double k) {
  if (f.kind() == DenseFunc::Kind::Integer) {
    ExactSum total;
    for (std::int64_t v : f.lanes()) {
      if (v != 0) total.add_product(v, v);
    }
    return EnergyValue::of(EnergyKind::T, k, total.value());
  }
  if (f.kind() == DenseFunc::Kind::Wide) {
    ExactSum total;
    for (std::size_t x = 0; x < f.size(); ++x) {
      const Int v = f.exact(static_cast<Element>(x));
      total.add(v * v);
    }
    return EnergyValue::of(EnergyKind::T, k, total.value());
  }
  double total = 0;
  for (double v : f.to_doubles()) total += v * v;
  return EnergyValue::real(EnergyKind::T, k, total);
}

}  // namespace

EnergyValue t_energy(std::span<const GSet> sets) {
  if (sets.size() < 2) throw Error("T_k needs k >= 2");
  DenseFunc acc = DenseFunc::indicator(sets[0]);
  for (std::size_t i = 1; i < sets.size(); ++i) acc = convolve(acc, DenseFunc::indicator(sets[i]));
  return square_sum(acc, static_cast<double>(sets.size()));
}

EnergyValue t_energy(const GSet& a, int k) {
  std::vector<GSet> sets(static_cast<std::size_t>(std::max(k, 0)), a);
  return t_energy(sets);
}

EnergyValue t_energy(const DenseFunc& f, int k) {
  if (k < 2) throw Error("T_k needs k >= 2");
  return square_sum(iterated_convolve(f, k - 1), k);
}

EnergyValue restricted_energy(const GSet& a, const GSet& p, double k) {
  require_exponent(k);
  require_same_group(a.group(), p.group());
  auto out = power_sum(EnergyKind::Restricted, correlation_counts(a, a), k,
                       [&](std::size_t x) { return p.contains(static_cast<Element>(x)); });
  return out;
}

EnergyValue sigma_p(const GSet& a, const GSet& p) {
  auto out = restricted_energy(a, p, 1);
  out.kind = EnergyKind::Sigma;
  return out;
}

EnergyValue starred_energy(const GSet& a, double k) {
  require_exponent(k);
  auto out = power_sum(EnergyKind::Restricted, correlation_counts(a, a), k, [](std::size_t x) { return x != 0; });
  return out;
}

// ---------------------------------------------------------------- kernels

WeightKernel::WeightKernel(Group group, std::vector<std::int64_t> difference, std::vector<std::int64_t> matrix)
    : group_(std::move(group)), difference_(std::move(difference)), matrix_(std::move(matrix)) {
  for (std::int64_t v : difference_) sup_norm_ = std::max(sup_norm_, v < 0 ? -v : v);
  for (std::int64_t v : matrix_) sup_norm_ = std::max(sup_norm_, v < 0 ? -v : v);
}

WeightKernel WeightKernel::difference(DenseFunc w) {
  const auto lanes = w.lanes();
  const Group& g = w.group();
  for (std::size_t x = 0; x < lanes.size(); ++x) {
    if (lanes[x] != lanes[g.neg_fast(static_cast<Element>(x))]) {
      throw Error("difference kernel is not symmetric: w(x) != w(-x)");
    }
  }
  return WeightKernel(g, std::vector<std::int64_t>(lanes.begin(), lanes.end()), {});
}

WeightKernel WeightKernel::matrix(Group group, std::vector<std::int64_t> values) {
  const std::size_t n = group.size();
  if (values.size() != n * n) throw Error("kernel matrix must be N x N");
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (values[x * n + y] != values[y * n + x]) throw Error("kernel matrix is not symmetric");
    }
  }
  return WeightKernel(std::move(group), {}, std::move(values));
}

WeightKernel WeightKernel::correlation_power(const GSet& a, unsigned power) {
  auto c = correlation_counts(a, a);
  for (auto& v : c) {
    Int p = ipow(Int(v), power);
    if (p > std::numeric_limits<std::int64_t>::max()) throw CapError("kernel value exceeds 64 bits");
    v = p.convert_to<std::int64_t>();
  }
  return difference(DenseFunc::integer(a.group(), std::move(c)));
}

std::int64_t WeightKernel::operator()(Element x, Element y) const {
  if (is_difference()) return difference_[group_.sub_fast(x, y)];
  return matrix_[static_cast<std::size_t>(x) * group_.size() + y];
}

std::optional<bool> WeightKernel::psd() const {
  const std::size_t n = group_.size();
  if (is_difference()) {
    std::vector<double> w(difference_.begin(), difference_.end());
    const Spectrum s = fourier(group_, std::span<const double>(w));
    double lo = 0, hi = 0;
    for (const Complex& c : s.values) {
      lo = std::min(lo, c.real());
      hi = std::max(hi, std::abs(c.real()));
    }
    return lo >= -1e-9 * std::max(hi, 1.0);
  }
  if (n > 512) return std::nullopt;
  Eigen::MatrixXd m(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) m(x, y) = static_cast<double>(matrix_[x * n + y]);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double norm = std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
  return ev.minCoeff() >= -1e-9 * std::max(norm, 1.0);
}

Int weighted_energy(const GSet& a, const GSet& b, const WeightKernel& q) {
  require_same_group(a.group(), b.group());
  require_same_group(a.group(), q.group());
  const auto bs = b.elements();
  ExactSum total;
  a.for_each([&](Element x) {
    for (Element y : bs) total.add(static_cast<__int128>(q(x, y)));
  });
  return total.value();
}

Int weighted_energy(const GSet& a, const WeightKernel& q) { return weighted_energy(a, a, q); }

double wiener_norm(const GSet& a) {
  const Spectrum s = fourier(a);
  double total = 0;
  for (const Complex& c : s.values) total += std::abs(c);
  return total / static_cast<double>(a.group().size());
}

}  // namespace energylab
