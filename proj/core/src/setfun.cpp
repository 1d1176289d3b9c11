#include "energylab/setfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "energylab/error.hpp"

namespace energylab {

// ---------------------------------------------------------------- GSet

GSet::GSet(Group group) : group_(std::move(group)), bits_((group_.size() + 63) / 64, 0) {}

GSet GSet::from_elements(Group group, std::span<const Element> elements) {
  GSet out(std::move(group));
  for (Element x : elements) {
    out.insert(x);
  }
  return out;
}

GSet GSet::whole(Group group) {
  GSet out(std::move(group));
  const std::size_t n = out.group_.size();
  for (std::size_t w = 0; w < out.bits_.size(); ++w) out.bits_[w] = ~std::uint64_t{0};
  if (n % 64) out.bits_.back() = (std::uint64_t{1} << (n % 64)) - 1;
  out.card_ = n;
  return out;
}

void GSet::insert(Element x) {
  group_.check(x);
  std::uint64_t& word = bits_[x >> 6];
  const std::uint64_t mask = std::uint64_t{1} << (x & 63);
  if (!(word & mask)) {
    word |= mask;
    ++card_;
  }
}

void GSet::erase(Element x) {
  group_.check(x);
  std::uint64_t& word = bits_[x >> 6];
  const std::uint64_t mask = std::uint64_t{1} << (x & 63);
  if (word & mask) {
    word &= ~mask;
    --card_;
  }
}

std::vector<Element> GSet::elements() const {
  std::vector<Element> out;
  out.reserve(card_);
  for_each([&](Element x) { out.push_back(x); });
  return out;
}

void GSet::recount() {
  card_ = 0;
  for (std::uint64_t w : bits_) card_ += static_cast<std::size_t>(__builtin_popcountll(w));
}

GSet GSet::intersect(const GSet& other) const {
  require_same_group(group_, other.group_);
  GSet out(group_);
  for (std::size_t w = 0; w < bits_.size(); ++w) out.bits_[w] = bits_[w] & other.bits_[w];
  out.recount();
  return out;
}

GSet GSet::unite(const GSet& other) const {
  require_same_group(group_, other.group_);
  GSet out(group_);
  for (std::size_t w = 0; w < bits_.size(); ++w) out.bits_[w] = bits_[w] | other.bits_[w];
  out.recount();
  return out;
}

GSet GSet::minus(const GSet& other) const {
  require_same_group(group_, other.group_);
  GSet out(group_);
  for (std::size_t w = 0; w < bits_.size(); ++w) out.bits_[w] = bits_[w] & ~other.bits_[w];
  out.recount();
  return out;
}

GSet GSet::translate(Element s) const {
  group_.check(s);
  GSet out(group_);
  for_each([&](Element a) { out.insert(group_.add_fast(a, s)); });
  return out;
}

GSet GSet::negate() const {
  GSet out(group_);
  for_each([&](Element a) { out.insert(group_.neg_fast(a)); });
  return out;
}

bool GSet::is_subset_of(const GSet& other) const {
  require_same_group(group_, other.group_);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    if (bits_[w] & ~other.bits_[w]) return false;
  }
  return true;
}

bool GSet::disjoint_with(const GSet& other) const {
  require_same_group(group_, other.group_);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    if (bits_[w] & other.bits_[w]) return false;
  }
  return true;
}

std::size_t GSet::intersection_size(const GSet& other) const {
  require_same_group(group_, other.group_);
  std::size_t n = 0;
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    n += static_cast<std::size_t>(__builtin_popcountll(bits_[w] & other.bits_[w]));
  }
  return n;
}

// ---------------------------------------------------------------- DenseFunc

namespace {

using Lanes = std::vector<std::int64_t>;
using WideLanes = std::vector<Int>;
using RealLanes = std::vector<double>;

bool fits_int64(const Int& v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

DenseFunc DenseFunc::zeros(Group group) {
  const std::size_t n = group.size();
  return DenseFunc(std::move(group), Lanes(n, 0));
}

DenseFunc DenseFunc::integer(Group group, std::vector<std::int64_t> values) {
  if (values.size() != group.size()) throw Error("function length does not match group order");
  return DenseFunc(std::move(group), std::move(values));
}

DenseFunc DenseFunc::wide(Group group, std::vector<Int> values) {
  if (values.size() != group.size()) throw Error("function length does not match group order");
  if (std::all_of(values.begin(), values.end(), fits_int64)) {
    Lanes narrow(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) narrow[i] = values[i].convert_to<std::int64_t>();
    return DenseFunc(std::move(group), std::move(narrow));
  }
  return DenseFunc(std::move(group), std::move(values));
}

DenseFunc DenseFunc::real(Group group, std::vector<double> values) {
  if (values.size() != group.size()) throw Error("function length does not match group order");
  return DenseFunc(std::move(group), std::move(values));
}

DenseFunc DenseFunc::indicator(const GSet& set) {
  Lanes values(set.group().size(), 0);
  set.for_each([&](Element x) { values[x] = 1; });
  return DenseFunc(set.group(), std::move(values));
}

DenseFunc::Kind DenseFunc::kind() const {
  switch (values_.index()) {
    case 0: return Kind::Integer;
    case 1: return Kind::Wide;
    default: return Kind::Real;
  }
}

Int DenseFunc::exact(Element x) const {
  group_.check(x);
  if (const auto* v = std::get_if<Lanes>(&values_)) return Int((*v)[x]);
  if (const auto* v = std::get_if<WideLanes>(&values_)) return (*v)[x];
  throw Error("real-valued function has no exact value");
}

double DenseFunc::approx(Element x) const {
  group_.check(x);
  if (const auto* v = std::get_if<Lanes>(&values_)) return static_cast<double>((*v)[x]);
  if (const auto* v = std::get_if<WideLanes>(&values_)) return to_double((*v)[x]);
  return std::get<RealLanes>(values_)[x];
}

std::span<const std::int64_t> DenseFunc::lanes() const {
  if (const auto* v = std::get_if<Lanes>(&values_)) return *v;
  throw Error("function does not fit 64-bit lanes");
}

std::vector<double> DenseFunc::to_doubles() const {
  std::vector<double> out(size());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = approx(static_cast<Element>(x));
  return out;
}

std::vector<Element> DenseFunc::support() const {
  std::vector<Element> out;
  std::visit(
      [&](const auto& v) {
        for (std::size_t x = 0; x < v.size(); ++x) {
          if (v[x] != 0) out.push_back(static_cast<Element>(x));
        }
      },
      values_);
  return out;
}

bool operator==(const DenseFunc& a, const DenseFunc& b) {
  return a.group_ == b.group_ && a.values_ == b.values_;
}

// ---------------------------------------------------------------- convolution

namespace {

enum class Pairing { Convolve, Correlate };

// Output index receiving f(y) g(z): y + z for convolution, z - y for correlation.
Element target(const Group& g, Pairing pairing, Element y, Element z) {
  return pairing == Pairing::Convolve ? g.add_fast(y, z) : g.sub_fast(z, y);
}

DenseFunc direct_wide(const DenseFunc& f, const DenseFunc& g, Pairing pairing) {
  const Group& grp = f.group();
  std::vector<Int> out(grp.size(), 0);
  const auto fs = f.support();
  const auto gs = g.support();
  for (Element y : fs) {
    const Int fy = f.exact(y);
    for (Element z : gs) out[target(grp, pairing, y, z)] += fy * g.exact(z);
  }
  return DenseFunc::wide(grp, std::move(out));
}

DenseFunc direct_real(const DenseFunc& f, const DenseFunc& g, Pairing pairing) {
  const Group& grp = f.group();
  std::vector<double> out(grp.size(), 0.0);
  const auto fv = f.to_doubles();
  const auto gv = g.to_doubles();
  const auto fs = f.support();
  const auto gs = g.support();
  for (Element y : fs) {
    for (Element z : gs) out[target(grp, pairing, y, z)] += fv[y] * gv[z];
  }
  return DenseFunc::real(grp, std::move(out));
}

DenseFunc direct(const DenseFunc& f, const DenseFunc& g, Pairing pairing) {
  if (!f.is_exact() || !g.is_exact()) return direct_real(f, g, pairing);
  if (f.kind() == DenseFunc::Kind::Wide || g.kind() == DenseFunc::Kind::Wide) {
    return direct_wide(f, g, pairing);
  }
  const Group& grp = f.group();
  const auto fl = f.lanes();
  const auto gl = g.lanes();
  const auto fs = f.support();
  const auto gs = g.support();
  std::vector<__int128> acc(grp.size(), 0);
  for (Element y : fs) {
    const __int128 fy = fl[y];
    for (Element z : gs) {
      __int128& slot = acc[target(grp, pairing, y, z)];
      // |fy * gz| < 2^126, so only the sum can overflow.
      if (__builtin_add_overflow(slot, fy * static_cast<__int128>(gl[z]), &slot)) {
        return direct_wide(f, g, pairing);
      }
    }
  }
  std::vector<std::int64_t> narrow(acc.size());
  for (std::size_t x = 0; x < acc.size(); ++x) {
    if (acc[x] < std::numeric_limits<std::int64_t>::min() || acc[x] > std::numeric_limits<std::int64_t>::max()) {
      std::vector<Int> wide(acc.size());
      for (std::size_t i = 0; i < acc.size(); ++i) wide[i] = from_int128(acc[i]);
      return DenseFunc::wide(grp, std::move(wide));
    }
    narrow[x] = static_cast<std::int64_t>(acc[x]);
  }
  return DenseFunc::integer(grp, std::move(narrow));
}

std::vector<double> transform_values(const DenseFunc& f, const DenseFunc& g, Pairing pairing) {
  Spectrum fh = fourier(f.group(), std::span<const double>(f.to_doubles()));
  const Spectrum gh = fourier(g.group(), std::span<const double>(g.to_doubles()));
  for (std::size_t i = 0; i < fh.values.size(); ++i) {
    const Complex a = pairing == Pairing::Convolve ? fh.values[i] : std::conj(fh.values[i]);
    fh.values[i] = a * gh.values[i];
  }
  const auto back = inverse_fourier(fh);
  std::vector<double> out(back.size());
  for (std::size_t i = 0; i < back.size(); ++i) out[i] = back[i].real();
  return out;
}

// Sum of absolute values, saturating at +inf.
double l1(const DenseFunc& f) {
  double s = 0;
  for (double v : f.to_doubles()) s += std::abs(v);
  return s;
}

DenseFunc via_transform(const DenseFunc& f, const DenseFunc& g, Pairing pairing) {
  const auto raw = transform_values(f, g, pairing);
  if (!f.is_exact() || !g.is_exact()) return DenseFunc::real(f.group(), raw);
  // Beyond 2^50 the rounding margin is gone; recompute exactly.
  if (l1(f) * l1(g) >= 0x1.0p50) return direct(f, g, pairing);
  std::vector<std::int64_t> out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double r = std::nearbyint(raw[i]);
    if (std::abs(raw[i] - r) > 0.25) return direct(f, g, pairing);
    out[i] = static_cast<std::int64_t>(r);
  }
  return DenseFunc::integer(f.group(), std::move(out));
}

DenseFunc dispatch(const DenseFunc& f, const DenseFunc& g, ConvolutionPath path, Pairing pairing) {
  require_same_group(f.group(), g.group());
  if (path == ConvolutionPath::Auto) {
    path = f.size() <= kDirectConvolutionLimit ? ConvolutionPath::Direct : ConvolutionPath::Transform;
  }
  return path == ConvolutionPath::Direct ? direct(f, g, pairing) : via_transform(f, g, pairing);
}

}  // namespace

DenseFunc convolve(const DenseFunc& f, const DenseFunc& g, ConvolutionPath path) {
  return dispatch(f, g, path, Pairing::Convolve);
}

DenseFunc correlate(const DenseFunc& f, const DenseFunc& g, ConvolutionPath path) {
  return dispatch(f, g, path, Pairing::Correlate);
}

std::vector<double> convolve_transform_raw(const DenseFunc& f, const DenseFunc& g) {
  require_same_group(f.group(), g.group());
  return transform_values(f, g, Pairing::Convolve);
}

std::vector<double> correlate_transform_raw(const DenseFunc& f, const DenseFunc& g) {
  require_same_group(f.group(), g.group());
  return transform_values(f, g, Pairing::Correlate);
}

DenseFunc iterated_convolve(const DenseFunc& f, int k) {
  if (k < 1) throw Error("iterated convolution needs k >= 1");
  DenseFunc out = convolve(f, f);
  for (int i = 1; i < k; ++i) out = convolve(out, f);
  return out;
}

Int sigma_k(const GSet& a, int k) {
  if (k < 1) throw Error("sigma_k needs k >= 1");
  if (k == 1) return a.contains(0) ? 1 : 0;
  return iterated_convolve(DenseFunc::indicator(a), k - 1).exact(0);
}

Int generalized_convolution(std::span<const DenseFunc> fs, std::span<const Element> xs) {
  if (fs.size() < 2) throw Error("generalized convolution needs at least two functions");
  if (xs.size() + 1 != fs.size()) throw Error("generalized convolution needs k - 1 shifts for k functions");
  const Group& g = fs[0].group();
  for (const auto& f : fs) {
    require_same_group(g, f.group());
    if (!f.is_exact()) throw Error("generalized convolution needs integer-valued functions");
  }
  for (Element x : xs) g.check(x);
  ExactSum total;
  for (Element z : fs[0].support()) {
    Int term = fs[0].exact(z);
    for (std::size_t i = 0; i < xs.size() && term != 0; ++i) term *= fs[i + 1].exact(g.add_fast(z, xs[i]));
    if (term != 0) total.add(term);
  }
  return total.value();
}

Spectrum fourier(const DenseFunc& f) {
  const auto values = f.to_doubles();
  return fourier(f.group(), std::span<const double>(values));
}

Spectrum fourier(const GSet& a) { return fourier(DenseFunc::indicator(a)); }

std::vector<std::int64_t> correlation_counts(const GSet& a, const GSet& b) {
  require_same_group(a.group(), b.group());
  const Group& g = a.group();
  std::vector<std::int64_t> out(g.size(), 0);
  const auto bs = b.elements();
  a.for_each([&](Element y) {
    for (Element z : bs) ++out[g.sub_fast(z, y)];
  });
  return out;
}

std::vector<std::int64_t> convolution_counts(const GSet& a, const GSet& b) {
  require_same_group(a.group(), b.group());
  const Group& g = a.group();
  std::vector<std::int64_t> out(g.size(), 0);
  const auto bs = b.elements();
  a.for_each([&](Element y) {
    for (Element z : bs) ++out[g.add_fast(y, z)];
  });
  return out;
}

// ---------------------------------------------------------------- slices and sumsets

GSet slice(const GSet& a, const GSet& b, const ShiftTuple& t) {
  require_same_group(a.group(), b.group());
  const Group& g = a.group();
  for (Element s : t.shifts) g.check(s);
  if (t.shifts.empty()) return b.intersect(a);
  GSet out(g);
  b.for_each([&](Element x) {
    for (Element s : t.shifts) {
      if (!a.contains(g.add_fast(x, s))) return;
    }
    out.insert(x);
  });
  return out;
}

GSet slice(const GSet& a, const ShiftTuple& t) { return slice(a, a, t); }

GSet slice(const GSet& a, Element s) { return slice(a, a, ShiftTuple{{s}}); }

GSet sumset(const GSet& a, const GSet& b) {
  require_same_group(a.group(), b.group());
  const Group& g = a.group();
  GSet out(g);
  const auto bs = b.elements();
  a.for_each([&](Element x) {
    for (Element y : bs) out.insert(g.add_fast(x, y));
  });
  return out;
}

GSet difference_set(const GSet& a, const GSet& b) {
  require_same_group(a.group(), b.group());
  const Group& g = a.group();
  GSet out(g);
  const auto bs = b.elements();
  a.for_each([&](Element x) {
    for (Element y : bs) out.insert(g.sub_fast(x, y));
  });
  return out;
}

void for_each_nonempty_cross_slice(const GSet& a, const GSet& b, std::size_t arity,
                                   const std::function<void(const ShiftTuple&, const GSet&)>& fn,
                                   std::uint64_t tuple_budget) {
  require_same_group(a.group(), b.group());
  const Group& g = a.group();
  ShiftTuple prefix;
  std::uint64_t visited = 0;
  // Extending a prefix with slice S by s keeps the slice nonempty iff s ∈ A - S.
  std::function<void(const GSet&)> recurse = [&](const GSet& current) {
    if (prefix.shifts.size() == arity) {
      if (++visited > tuple_budget) {
        throw CapError("shift-tuple enumeration exceeds the budget of " + std::to_string(tuple_budget));
      }
      fn(prefix, current);
      return;
    }
    const GSet candidates = difference_set(a, current);
    candidates.for_each([&](Element s) {
      GSet next(g);
      current.for_each([&](Element x) {
        if (a.contains(g.add_fast(x, s))) next.insert(x);
      });
      prefix.shifts.push_back(s);
      recurse(next);
      prefix.shifts.pop_back();
    });
  };
  if (arity == 0) {
    fn(prefix, b.intersect(a));
  } else if (!b.empty()) {
    recurse(b);
  }
}

void for_each_nonempty_slice(const GSet& a, std::size_t arity,
                             const std::function<void(const ShiftTuple&, const GSet&)>& fn,
                             std::uint64_t tuple_budget) {
  for_each_nonempty_cross_slice(a, a, arity, fn, tuple_budget);
}

namespace {

Int delta_direct(const GSet& a, Sign sign, std::uint64_t tuple_budget) {
  const Group& g = a.group();
  const auto elems = a.elements();
  const std::uint64_t m = elems.size();
  if (m * m * m > tuple_budget) {
    throw CapError("direct |A^2 ± Δ(A)| count exceeds the budget of " + std::to_string(tuple_budget));
  }
  std::vector<std::uint64_t> keys;
  keys.reserve(m * m * m);
  for (Element a1 : elems) {
    for (Element a2 : elems) {
      for (Element d : elems) {
        const Element y1 = sign == Sign::Minus ? g.sub_fast(a1, d) : g.add_fast(a1, d);
        const Element y2 = sign == Sign::Minus ? g.sub_fast(a2, d) : g.add_fast(a2, d);
        keys.push_back(static_cast<std::uint64_t>(y1) * g.size() + y2);
      }
    }
  }
  std::sort(keys.begin(), keys.end());
  return Int(static_cast<std::uint64_t>(std::unique(keys.begin(), keys.end()) - keys.begin()));
}

}  // namespace

Int delta_sumset_size(const GSet& a, int n, Sign sign, DeltaPath path, std::uint64_t tuple_budget) {
  if (n < 2) throw Error("|A^n ± Δ(A)| needs n >= 2");
  if (path == DeltaPath::Direct) {
    if (n != 2) throw Error("the direct |A^n ± Δ(A)| count is available for n = 2 only");
    return delta_direct(a, sign, tuple_budget);
  }
  ExactSum total;
  for_each_nonempty_slice(
      a, static_cast<std::size_t>(n - 1),
      [&](const ShiftTuple&, const GSet& s) {
        const GSet combined = sign == Sign::Minus ? difference_set(a, s) : sumset(a, s);
        total.add(static_cast<__int128>(combined.size()));
      },
      tuple_budget);
  return total.value();
}

bool katz_koester_check(const GSet& a, const ShiftTuple& t) {
  const Group& g = a.group();
  const GSet ax = slice(a, t);
  const GSet diff = difference_set(a, a);
  const GSet sum = sumset(a, a);
  ShiftTuple negated;
  for (Element s : t.shifts) negated.shifts.push_back(g.neg(s));
  const bool minus_ok = difference_set(a, ax).is_subset_of(slice(diff, negated));
  const bool plus_ok = sumset(a, ax).is_subset_of(slice(sum, t));
  return minus_ok && plus_ok;
}

}  // namespace energylab
