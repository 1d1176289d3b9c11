#include "energylab/exact.hpp"

#include <limits>

namespace energylab {

Int ipow(const Int& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

Rational rpow(const Rational& base, unsigned exponent) {
  return Rational(ipow(numerator(base), exponent), ipow(denominator(base), exponent));
}

double to_double(const Int& v) { return v.convert_to<double>(); }

Int from_int128(__int128 v) {
  const bool negative = v < 0;
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Int out = static_cast<std::uint64_t>(mag >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(mag);
  return negative ? Int(-out) : out;
}

void ExactSum::add(__int128 term) {
  if (!escalated_) {
    __int128 next;
    if (!__builtin_add_overflow(lane_, term, &next)) {
      lane_ = next;
      return;
    }
    wide_ = from_int128(lane_);
    escalated_ = true;
  }
  wide_ += from_int128(term);
}

void ExactSum::add(const Int& term) {
  if (!escalated_) {
    wide_ = from_int128(lane_);
    escalated_ = true;
  }
  wide_ += term;
}

void ExactSum::add_product(std::int64_t a, std::int64_t b) {
  add(static_cast<__int128>(a) * static_cast<__int128>(b));
}

void ExactSum::add_power(std::int64_t base, unsigned exponent) {
  __int128 acc = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(acc, static_cast<__int128>(base), &acc)) {
      add(ipow(Int(base), exponent));
      return;
    }
  }
  add(acc);
}

Int ExactSum::value() const { return escalated_ ? wide_ : from_int128(lane_); }

}  // namespace energylab
