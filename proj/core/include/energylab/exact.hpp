#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace energylab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Int ipow(const Int& base, unsigned exponent);
Rational rpow(const Rational& base, unsigned exponent);

inline std::string to_decimal(const Int& v) { return v.str(); }

double to_double(const Int& v);

// Sum of integer terms. Runs in a 128-bit lane and moves to arbitrary precision
// the first time an addition or a power would overflow; it never wraps.
class ExactSum {
 public:
  void add(__int128 term);
  void add(const Int& term);
  // Adds base^exponent.
  void add_power(std::int64_t base, unsigned exponent);
  // Adds a*b.
  void add_product(std::int64_t a, std::int64_t b);

  Int value() const;
  bool escalated() const { return escalated_; }

 private:
  __int128 lane_ = 0;
  Int wide_ = 0;
  bool escalated_ = false;
};

// Converts a 128-bit value to Int.
Int from_int128(__int128 v);

}  // namespace energylab
