#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "energylab/exact.hpp"
#include "energylab/setfun.hpp"

namespace energylab {

enum class EnergyKind { E, T, Sigma, Restricted, Mixed, Weighted, Wiener };

std::string to_string(EnergyKind kind);

// An energy functional value. Integer exponents give an exact value; real exponents
// are summed in double precision in ascending index order.
struct EnergyValue {
  EnergyKind kind = EnergyKind::E;
  double k = 2;
  bool exact = true;
  Int value = 0;
  double approx = 0;

  // Decimal string for exact values, shortest round-trip form otherwise.
  std::string str() const;

  static EnergyValue of(EnergyKind kind, double k, Int v);
  static EnergyValue real(EnergyKind kind, double k, double v);
};

// E_k(A) = sum_x (A o A)(x)^k, k >= 1.
EnergyValue energy_k(const GSet& a, double k);
// E_k(A, B) = sum_x (A o A)(x) (B o B)(x)^{k-1}; k = 2 gives E(A, B).
EnergyValue energy_pair_k(const GSet& a, const GSet& b, double k);
// E_k(f_1, ..., f_k) = sum_x (f_1 o f_1)(x) ... (f_k o f_k)(x), k >= 2.
EnergyValue mixed_energy(std::span<const DenseFunc> fs);
EnergyValue mixed_energy(std::span<const GSet> sets);

// T_k(A_1, ..., A_k) = sum_x (A_1 * ... * A_k)(x)^2, k >= 2.
EnergyValue t_energy(std::span<const GSet> sets);
EnergyValue t_energy(const GSet& a, int k);
// T_k(f) = sum_x |(f * ... * f)(x)|^2 with k factors; exact for integer f.
EnergyValue t_energy(const DenseFunc& f, int k);

// E^P_k(A) = sum_{s in P} |A_s|^k.
EnergyValue restricted_energy(const GSet& a, const GSet& p, double k);
// sigma_P(A) = sum_{x in P} (A o A)(x).
EnergyValue sigma_p(const GSet& a, const GSet& p);
// E*_k(A) = sum_{s != 0} |A_s|^k.
EnergyValue starred_energy(const GSet& a, double k);

// Symmetric integer kernel q(x, y) on G x G, either q(x, y) = w(x - y) or a full matrix.
class WeightKernel {
 public:
  // Requires w(x) = w(-x).
  static WeightKernel difference(DenseFunc w);
  // Row-major N x N; requires q(x, y) = q(y, x).
  static WeightKernel matrix(Group group, std::vector<std::int64_t> values);
  // q = (A o A)^power as a difference kernel.
  static WeightKernel correlation_power(const GSet& a, unsigned power);

  const Group& group() const { return group_; }
  bool is_difference() const { return !difference_.empty(); }
  std::int64_t operator()(Element x, Element y) const;
  std::int64_t sup_norm() const { return sup_norm_; }

  // Nonnegative definiteness: min eigenvalue >= -1e-9 * ||q||. Difference kernels are
  // checked through the transform of w; matrices only when N <= 512.
  std::optional<bool> psd() const;

 private:
  WeightKernel(Group group, std::vector<std::int64_t> difference, std::vector<std::int64_t> matrix);

  Group group_;
  std::vector<std::int64_t> difference_;
  std::vector<std::int64_t> matrix_;
  std::int64_t sup_norm_ = 0;
};

// E_q(A, B) = sum_{x, y} q(x, y) A(x) B(y).
Int weighted_energy(const GSet& a, const GSet& b, const WeightKernel& q);
Int weighted_energy(const GSet& a, const WeightKernel& q);

// ||A||_W = N^{-1} sum_xi |A^(xi)|.
double wiener_norm(const GSet& a);

}  // namespace energylab
