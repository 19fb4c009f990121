#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ducci/number_theory.hpp"
#include "ducci/tuple.hpp"

namespace ducci {

// Pre-period and period of an orbit: len is the least alpha such that
// D^(alpha+beta)(u) = D^alpha(u) for some beta >= 1, and per the least such
// beta.
struct CycleInfo {
  std::uint64_t len = 0;
  std::uint64_t per = 1;

  friend bool operator==(const CycleInfo&, const CycleInfo&) = default;
};

// L_m(n) and P_m(n): len and per of the basic tuple (0, ..., 0, 1).
struct BasicInvariants {
  std::uint64_t L = 0;
  std::uint64_t P = 1;
  std::size_t n = 1;
  Modulus modulus{2};
};

struct OrbitPrefix {
  std::vector<Tuple> tuples;
  // True when no tuple in the prefix repeats an earlier one, i.e. the orbit
  // has not closed yet.
  bool truncated = false;
};

inline constexpr std::uint64_t kDefaultStepBudget = 100'000'000;
inline constexpr std::uint64_t kDefaultOrbitCap = 1'000'000;

// Brent's cycle detection: O(n) memory, O(len + per) Ducci steps.
// Throws BudgetError once more than step_budget steps have been taken.
CycleInfo len_per(const Tuple& u, std::uint64_t step_budget = kDefaultStepBudget);

// len_per on (0, ..., 0, 1) in Z_m^n.
BasicInvariants basic_len_per(Modulus modulus, std::size_t n,
                              std::uint64_t step_budget = kDefaultStepBudget);

// u, D(u), ..., D^(k-1)(u). Throws BudgetError if k > cap and
// InvalidArgument if k == 0.
OrbitPrefix orbit_prefix(const Tuple& u, std::uint64_t k, std::uint64_t cap = kDefaultOrbitCap);

// Orbit structure through the ring R = Z_m[y]/(y^n - 1), where D acts as
// multiplication by 1 + y. R splits into local rings; on each, 1 + y is
// either nilpotent or a unit whose order divides (p^d - 1) p^(k n), with
// p^k || m and d the multiplicative order of p modulo the p-free part of n.
// The lcm E of those bounds is a multiple of every period and exceeds every
// pre-period, so u lies on a cycle iff D^E(u) = u. Periods are then found by
// stripping prime factors from E.
//
// This route never walks the orbit, so it handles periods far beyond the
// reach of len_per. Construction precomputes coefficient rows for (m, n);
// reuse one instance for many tuples of the same shape.
class OrbitAlgebra {
 public:
  // Throws BudgetError when some p^d - 1 does not fit in 64 bits.
  OrbitAlgebra(Modulus modulus, std::size_t n);

  const Modulus& modulus() const noexcept { return modulus_; }
  std::size_t dimension() const noexcept { return n_; }
  // Factored form of E.
  const nt::Factorization& exponent() const noexcept { return exponent_; }

  bool on_cycle(const Tuple& u) const;
  std::uint64_t pre_period(const Tuple& u) const;
  // Throws BudgetError if the period does not fit in 64 bits.
  CycleInfo len_per(const Tuple& u) const;

 private:
  struct PrimeChain {
    std::uint64_t prime;
    // rows[f] = coefficient row of D^(B * prime^f), B = E with this prime removed.
    std::vector<std::vector<Residue>> rows;
  };

  void check_shape(const Tuple& u) const;

  Modulus modulus_;
  std::size_t n_;
  nt::Factorization exponent_;
  std::vector<Residue> absorbing_row_;  // D^E
  std::vector<PrimeChain> chains_;
};

// Convenience wrappers that build an OrbitAlgebra per call.
CycleInfo len_per_by_order(const Tuple& u);
BasicInvariants basic_len_per_by_order(Modulus modulus, std::size_t n);

}  // namespace ducci
