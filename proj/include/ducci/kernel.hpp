#pragma once

// The cycle subgroup K(Z_m^n): every tuple lying on some Ducci cycle.
//
// For n odd and m = 2^l m1 it is exactly the set of tuples whose coordinate
// sum is divisible by 2^l, and it has 2^((n-1) l) m1^n elements. This module
// provides the sum predicate, the orbit-based oracle, and exhaustive or
// sampled harnesses that compare them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ducci/dynamics.hpp"
#include "ducci/tuple.hpp"

namespace ducci {

inline constexpr std::uint64_t kDefaultExhaustiveBudget = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kDefaultSampleCount = 10'000;
inline constexpr std::size_t kMaxCounterexamples = 16;

struct ScanOptions {
  // Exhaustive scans run only when m^n <= budget; otherwise tuples are sampled.
  std::uint64_t budget = kDefaultExhaustiveBudget;
  std::uint64_t seed = 0;
  std::uint64_t samples = kDefaultSampleCount;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  // Per-tuple cycle detection budget.
  std::uint64_t step_budget = kDefaultStepBudget;
};

struct KernelReport {
  Modulus modulus{2};
  std::size_t n = 1;
  std::uint64_t predicted_L = 0;
  std::optional<std::uint64_t> measured_L;
  std::optional<std::uint64_t> kernel_size_formula;
  // Absent when the scan fell back to sampling.
  std::optional<std::uint64_t> kernel_size_measured;
  std::uint64_t tuples_checked = 0;
  // Total number of failing tuples; `mismatches` keeps the first few in
  // lexicographic (or sampling) order.
  std::uint64_t mismatch_count = 0;
  std::vector<Tuple> mismatches;
  bool budget_exceeded = false;

  bool ok() const noexcept;
};

// Coordinate sum divisible by 2^l (always true for m odd). Throws
// HypothesisError for n even.
bool in_kernel_predicate(const Tuple& u);
// Len(u) == 0, by cycle detection. Valid for every n and m.
bool in_kernel_oracle(const Tuple& u, std::uint64_t step_budget = kDefaultStepBudget);
// 2^((n-1) l) m1^n. Throws HypothesisError for n even, BudgetError on overflow.
std::uint64_t kernel_size(Modulus modulus, std::size_t n);

// Measures L_m(n) from the basic orbit and compares with l. Cycle detection is
// tried first; if it runs out of steps the pre-period comes from OrbitAlgebra.
KernelReport verify_length_theorem(Modulus modulus, std::size_t n,
                                   std::uint64_t step_budget = kDefaultStepBudget);

// Predicate against oracle on every tuple (or on `samples` random tuples when
// m^n exceeds the budget), and the oracle count against kernel_size.
KernelReport verify_kernel_theorem(Modulus modulus, std::size_t n, const ScanOptions& options = {});

// Every tuple with odd coordinate sum has Len exactly l. Needs n odd, m even.
KernelReport verify_odd_sum_length(Modulus modulus, std::size_t n,
                                   const ScanOptions& options = {});

}  // namespace ducci
