#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ducci/tuple.hpp"

namespace ducci {

inline constexpr std::uint64_t kDefaultListCap = 10'000;

// All y with D(y) = target.
struct PredecessorSet {
  Tuple target;
  // Ascending lexicographic order. Empty when `listed` is false.
  std::vector<Tuple> solutions;
  // Exact number of predecessors, listed or not.
  std::uint64_t count = 0;
  // False when count exceeded the listing cap (n even only).
  bool listed = true;
};

// Solves D(y) = x directly. Setting y_1 = t and y_{i+1} = x_i - y_i leaves one
// closing condition y_n + y_1 = x_n: for n odd it reads 2t = c (mod m), for n
// even it does not involve t and admits either no t or all m of them.
PredecessorSet predecessors(const Tuple& x, std::uint64_t list_cap = kDefaultListCap);

// For n odd and m even this is the coordinate-sum parity test; otherwise it
// falls back to the solver.
bool has_predecessor(const Tuple& x);

// m^n / 2, the number of tuples with even coordinate sum. Throws
// HypothesisError for m odd and BudgetError if m^n overflows.
std::uint64_t even_sum_count(Modulus modulus, std::size_t n);

// Inverse image of x by scanning all of Z_m^n. Throws BudgetError when
// m^n > budget.
std::vector<Tuple> preimages_by_scan(const Tuple& x, std::uint64_t budget);

// Exhaustive check of the solver and the predecessor theorems on Z_m^n.
struct PredecessorReport {
  Modulus modulus{2};
  std::size_t n = 1;
  std::uint64_t tuples_checked = 0;
  // Solver output differs from the exhaustive inverse image.
  std::uint64_t solver_mismatches = 0;
  // n odd, m even: a pair of predecessors not differing by m/2 everywhere.
  std::uint64_t pairing_violations = 0;
  // n odd, m even: count not in {0, 2}, or count == 2 disagreeing with the
  // parity of the coordinate sum. n odd, m odd: count != 1.
  std::uint64_t count_violations = 0;
  // sum over x of count(x); must equal m^n.
  std::uint64_t total_predecessors = 0;
  // m even only.
  std::uint64_t even_sum_formula = 0;
  std::uint64_t even_sum_measured = 0;
  std::vector<Tuple> counterexamples;  // capped
  bool budget_exceeded = false;

  std::uint64_t mismatch_count() const noexcept;
  bool ok() const noexcept { return !budget_exceeded && mismatch_count() == 0; }
};

PredecessorReport verify_predecessor_theorems(Modulus modulus, std::size_t n,
                                              std::uint64_t budget);

}  // namespace ducci
