#pragma once

// The coefficient algebra of D^r.
//
// a_{r,s} is the coefficient of x_s in the first coordinate of D^r(u), so
// that coordinate i of D^r(u) is sum_s a_{r,s} x_{s+i-1} (indices cyclic).
// Row 0 is (1, 0, ..., 0) and a_{r,s} = a_{r-1,s} + a_{r-1,s-1}, with s-1
// wrapping to n at s = 1. Equivalently row r holds the coefficients of
// (1 + y)^r modulo y^n - 1.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ducci/modulus.hpp"
#include "ducci/tuple.hpp"

namespace ducci {

using BigInt = boost::multiprecision::cpp_int;

enum class CoeffMode { reduced, exact };

inline constexpr std::uint64_t kDefaultExactCap = 512;

struct CoeffRow {
  std::uint64_t r = 0;
  Modulus modulus{2};
  CoeffMode mode = CoeffMode::reduced;
  // a_{r,1..n} mod m, always populated. residues[s - 1] is a_{r,s}.
  std::vector<Residue> residues;
  // Unreduced a_{r,1..n}; only populated in exact mode.
  std::vector<BigInt> exact;

  std::size_t size() const noexcept { return residues.size(); }
  // a_{r,s} mod m with 1-based s.
  Residue at(std::size_t s) const { return residues.at(s - 1); }
};

// Row r built iteratively from row 0. Exact mode throws BudgetError when
// r > exact_cap.
CoeffRow coeff_row(Modulus modulus, std::size_t n, std::uint64_t r,
                   CoeffMode mode = CoeffMode::reduced, std::uint64_t exact_cap = kDefaultExactCap);

// Rows first..last inclusive, computed in a single pass.
std::vector<CoeffRow> coeff_rows(Modulus modulus, std::size_t n, std::uint64_t first,
                                 std::uint64_t last, CoeffMode mode = CoeffMode::reduced,
                                 std::uint64_t exact_cap = kDefaultExactCap);

// a_{r,s} = sum over k = s-1 (mod n), 0 <= k <= r of C(r, k), evaluated
// exactly. Independent of the recurrence.
BigInt binomial_fold_oracle(std::size_t n, std::uint64_t r, std::size_t s);

// sum_s a_{r,s} == 2^r: exactly in exact mode, mod m in reduced mode.
bool row_sum_check(const CoeffRow& row);

// Checks a_{r,s} = sum_i a_{j,i} a_{r-j,s-i+1} mod m for every s, with all
// three rows built by the recurrence. Requires j <= r.
bool convolution_check(Modulus modulus, std::size_t n, std::uint64_t r, std::uint64_t j);

// (a * b)_s = sum_i a_i b_{s-i+1}, cyclic, mod m. Rows are 0-based here.
std::vector<Residue> cyclic_convolve(std::span<const Residue> a, std::span<const Residue> b,
                                     Residue m);

// row^e under cyclic_convolve (row^0 is the unit row).
std::vector<Residue> row_power(std::span<const Residue> row, std::uint64_t e, Residue m);

// Row r by repeated squaring; handles r far beyond what iteration can reach.
std::vector<Residue> coeff_row_power(Modulus modulus, std::size_t n, std::uint64_t r);

// Applies the linear map with first-row coefficients `row`:
// result_i = sum_s row_s x_{s+i-1}. With row = coeff row r this is D^r(u).
Tuple apply_row(std::span<const Residue> row, const Tuple& u);
// Buffer form of apply_row; out must not alias x.
void apply_row(std::span<const Residue> row, std::span<const Residue> x, std::span<Residue> out,
               Residue m);

struct PeriodRowForm {
  // Multiple of P_m(n) exceeding L_m(n).
  std::uint64_t d = 0;
  // Least positive residue with z * m1 matching entries s > 1, in [0, 2^l).
  Residue z = 0;
  bool holds = false;
  // a_{d,1..n} mod m.
  std::vector<Residue> row;
};

// Row d for the smallest multiple d of P_m(n) with d > L_m(n), checked for
// the shape a_{d,1} = z m1 + 1, a_{d,s} = z m1 (s > 1) mod m with z odd.
// Requires n odd and m even; throws HypothesisError otherwise.
PeriodRowForm period_row_form(Modulus modulus, std::size_t n);
// Same check at a caller-chosen d (the caller vouches that d qualifies).
PeriodRowForm period_row_form_at(Modulus modulus, std::size_t n, std::uint64_t d);

// Every coefficient identity on one (m, n) cell:
//   - sum of row r is 2^r mod m for r <= 200, and exactly 2^r for r <= 64;
//   - rows r <= 40 match binomial_fold_oracle mod m;
//   - D^r(0, ..., 0, 1) = (a_{r,n}, ..., a_{r,1}) for r <= 200;
//   - 200 random (r, j) convolution checks with r <= 200;
//   - for n odd and m even, period_row_form at d and 2d.
struct CoefficientReport {
  Modulus modulus{2};
  std::size_t n = 1;
  std::uint64_t sum_failures = 0;
  std::uint64_t exact_sum_failures = 0;
  std::uint64_t oracle_failures = 0;
  std::uint64_t basic_link_failures = 0;
  std::uint64_t convolution_failures = 0;
  std::uint64_t period_row_failures = 0;
  std::uint64_t checks = 0;
  // Set when the period row form applied; results at d and 2d.
  std::optional<PeriodRowForm> period_row;
  std::optional<PeriodRowForm> period_row_double;

  std::uint64_t mismatch_count() const noexcept {
    return sum_failures + exact_sum_failures + oracle_failures + basic_link_failures +
           convolution_failures + period_row_failures;
  }
  bool ok() const noexcept { return mismatch_count() == 0; }
};

inline constexpr std::uint64_t kSumCheckRows = 200;
inline constexpr std::uint64_t kExactSumCheckRows = 64;
inline constexpr std::uint64_t kOracleCheckRows = 40;
inline constexpr std::uint64_t kBasicLinkRows = 200;
inline constexpr std::uint64_t kConvolutionSamples = 200;

CoefficientReport verify_coefficient_identities(Modulus modulus, std::size_t n,
                                                std::uint64_t seed = 0);

}  // namespace ducci
