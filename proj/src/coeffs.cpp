#include "ducci/coeffs.hpp"

#include <algorithm>
#include <random>

#include "ducci/dynamics.hpp"
#include "ducci/error.hpp"
#include "ducci/number_theory.hpp"
#include "ducci/simd.hpp"

namespace ducci {

namespace {

void require_length(std::size_t n) {
  if (n == 0) throw InvalidArgument("tuple length must be at least 1");
}

std::vector<Residue> unit_row(std::size_t n) {
  std::vector<Residue> row(n, 0);
  row[0] = 1;
  return row;
}

// Backs the periodic-row check; d is bounded by P_m(n) in practice.
constexpr std::uint64_t kIterativeRowLimit = std::uint64_t{1} << 24;

}  // namespace

std::vector<CoeffRow> coeff_rows(Modulus modulus, std::size_t n, std::uint64_t first,
                                 std::uint64_t last, CoeffMode mode, std::uint64_t exact_cap) {
  require_length(n);
  if (first > last) throw InvalidArgument("empty coefficient row range");
  if (mode == CoeffMode::exact && last > exact_cap) {
    throw BudgetError("exact coefficient rows are capped at r = " + std::to_string(exact_cap) +
                      ", requested r = " + std::to_string(last));
  }
  const Residue m = modulus.value();
  std::vector<CoeffRow> out;
  out.reserve(last - first + 1);

  std::vector<Residue> cur = unit_row(n);
  std::vector<Residue> next(n);
  std::vector<BigInt> big, big_next;
  if (mode == CoeffMode::exact) {
    big.assign(n, 0);
    big[0] = 1;
    big_next.resize(n);
  }

  for (std::uint64_t r = 0;; ++r) {
    if (r >= first) {
      CoeffRow row{r, modulus, mode, cur, {}};
      if (mode == CoeffMode::exact) row.exact = big;
      out.push_back(std::move(row));
    }
    if (r == last) break;
    simd::cyclic_add_prev(cur, next, m);
    cur.swap(next);
    if (mode == CoeffMode::exact) {
      big_next[0] = big[0] + big[n - 1];
      for (std::size_t s = 1; s < n; ++s) big_next[s] = big[s] + big[s - 1];
      big.swap(big_next);
    }
  }
  return out;
}

CoeffRow coeff_row(Modulus modulus, std::size_t n, std::uint64_t r, CoeffMode mode,
                   std::uint64_t exact_cap) {
  return std::move(coeff_rows(modulus, n, r, r, mode, exact_cap).front());
}

BigInt binomial_fold_oracle(std::size_t n, std::uint64_t r, std::size_t s) {
  require_length(n);
  if (s < 1 || s > n) throw InvalidArgument("coefficient index s must lie in [1, n]");
  BigInt sum = 0;
  BigInt binom = 1;  // C(r, k)
  for (std::uint64_t k = 0; k <= r; ++k) {
    if (k % n == s - 1) sum += binom;
    binom *= (r - k);
    binom /= (k + 1);
  }
  return sum;
}

bool row_sum_check(const CoeffRow& row) {
  if (row.mode == CoeffMode::exact) {
    BigInt sum = 0;
    for (const BigInt& a : row.exact) sum += a;
    return sum == (BigInt(1) << row.r);
  }
  const Residue m = row.modulus.value();
  std::uint64_t sum = 0;
  for (Residue a : row.residues) sum = (sum + a) % m;
  return sum == nt::pow_mod(2, row.r, m);
}

std::vector<Residue> cyclic_convolve(std::span<const Residue> a, std::span<const Residue> b,
                                     Residue m) {
  const std::size_t n = a.size();
  if (b.size() != n) throw DimensionError("cyclic_convolve: rows differ in length");
  std::vector<std::uint64_t> acc(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t t = i + k < n ? i + k : i + k - n;
      acc[t] = (acc[t] + std::uint64_t{a[i]} * b[k]) % m;
    }
  }
  return {acc.begin(), acc.end()};
}

std::vector<Residue> row_power(std::span<const Residue> row, std::uint64_t e, Residue m) {
  std::vector<Residue> result = unit_row(row.size());
  result[0] %= m;
  std::vector<Residue> base(row.begin(), row.end());
  while (e) {
    if (e & 1) result = cyclic_convolve(result, base, m);
    e >>= 1;
    if (e) base = cyclic_convolve(base, base, m);
  }
  return result;
}

std::vector<Residue> coeff_row_power(Modulus modulus, std::size_t n, std::uint64_t r) {
  require_length(n);
  const Residue m = modulus.value();
  std::vector<Residue> delta(n, 0);
  if (n == 1) {
    delta[0] = 2 % m;
  } else {
    delta[0] = 1;
    delta[1] = 1;
  }
  return row_power(delta, r, m);
}

void apply_row(std::span<const Residue> row, std::span<const Residue> x, std::span<Residue> out,
               Residue m) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t t = s + i < n ? s + i : s + i - n;
      acc = (acc + std::uint64_t{row[s]} * x[t]) % m;
    }
    out[i] = static_cast<Residue>(acc);
  }
}

Tuple apply_row(std::span<const Residue> row, const Tuple& u) {
  if (row.size() != u.size()) throw DimensionError("apply_row: row and tuple differ in length");
  std::vector<Residue> out(u.size());
  apply_row(row, u.entries(), out, u.modulus().value());
  return make_unchecked(u.modulus(), std::move(out));
}

bool convolution_check(Modulus modulus, std::size_t n, std::uint64_t r, std::uint64_t j) {
  if (j > r) throw InvalidArgument("convolution_check requires j <= r");
  const CoeffRow full = coeff_row(modulus, n, r);
  const CoeffRow left = coeff_row(modulus, n, j);
  const CoeffRow right = coeff_row(modulus, n, r - j);
  return cyclic_convolve(left.residues, right.residues, modulus.value()) == full.residues;
}

namespace {

void require_period_row_hypothesis(const Modulus& modulus, std::size_t n) {
  if (n % 2 == 0) {
    throw HypothesisError("periodic row form needs n odd, got n = " + std::to_string(n));
  }
  if (!modulus.is_even()) {
    throw HypothesisError("periodic row form needs m even, got m = " +
                          std::to_string(modulus.value()));
  }
}

}  // namespace

PeriodRowForm period_row_form_at(Modulus modulus, std::size_t n, std::uint64_t d) {
  require_length(n);
  require_period_row_hypothesis(modulus, n);
  if (d == 0) throw InvalidArgument("d must be positive");

  const Residue m = modulus.value();
  PeriodRowForm out;
  out.d = d;
  out.row = d <= kIterativeRowLimit ? coeff_row(modulus, n, d).residues
                                    : coeff_row_power(modulus, n, d);

  // The shared residue class z * m1 of entries s > 1 (or a_{d,1} - 1 when n = 1).
  const Residue cls = n > 1 ? out.row[1] : (out.row[0] + m - 1) % m;
  bool ok = true;
  for (std::size_t s = 1; s < n; ++s) ok = ok && out.row[s] == cls;
  ok = ok && out.row[0] == (cls + 1) % m;
  ok = ok && cls % modulus.odd_part() == 0;
  out.z = cls / modulus.odd_part();
  out.holds = ok && (out.z % 2 == 1);
  return out;
}

PeriodRowForm period_row_form(Modulus modulus, std::size_t n) {
  require_length(n);
  require_period_row_hypothesis(modulus, n);
  const BasicInvariants basic = basic_len_per(modulus, n);
  const std::uint64_t d = basic.P * (basic.L / basic.P + 1);
  return period_row_form_at(modulus, n, d);
}

CoefficientReport verify_coefficient_identities(Modulus modulus, std::size_t n,
                                                std::uint64_t seed) {
  require_length(n);
  const Residue m = modulus.value();
  CoefficientReport report;
  report.modulus = modulus;
  report.n = n;

  const auto rows = coeff_rows(modulus, n, 0, kSumCheckRows);
  for (const CoeffRow& row : rows) {
    ++report.checks;
    if (!row_sum_check(row)) ++report.sum_failures;
  }

  for (const CoeffRow& row : coeff_rows(modulus, n, 0, kExactSumCheckRows, CoeffMode::exact)) {
    ++report.checks;
    bool ok = row_sum_check(row);
    for (std::size_t s = 0; s < n; ++s) {
      ok = ok && row.exact[s] % m == row.residues[s];
    }
    if (!ok) ++report.exact_sum_failures;
  }

  for (std::uint64_t r = 0; r <= kOracleCheckRows; ++r) {
    ++report.checks;
    bool ok = true;
    for (std::size_t s = 1; s <= n; ++s) {
      const BigInt expected = binomial_fold_oracle(n, r, s) % m;
      ok = ok && expected == rows[r].residues[s - 1];
    }
    if (!ok) ++report.oracle_failures;
  }

  Tuple basic = Tuple::basic(modulus, n);
  for (std::uint64_t r = 0; r <= kBasicLinkRows; ++r) {
    ++report.checks;
    const auto& a = rows[r].residues;
    if (!std::equal(a.rbegin(), a.rend(), basic.entries().begin())) ++report.basic_link_failures;
    basic = ducci_step(basic);
  }

  std::mt19937_64 rng(seed);
  for (std::uint64_t k = 0; k < kConvolutionSamples; ++k) {
    ++report.checks;
    const std::uint64_t r = rng() % (kSumCheckRows + 1);
    const std::uint64_t j = rng() % (r + 1);
    const auto product = cyclic_convolve(rows[j].residues, rows[r - j].residues, m);
    if (product != rows[r].residues) ++report.convolution_failures;
  }

  if (n % 2 == 1 && modulus.is_even()) {
    report.period_row = period_row_form(modulus, n);
    report.period_row_double = period_row_form_at(modulus, n, 2 * report.period_row->d);
    report.checks += 2;
    if (!report.period_row->holds) ++report.period_row_failures;
    if (!report.period_row_double->holds) ++report.period_row_failures;
  }
  return report;
}

}  // namespace ducci
