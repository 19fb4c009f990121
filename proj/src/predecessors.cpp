#include "ducci/predecessors.hpp"

#include <algorithm>

#include "ducci/error.hpp"
#include "ducci/kernel.hpp"
#include "ducci/number_theory.hpp"

namespace ducci {

namespace {

// Expands y_i = sign_i * t + offset_i with sign_i = (-1)^(i-1).
Tuple expand(const Tuple& x, const std::vector<Residue>& offset, Residue t) {
  const Residue m = x.modulus().value();
  std::vector<Residue> y(x.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const Residue signed_t = (i % 2 == 0) ? t : (t == 0 ? 0 : m - t);
    const Residue s = signed_t + offset[i];
    y[i] = s >= m ? s - m : s;
  }
  return make_unchecked(x.modulus(), std::move(y));
}

}  // namespace

PredecessorSet predecessors(const Tuple& x, std::uint64_t list_cap) {
  const Modulus& mod = x.modulus();
  const Residue m = mod.value();
  const std::size_t n = x.size();

  std::vector<Residue> offset(n, 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    offset[i + 1] = mod.reduce(std::int64_t{x[i]} - offset[i]);
  }

  PredecessorSet out{x, {}, 0, true};
  if (n % 2 == 1) {
    // y_n = t + offset_n, so y_n + y_1 = x_n becomes 2t = c.
    const Residue c = mod.reduce(std::int64_t{x[n - 1]} - offset[n - 1]);
    if (!mod.is_even()) {
      const Residue half = static_cast<Residue>((std::uint64_t{m} + 1) / 2);
      out.solutions.push_back(expand(x, offset, static_cast<Residue>(nt::mul_mod(c, half, m))));
    } else if (c % 2 == 0) {
      out.solutions.push_back(expand(x, offset, c / 2));
      out.solutions.push_back(expand(x, offset, c / 2 + m / 2));
    }
    std::sort(out.solutions.begin(), out.solutions.end());
    out.count = out.solutions.size();
    return out;
  }

  // n even: y_n = -t + offset_n, the closing condition is offset_n = x_n.
  if (mod.reduce(std::int64_t{offset[n - 1]} - x[n - 1]) != 0) return out;
  out.count = m;
  if (m > list_cap) {
    out.listed = false;
    return out;
  }
  out.solutions.reserve(m);
  for (Residue t = 0; t < m; ++t) out.solutions.push_back(expand(x, offset, t));
  std::sort(out.solutions.begin(), out.solutions.end());
  return out;
}

bool has_predecessor(const Tuple& x) {
  if (x.size() % 2 == 1 && x.modulus().is_even()) return x.coordinate_sum().even;
  return predecessors(x).count > 0;
}

std::uint64_t even_sum_count(Modulus modulus, std::size_t n) {
  if (!modulus.is_even()) {
    throw HypothesisError("even_sum_count needs m even, got m = " +
                          std::to_string(modulus.value()));
  }
  if (n == 0) throw InvalidArgument("tuple length must be at least 1");
  // (m/2)^n * 2^(n-1) avoids overflowing on m^n itself.
  const auto half_pow = nt::checked_pow(modulus.value() / 2, static_cast<unsigned>(n));
  const auto two_pow = nt::checked_pow(2, static_cast<unsigned>(n - 1));
  std::uint64_t result = 0;
  if (!half_pow || !two_pow || __builtin_mul_overflow(*half_pow, *two_pow, &result)) {
    throw BudgetError("m^n / 2 does not fit in 64 bits");
  }
  return result;
}

std::vector<Tuple> preimages_by_scan(const Tuple& x, std::uint64_t budget) {
  const TupleSpace space(x.modulus(), x.size());
  if (space.size() > budget) {
    throw BudgetError("exhaustive preimage scan of " + std::to_string(space.size()) +
                      " tuples exceeds the budget of " + std::to_string(budget));
  }
  std::vector<Tuple> out;
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    Tuple y = space.at(i);
    if (ducci_step(y) == x) out.push_back(std::move(y));
  }
  return out;
}

std::uint64_t PredecessorReport::mismatch_count() const noexcept {
  std::uint64_t total = solver_mismatches + pairing_violations + count_violations;
  if (even_sum_formula != even_sum_measured) ++total;
  if (tuples_checked > 0 && total_predecessors != tuples_checked) ++total;
  return total;
}

PredecessorReport verify_predecessor_theorems(Modulus modulus, std::size_t n,
                                              std::uint64_t budget) {
  PredecessorReport report;
  report.modulus = modulus;
  report.n = n;

  std::uint64_t size = 0;
  try {
    size = space_size(modulus, n);
  } catch (const BudgetError&) {
    report.budget_exceeded = true;
    return report;
  }
  if (size > budget || size > (std::uint64_t{1} << 32)) {
    report.budget_exceeded = true;
    return report;
  }
  const TupleSpace space(modulus, n);
  const Residue m = modulus.value();

  // Exhaustive inverse images as a CSR table: preimages of x are
  // sources[start[x] .. start[x + 1]), in ascending index order.
  std::vector<std::uint32_t> image(size);
  successor_indices(space, 0, image);
  std::vector<std::uint32_t> start(size + 1, 0);
  for (std::uint32_t y : image) ++start[y + 1];
  for (std::uint64_t i = 0; i < size; ++i) start[i + 1] += start[i];
  std::vector<std::uint32_t> sources(size);
  {
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (std::uint64_t y = 0; y < size; ++y) sources[fill[image[y]]++] = static_cast<std::uint32_t>(y);
  }

  if (modulus.is_even()) report.even_sum_formula = even_sum_count(modulus, n);

  auto record = [&](const Tuple& x) {
    if (report.counterexamples.size() < kMaxCounterexamples) report.counterexamples.push_back(x);
  };

  const bool odd_n = n % 2 == 1;
  const Residue half = m / 2;
  for (std::uint64_t xi = 0; xi < size; ++xi) {
    const Tuple x = space.at(xi);
    const PredecessorSet solved = predecessors(x, kDefaultListCap);
    const std::uint64_t expected = start[xi + 1] - start[xi];
    ++report.tuples_checked;
    report.total_predecessors += solved.count;

    bool bad = solved.count != expected;
    if (!bad && solved.listed) {
      for (std::uint64_t k = 0; k < expected; ++k) {
        if (space.encode(solved.solutions[k]) != sources[start[xi] + k]) {
          bad = true;
          break;
        }
      }
    }
    for (const Tuple& y : solved.solutions) bad = bad || !(ducci_step(y) == x);
    if (bad) {
      ++report.solver_mismatches;
      record(x);
    }

    const bool even_sum = x.coordinate_sum().even;
    if (modulus.is_even() && even_sum) ++report.even_sum_measured;
    if (!odd_n) continue;

    if (modulus.is_even()) {
      const bool count_ok = (expected == 2 && even_sum) || (expected == 0 && !even_sum);
      if (!count_ok) {
        ++report.count_violations;
        record(x);
      }
      if (expected == 2) {
        const Tuple a = space.at(sources[start[xi]]);
        const Tuple b = space.at(sources[start[xi] + 1]);
        bool paired = true;
        for (std::size_t i = 0; i < n; ++i) {
          const Residue diff = b[i] >= a[i] ? b[i] - a[i] : b[i] + m - a[i];
          paired = paired && diff == half;
        }
        if (!paired) {
          ++report.pairing_violations;
          record(x);
        }
      }
    } else if (expected != 1) {
      ++report.count_violations;
      record(x);
    }
  }
  return report;
}

}  // namespace ducci
