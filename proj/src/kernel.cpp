#include "ducci/kernel.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "ducci/error.hpp"
#include "ducci/number_theory.hpp"

namespace ducci {

namespace {

void require_odd_n(std::size_t n, const char* what) {
  if (n == 0) throw InvalidArgument("tuple length must be at least 1");
  if (n % 2 == 0) {
    throw HypothesisError(std::string(what) + " is only established for odd n, got n = " +
                          std::to_string(n));
  }
}

// Outcome of visiting one tuple.
struct Visit {
  bool counted = false;
  bool mismatch = false;
};

struct Tally {
  std::uint64_t checked = 0;
  std::uint64_t counted = 0;
  std::uint64_t mismatch_count = 0;
  std::vector<Tuple> mismatches;

  void add(const Tuple& u, Visit v) {
    ++checked;
    if (v.counted) ++counted;
    if (v.mismatch) {
      ++mismatch_count;
      if (mismatches.size() < kMaxCounterexamples) mismatches.push_back(u);
    }
  }

  // Associative; chunk order is preserved by the caller.
  void merge(Tally&& other) {
    checked += other.checked;
    counted += other.counted;
    mismatch_count += other.mismatch_count;
    for (Tuple& t : other.mismatches) {
      if (mismatches.size() >= kMaxCounterexamples) break;
      mismatches.push_back(std::move(t));
    }
  }
};

unsigned worker_count(unsigned requested) {
  if (requested) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Visits every tuple of Z_m^n. The space is split into contiguous
// lexicographic chunks; workers claim chunks dynamically and the per-chunk
// tallies are merged in chunk order, so the result is independent of the
// number of workers.
template <class Visitor>
Tally exhaustive_scan(const TupleSpace& space, unsigned threads, Visitor visit) {
  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (space.size() + kChunk - 1) / kChunk;
  std::vector<Tally> partial(chunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto worker = [&] {
    try {
      for (std::uint64_t c = next++; c < chunks && !failed; c = next++) {
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(space.size(), lo + kChunk);
        Tally& tally = partial[c];
        for (std::uint64_t i = lo; i < hi; ++i) {
          const Tuple u = space.at(i);
          tally.add(u, visit(u));
        }
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(threads), chunks));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  Tally total;
  for (Tally& t : partial) total.merge(std::move(t));
  return total;
}

// Uniform random tuples from a fixed-seed generator. Reduction by % keeps the
// stream identical across standard libraries.
template <class Visitor>
Tally sampled_scan(const Modulus& modulus, std::size_t n, const ScanOptions& options,
                   Visitor visit) {
  std::mt19937_64 rng(options.seed);
  Tally tally;
  std::vector<Residue> entries(n);
  for (std::uint64_t k = 0; k < options.samples; ++k) {
    for (Residue& e : entries) e = static_cast<Residue>(rng() % modulus.value());
    const Tuple u(modulus, entries);
    tally.add(u, visit(u));
  }
  return tally;
}

bool fits_budget(const Modulus& modulus, std::size_t n, std::uint64_t budget) {
  try {
    return space_size(modulus, n) <= budget;
  } catch (const BudgetError&) {
    return false;
  }
}

KernelReport base_report(const Modulus& modulus, std::size_t n) {
  KernelReport r;
  r.modulus = modulus;
  r.n = n;
  r.predicted_L = modulus.two_adic();
  try {
    r.kernel_size_formula = kernel_size(modulus, n);
  } catch (const BudgetError&) {
  }
  return r;
}

void fill(KernelReport& report, Tally&& tally) {
  report.tuples_checked = tally.checked;
  report.mismatch_count = tally.mismatch_count;
  report.mismatches = std::move(tally.mismatches);
}

}  // namespace

bool KernelReport::ok() const noexcept {
  if (mismatch_count != 0) return false;
  if (measured_L && *measured_L != predicted_L) return false;
  if (kernel_size_measured && kernel_size_formula && *kernel_size_measured != *kernel_size_formula)
    return false;
  return true;
}

bool in_kernel_predicate(const Tuple& u) {
  require_odd_n(u.size(), "the kernel predicate");
  return u.coordinate_sum().residue_mod_2l == 0;
}

bool in_kernel_oracle(const Tuple& u, std::uint64_t step_budget) {
  return len_per(u, step_budget).len == 0;
}

std::uint64_t kernel_size(Modulus modulus, std::size_t n) {
  require_odd_n(n, "the kernel size formula");
  const std::uint64_t l = modulus.two_adic();
  if ((n - 1) * l >= 64) throw BudgetError("kernel size does not fit in 64 bits");
  const auto odd = nt::checked_pow(modulus.odd_part(), static_cast<unsigned>(n));
  std::uint64_t result = 0;
  if (!odd || __builtin_mul_overflow(std::uint64_t{1} << ((n - 1) * l), *odd, &result)) {
    throw BudgetError("kernel size does not fit in 64 bits");
  }
  return result;
}

KernelReport verify_length_theorem(Modulus modulus, std::size_t n, std::uint64_t step_budget) {
  require_odd_n(n, "the length theorem");
  KernelReport report = base_report(modulus, n);
  try {
    report.measured_L = basic_len_per(modulus, n, step_budget).L;
  } catch (const BudgetError&) {
    report.measured_L = OrbitAlgebra(modulus, n).pre_period(Tuple::basic(modulus, n));
  }
  report.tuples_checked = 1;
  if (*report.measured_L != report.predicted_L) {
    report.mismatch_count = 1;
    report.mismatches.push_back(Tuple::basic(modulus, n));
  }
  return report;
}

KernelReport verify_kernel_theorem(Modulus modulus, std::size_t n, const ScanOptions& options) {
  require_odd_n(n, "the kernel theorem");
  KernelReport report = base_report(modulus, n);
  auto visit = [&](const Tuple& u) {
    const bool oracle = in_kernel_oracle(u, options.step_budget);
    return Visit{oracle, oracle != in_kernel_predicate(u)};
  };
  if (fits_budget(modulus, n, options.budget)) {
    Tally tally = exhaustive_scan(TupleSpace(modulus, n), options.threads, visit);
    report.kernel_size_measured = tally.counted;
    fill(report, std::move(tally));
  } else {
    report.budget_exceeded = true;
    fill(report, sampled_scan(modulus, n, options, visit));
  }
  return report;
}

KernelReport verify_odd_sum_length(Modulus modulus, std::size_t n, const ScanOptions& options) {
  require_odd_n(n, "the odd-sum length lemma");
  if (!modulus.is_even()) {
    throw HypothesisError("the odd-sum length lemma needs m even, got m = " +
                          std::to_string(modulus.value()));
  }
  KernelReport report = base_report(modulus, n);
  const std::uint64_t l = modulus.two_adic();
  // Even-sum tuples are outside the lemma; they are skipped, not counted.
  auto visit = [&](const Tuple& u) {
    if (u.coordinate_sum().even) return Visit{false, false};
    return Visit{true, len_per(u, options.step_budget).len != l};
  };
  Tally tally = fits_budget(modulus, n, options.budget)
                    ? exhaustive_scan(TupleSpace(modulus, n), options.threads, visit)
                    : sampled_scan(modulus, n, options, visit);
  report.budget_exceeded = !fits_budget(modulus, n, options.budget);
  const std::uint64_t odd_sum = tally.counted;
  fill(report, std::move(tally));
  report.tuples_checked = odd_sum;
  return report;
}

}  // namespace ducci
