#include "ducci/dynamics.hpp"

#include <algorithm>
#include <unordered_set>

#include "ducci/coeffs.hpp"
#include "ducci/error.hpp"
#include "ducci/simd.hpp"

namespace ducci {

namespace {

// Walks one orbit in place on a pair of buffers, charging every step
// against the budget.
class Walker {
 public:
  Walker(const Tuple& start, std::uint64_t& steps, std::uint64_t budget)
      : cur_(start.entries().begin(), start.entries().end()),
        tmp_(start.size()),
        m_(start.modulus().value()),
        steps_(steps),
        budget_(budget) {}

  void advance() {
    if (++steps_ > budget_) {
      throw BudgetError("cycle detection exceeded the budget of " + std::to_string(budget_) +
                        " Ducci steps");
    }
    simd::cyclic_add_next(cur_, tmp_, m_);
    cur_.swap(tmp_);
  }

  void assign(const Walker& other) { cur_ = other.cur_; }
  friend bool operator==(const Walker& a, const Walker& b) { return a.cur_ == b.cur_; }

 private:
  std::vector<Residue> cur_;
  std::vector<Residue> tmp_;
  Residue m_;
  std::uint64_t& steps_;
  std::uint64_t budget_;
};

}  // namespace

CycleInfo len_per(const Tuple& u, std::uint64_t step_budget) {
  std::uint64_t steps = 0;
  Walker tortoise(u, steps, step_budget);
  Walker hare(u, steps, step_budget);
  hare.advance();

  // Period: the hare races ahead in windows of doubling size until it meets
  // the tortoise parked at the start of the window.
  std::uint64_t power = 1;
  std::uint64_t per = 1;
  while (!(tortoise == hare)) {
    if (power == per) {
      tortoise.assign(hare);
      power *= 2;
      per = 0;
    }
    hare.advance();
    ++per;
  }

  // Pre-period: two walkers per steps apart first meet on entering the cycle.
  Walker lead(u, steps, step_budget);
  Walker lag(u, steps, step_budget);
  for (std::uint64_t i = 0; i < per; ++i) lead.advance();
  std::uint64_t len = 0;
  while (!(lead == lag)) {
    lead.advance();
    lag.advance();
    ++len;
  }
  return {len, per};
}

BasicInvariants basic_len_per(Modulus modulus, std::size_t n, std::uint64_t step_budget) {
  const CycleInfo info = len_per(Tuple::basic(modulus, n), step_budget);
  return {info.len, info.per, n, modulus};
}

OrbitPrefix orbit_prefix(const Tuple& u, std::uint64_t k, std::uint64_t cap) {
  if (k == 0) throw InvalidArgument("orbit prefix length must be at least 1");
  if (k > cap) {
    throw BudgetError("orbit prefix of " + std::to_string(k) + " tuples exceeds the cap of " +
                      std::to_string(cap));
  }
  OrbitPrefix out;
  out.tuples.reserve(k);
  std::unordered_set<Tuple, TupleHash> seen;
  bool closed = false;
  Tuple cur = u;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (!closed && !seen.insert(cur).second) closed = true;
    out.tuples.push_back(cur);
    if (i + 1 < k) cur = ducci_step(cur);
  }
  out.truncated = !closed;
  return out;
}

// ---------------------------------------------------------------------------

OrbitAlgebra::OrbitAlgebra(Modulus modulus, std::size_t n) : modulus_(modulus), n_(n) {
  if (n == 0) throw InvalidArgument("tuple length must be at least 1");
  const Residue m = modulus.value();

  for (const auto& [p, k] : nt::factor(m)) {
    std::uint64_t coprime_n = n;
    while (coprime_n % p == 0) coprime_n /= p;
    const auto d = nt::multiplicative_order(p % coprime_n, coprime_n);
    if (d > 64) {
      throw BudgetError("period bound for m = " + std::to_string(m) + ", n = " +
                        std::to_string(n) + " needs p^d with d = " + std::to_string(d));
    }
    const auto field_size = nt::checked_pow(p, static_cast<unsigned>(d));
    if (!field_size) {
      throw BudgetError("period bound for m = " + std::to_string(m) + ", n = " +
                        std::to_string(n) + " overflows 64 bits");
    }
    for (const auto& [q, e] : nt::factor(*field_size - 1)) {
      exponent_[q] = std::max(exponent_[q], e);
    }
    const unsigned p_part = static_cast<unsigned>(k * n);
    exponent_[p] = std::max(exponent_[p], p_part);
  }

  std::vector<Residue> delta(n, 0);
  if (n == 1) {
    delta[0] = 2 % m;
  } else {
    delta[0] = 1;
    delta[1] = 1;
  }

  for (const auto& [q, e] : exponent_) {
    std::vector<Residue> row = delta;
    for (const auto& [other, f] : exponent_) {
      if (other == q) continue;
      for (unsigned i = 0; i < f; ++i) row = row_power(row, other, m);
    }
    PrimeChain chain{q, {}};
    chain.rows.reserve(e + 1);
    chain.rows.push_back(std::move(row));
    for (unsigned i = 0; i < e; ++i) chain.rows.push_back(row_power(chain.rows.back(), q, m));
    chains_.push_back(std::move(chain));
  }
  absorbing_row_ = chains_.front().rows.back();
}

void OrbitAlgebra::check_shape(const Tuple& u) const {
  if (!(u.modulus() == modulus_) || u.size() != n_) {
    throw DimensionError("tuple " + to_string(u) + " does not belong to Z_" +
                         std::to_string(modulus_.value()) + "^" + std::to_string(n_));
  }
}

bool OrbitAlgebra::on_cycle(const Tuple& u) const {
  check_shape(u);
  return apply_row(absorbing_row_, u) == u;
}

std::uint64_t OrbitAlgebra::pre_period(const Tuple& u) const {
  check_shape(u);
  std::vector<Residue> w(u.entries().begin(), u.entries().end());
  std::vector<Residue> image(n_), next(n_);
  const Residue m = modulus_.value();
  for (std::uint64_t alpha = 0;; ++alpha) {
    apply_row(absorbing_row_, w, image, m);
    if (image == w) return alpha;
    simd::cyclic_add_next(w, next, m);
    w.swap(next);
  }
}

CycleInfo OrbitAlgebra::len_per(const Tuple& u) const {
  const std::uint64_t len = pre_period(u);
  const Tuple w = iterate(u, len);
  std::vector<Residue> image(n_);
  const Residue m = modulus_.value();
  std::uint64_t per = 1;
  for (const PrimeChain& chain : chains_) {
    std::size_t f = 0;
    for (; f < chain.rows.size(); ++f) {
      apply_row(chain.rows[f], w.entries(), image, m);
      if (std::equal(image.begin(), image.end(), w.entries().begin())) break;
    }
    for (std::size_t i = 0; i < f; ++i) {
      if (__builtin_mul_overflow(per, chain.prime, &per)) {
        throw BudgetError("period of " + to_string(u) + " does not fit in 64 bits");
      }
    }
  }
  return {len, per};
}

CycleInfo len_per_by_order(const Tuple& u) {
  return OrbitAlgebra(u.modulus(), u.size()).len_per(u);
}

BasicInvariants basic_len_per_by_order(Modulus modulus, std::size_t n) {
  const CycleInfo info = OrbitAlgebra(modulus, n).len_per(Tuple::basic(modulus, n));
  return {info.len, info.per, n, modulus};
}

}  // namespace ducci
