#pragma once

#include <cstdint>
#include <string>

namespace ducci {

using Residue = std::uint32_t;

// The modulus m together with its 2-adic split m = 2^l * m1, m1 odd.
//
// l and m1 are always derived from m. Moduli are limited to [2, 2^31] so
// that the sum of two residues fits in a Residue, which the vector kernels
// rely on.
class Modulus {
 public:
  static constexpr std::uint64_t kMax = std::uint64_t{1} << 31;

  explicit Modulus(std::uint64_t m);

  Residue value() const noexcept { return m_; }
  // l, the exponent of 2 in m.
  unsigned two_adic() const noexcept { return l_; }
  // m1, the odd part of m.
  Residue odd_part() const noexcept { return m1_; }
  // 2^l.
  Residue two_power() const noexcept { return Residue{1} << l_; }

  bool is_even() const noexcept { return l_ > 0; }

  // Reduce an arbitrary signed integer into [0, m).
  Residue reduce(std::int64_t x) const noexcept;

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  Residue m_;
  unsigned l_;
  Residue m1_;
};

std::string to_string(const Modulus& modulus);

}  // namespace ducci
