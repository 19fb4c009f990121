#include "ducci/modulus.hpp"

#include <bit>

#include "ducci/error.hpp"

namespace ducci {

Modulus::Modulus(std::uint64_t m) {
  if (m < 2) {
    throw InvalidArgument("modulus must be at least 2, got " + std::to_string(m));
  }
  if (m > kMax) {
    throw InvalidArgument("modulus must not exceed 2^31, got " + std::to_string(m));
  }
  m_ = static_cast<Residue>(m);
  l_ = static_cast<unsigned>(std::countr_zero(m_));
  m1_ = m_ >> l_;
}

Residue Modulus::reduce(std::int64_t x) const noexcept {
  const std::int64_t m = m_;
  std::int64_t r = x % m;
  if (r < 0) r += m;
  return static_cast<Residue>(r);
}

std::string to_string(const Modulus& modulus) {
  return std::to_string(modulus.value()) + " = 2^" + std::to_string(modulus.two_adic()) +
         " * " + std::to_string(modulus.odd_part());
}

}  // namespace ducci
