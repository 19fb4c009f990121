#pragma once

#include <cstdint>
#include <map>
#include <optional>

namespace ducci::nt {

// Prime factorization as prime -> exponent.
using Factorization = std::map<std::uint64_t, unsigned>;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

// Deterministic for all 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

// Full factorization of n >= 1 (Pollard rho). factor(1) is empty.
Factorization factor(std::uint64_t n);

// Smallest k >= 1 with a^k = 1 mod n; requires gcd(a, n) = 1. Returns 1 for n = 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n);

// base^exp, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) noexcept;

// Exponent of 2 in x (x > 0).
unsigned two_adic_valuation(std::uint64_t x) noexcept;

}  // namespace ducci::nt
