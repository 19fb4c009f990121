#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ducci/modulus.hpp"

namespace ducci {

// Sum of a tuple's entries taken over the integers (not reduced mod m).
struct CoordinateSum {
  std::uint64_t value = 0;
  bool even = true;
  // value mod 2^l for the tuple's modulus.
  std::uint64_t residue_mod_2l = 0;
};

// An element (x_1, ..., x_n) of Z_m^n. Entries are stored reduced to [0, m)
// in left-to-right order; index 0 holds x_1.
class Tuple {
 public:
  // Throws InvalidArgument if entries is empty or any entry is >= m.
  Tuple(Modulus modulus, std::vector<Residue> entries);

  static Tuple zero(Modulus modulus, std::size_t n);
  // The basic tuple (0, ..., 0, 1).
  static Tuple basic(Modulus modulus, std::size_t n);

  const Modulus& modulus() const noexcept { return modulus_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const Residue> entries() const noexcept { return entries_; }
  Residue operator[](std::size_t i) const noexcept { return entries_[i]; }

  CoordinateSum coordinate_sum() const noexcept;

  friend bool operator==(const Tuple& a, const Tuple& b) {
    return a.modulus_ == b.modulus_ && a.entries_ == b.entries_;
  }
  // Lexicographic on entries; only meaningful for tuples of one shape.
  friend std::strong_ordering operator<=>(const Tuple& a, const Tuple& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  struct Unchecked {};
  Tuple(Unchecked, Modulus modulus, std::vector<Residue> entries)
      : modulus_(modulus), entries_(std::move(entries)) {}

  friend Tuple make_unchecked(Modulus, std::vector<Residue>);

  Modulus modulus_;
  std::vector<Residue> entries_;
};

// For internal producers whose entries are already reduced.
Tuple make_unchecked(Modulus modulus, std::vector<Residue> entries);

struct TupleHash {
  std::size_t operator()(const Tuple& t) const noexcept;
};

// D(x_1, ..., x_n) = (x_1 + x_2, x_2 + x_3, ..., x_n + x_1) mod m.
Tuple ducci_step(const Tuple& u);
// H(x_1, ..., x_n) = (x_2, ..., x_n, x_1).
Tuple shift(const Tuple& u);
// Entrywise lambda * u mod m; lambda may be negative.
Tuple scale(const Tuple& u, std::int64_t lambda);
// Entrywise sum mod m. Throws DimensionError on a shape mismatch.
Tuple add(const Tuple& u, const Tuple& v);
// D^r(u).
Tuple iterate(const Tuple& u, std::uint64_t r);

// "3,0,3"
std::string format_entries(const Tuple& u);
// "(3,0,3)"
std::string to_string(const Tuple& u);
std::ostream& operator<<(std::ostream& os, const Tuple& u);

// Parses the comma-separated text format ("3,0,3", no spaces).
// Throws ParseError on malformed text, InvalidArgument on out-of-range entries.
Tuple parse_tuple(std::string_view text, Modulus modulus);

// Bijection between Z_m^n and [0, m^n): mixed-radix with x_1 most significant.
class TupleSpace {
 public:
  // Throws BudgetError if m^n does not fit in 64 bits.
  TupleSpace(Modulus modulus, std::size_t n);

  const Modulus& modulus() const noexcept { return modulus_; }
  std::size_t dimension() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return size_; }

  std::uint64_t encode(std::span<const Residue> entries) const noexcept;
  std::uint64_t encode(const Tuple& u) const noexcept { return encode(u.entries()); }
  void decode(std::uint64_t index, std::span<Residue> out) const noexcept;
  Tuple at(std::uint64_t index) const;

 private:
  Modulus modulus_;
  std::size_t n_;
  std::uint64_t size_;
};

// m^n, or BudgetError when it overflows 64 bits.
std::uint64_t space_size(const Modulus& modulus, std::size_t n);

// out[k] = index of D(tuple at index first + k), for every k in out. Uses the
// batched vector kernels. Requires m^n <= 2^32 and first + out.size() <= m^n.
void successor_indices(const TupleSpace& space, std::uint64_t first,
                       std::span<std::uint32_t> out);

}  // namespace ducci
