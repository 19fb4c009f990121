#include "ducci/tuple.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include "ducci/error.hpp"
#include "ducci/simd.hpp"

namespace ducci {

Tuple::Tuple(Modulus modulus, std::vector<Residue> entries)
    : modulus_(modulus), entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidArgument("tuple must have at least one entry");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] >= modulus_.value()) {
      throw InvalidArgument("entry x_" + std::to_string(i + 1) + " = " +
                            std::to_string(entries_[i]) + " is not below m = " +
                            std::to_string(modulus_.value()));
    }
  }
}

Tuple make_unchecked(Modulus modulus, std::vector<Residue> entries) {
  return Tuple(Tuple::Unchecked{}, modulus, std::move(entries));
}

Tuple Tuple::zero(Modulus modulus, std::size_t n) {
  if (n == 0) throw InvalidArgument("tuple length must be at least 1");
  return Tuple(Unchecked{}, modulus, std::vector<Residue>(n, 0));
}

Tuple Tuple::basic(Modulus modulus, std::size_t n) {
  if (n == 0) throw InvalidArgument("tuple length must be at least 1");
  std::vector<Residue> e(n, 0);
  e.back() = 1;
  return Tuple(Unchecked{}, modulus, std::move(e));
}

CoordinateSum Tuple::coordinate_sum() const noexcept {
  CoordinateSum s;
  for (Residue x : entries_) s.value += x;
  s.even = (s.value % 2) == 0;
  s.residue_mod_2l = s.value & (std::uint64_t{modulus_.two_power()} - 1);
  return s;
}

std::size_t TupleHash::operator()(const Tuple& t) const noexcept {
  // FNV-1a over the entries.
  std::uint64_t h = 1469598103934665603ULL;
  for (Residue x : t.entries()) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Tuple ducci_step(const Tuple& u) {
  std::vector<Residue> out(u.size());
  simd::cyclic_add_next(u.entries(), out, u.modulus().value());
  return make_unchecked(u.modulus(), std::move(out));
}

Tuple shift(const Tuple& u) {
  std::vector<Residue> out(u.entries().begin() + 1, u.entries().end());
  out.push_back(u[0]);
  return make_unchecked(u.modulus(), std::move(out));
}

Tuple scale(const Tuple& u, std::int64_t lambda) {
  const Modulus& mod = u.modulus();
  const std::uint64_t k = mod.reduce(lambda);
  std::vector<Residue> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    out[i] = static_cast<Residue>((k * u[i]) % mod.value());
  }
  return make_unchecked(mod, std::move(out));
}

Tuple add(const Tuple& u, const Tuple& v) {
  if (!(u.modulus() == v.modulus()) || u.size() != v.size()) {
    throw DimensionError("cannot add " + to_string(u) + " in Z_" +
                         std::to_string(u.modulus().value()) + "^" + std::to_string(u.size()) +
                         " and " + to_string(v) + " in Z_" +
                         std::to_string(v.modulus().value()) + "^" + std::to_string(v.size()));
  }
  const Residue m = u.modulus().value();
  std::vector<Residue> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Residue s = u[i] + v[i];
    out[i] = s >= m ? s - m : s;
  }
  return make_unchecked(u.modulus(), std::move(out));
}

Tuple iterate(const Tuple& u, std::uint64_t r) {
  std::vector<Residue> a(u.entries().begin(), u.entries().end());
  std::vector<Residue> b(u.size());
  const Residue m = u.modulus().value();
  for (std::uint64_t k = 0; k < r; ++k) {
    simd::cyclic_add_next(a, b, m);
    a.swap(b);
  }
  return make_unchecked(u.modulus(), std::move(a));
}

std::string format_entries(const Tuple& u) {
  std::string s;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(u[i]);
  }
  return s;
}

std::string to_string(const Tuple& u) { return "(" + format_entries(u) + ")"; }

std::ostream& operator<<(std::ostream& os, const Tuple& u) { return os << to_string(u); }

Tuple parse_tuple(std::string_view text, Modulus modulus) {
  if (text.empty()) throw ParseError("empty tuple");
  std::vector<Residue> entries;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view field =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    std::uint64_t value = 0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (field.empty() || ec != std::errc{} || ptr != last) {
      throw ParseError("malformed tuple entry '" + std::string(field) + "' in '" +
                       std::string(text) + "'");
    }
    if (value >= modulus.value()) {
      throw InvalidArgument("entry " + std::to_string(value) + " is not below m = " +
                            std::to_string(modulus.value()));
    }
    entries.push_back(static_cast<Residue>(value));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Tuple(modulus, std::move(entries));
}

std::uint64_t space_size(const Modulus& modulus, std::size_t n) {
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (__builtin_mul_overflow(size, std::uint64_t{modulus.value()}, &size)) {
      throw BudgetError("m^n = " + std::to_string(modulus.value()) + "^" + std::to_string(n) +
                        " does not fit in 64 bits");
    }
  }
  return size;
}

TupleSpace::TupleSpace(Modulus modulus, std::size_t n)
    : modulus_(modulus), n_(n), size_(space_size(modulus, n)) {
  if (n == 0) throw InvalidArgument("tuple length must be at least 1");
}

std::uint64_t TupleSpace::encode(std::span<const Residue> entries) const noexcept {
  std::uint64_t index = 0;
  for (Residue x : entries) index = index * modulus_.value() + x;
  return index;
}

void TupleSpace::decode(std::uint64_t index, std::span<Residue> out) const noexcept {
  const Residue m = modulus_.value();
  for (std::size_t j = n_; j-- > 0;) {
    out[j] = static_cast<Residue>(index % m);
    index /= m;
  }
}

Tuple TupleSpace::at(std::uint64_t index) const {
  if (index >= size_) throw InvalidArgument("tuple index out of range");
  std::vector<Residue> e(n_);
  decode(index, e);
  return make_unchecked(modulus_, std::move(e));
}

}  // namespace ducci

namespace ducci {

void successor_indices(const TupleSpace& space, std::uint64_t first,
                       std::span<std::uint32_t> out) {
  if (space.size() > (std::uint64_t{1} << 32)) {
    throw BudgetError("successor_indices needs m^n <= 2^32");
  }
  if (first + out.size() > space.size()) throw InvalidArgument("successor range out of bounds");

  constexpr std::size_t kBlock = 256;
  const std::size_t n = space.dimension();
  const Residue m = space.modulus().value();
  const simd::KernelTable& kernels = simd::active();

  std::vector<Residue> digits(n);
  space.decode(first, digits);
  std::vector<Residue> planes(n * kBlock), stepped(n * kBlock);

  for (std::size_t base = 0; base < out.size(); base += kBlock) {
    const std::size_t lanes = std::min(kBlock, out.size() - base);
    for (std::size_t k = 0; k < lanes; ++k) {
      for (std::size_t j = 0; j < n; ++j) planes[j * lanes + k] = digits[j];
      // Odometer increment, x_n least significant.
      for (std::size_t j = n; j-- > 0;) {
        if (++digits[j] < m) break;
        digits[j] = 0;
      }
    }
    kernels.step_planes(planes.data(), stepped.data(), n, lanes, m);
    kernels.encode_planes(stepped.data(), out.data() + base, n, lanes, m);
  }
}

}  // namespace ducci
