#pragma once

// Data-parallel residue kernels with a scalar reference implementation and
// vector variants chosen at runtime. Every variant must produce bit-identical
// output to the scalar one; tests/test_simd.cpp checks this for every ISA the
// host supports.
//
// All kernels assume inputs are already reduced to [0, m) and m <= 2^31.
// Input and output buffers must not overlap.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ducci/modulus.hpp"

namespace ducci::simd {

enum class Isa { scalar, avx2, neon };

std::string_view name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  // out[i] = (in[i] + in[(i + 1) % n]) mod m. One Ducci step.
  void (*cyclic_add_next)(const Residue* in, Residue* out, std::size_t n, Residue m);
  // out[i] = (in[i] + in[(i + n - 1) % n]) mod m. One step of the
  // coefficient recurrence a_{r,s} = a_{r-1,s} + a_{r-1,s-1}.
  void (*cyclic_add_prev)(const Residue* in, Residue* out, std::size_t n, Residue m);
  // Batched Ducci step over `lanes` tuples stored as n planes: plane j holds
  // entry x_{j+1} of every lane, so in[j * lanes + b] is x_{j+1} of lane b.
  void (*step_planes)(const Residue* in, Residue* out, std::size_t n, std::size_t lanes,
                      Residue m);
  // index[b] = mixed-radix code of lane b, x_1 most significant.
  // Requires m^n <= 2^32.
  void (*encode_planes)(const Residue* planes, std::uint32_t* index, std::size_t n,
                        std::size_t lanes, Residue m);
};

// Best kernel table for this CPU. Selected once on first use.
const KernelTable& active() noexcept;
// Table for a specific ISA, or nullptr if it was not built or the CPU lacks it.
const KernelTable* table_for(Isa isa) noexcept;
// Every ISA usable on this host, scalar first.
std::vector<Isa> available();

inline void cyclic_add_next(std::span<const Residue> in, std::span<Residue> out, Residue m) {
  active().cyclic_add_next(in.data(), out.data(), in.size(), m);
}

inline void cyclic_add_prev(std::span<const Residue> in, std::span<Residue> out, Residue m) {
  active().cyclic_add_prev(in.data(), out.data(), in.size(), m);
}

}  // namespace ducci::simd
