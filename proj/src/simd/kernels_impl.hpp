#pragma once

#include <cstddef>
#include <cstdint>

#include "ducci/simd.hpp"

namespace ducci::simd {

namespace scalar {
void cyclic_add_next(const Residue* in, Residue* out, std::size_t n, Residue m);
void cyclic_add_prev(const Residue* in, Residue* out, std::size_t n, Residue m);
void step_planes(const Residue* in, Residue* out, std::size_t n, std::size_t lanes, Residue m);
void encode_planes(const Residue* planes, std::uint32_t* index, std::size_t n,
                   std::size_t lanes, Residue m);
extern const KernelTable kTable;
}  // namespace scalar

#if defined(DUCCI_HAVE_AVX2)
namespace avx2 {
extern const KernelTable kTable;
}
#endif

#if defined(DUCCI_HAVE_NEON)
namespace neon {
extern const KernelTable kTable;
}
#endif

// Sum of two residues already in [0, m), m <= 2^31.
inline Residue add_mod(Residue a, Residue b, Residue m) noexcept {
  const Residue s = a + b;
  return s >= m ? s - m : s;
}

}  // namespace ducci::simd
