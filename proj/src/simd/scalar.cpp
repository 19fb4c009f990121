#include "kernels_impl.hpp"

namespace ducci::simd::scalar {

void cyclic_add_next(const Residue* in, Residue* out, std::size_t n, Residue m) {
  if (n == 0) return;
  for (std::size_t i = 0; i + 1 < n; ++i) out[i] = add_mod(in[i], in[i + 1], m);
  out[n - 1] = add_mod(in[n - 1], in[0], m);
}

void cyclic_add_prev(const Residue* in, Residue* out, std::size_t n, Residue m) {
  if (n == 0) return;
  out[0] = add_mod(in[0], in[n - 1], m);
  for (std::size_t i = 1; i < n; ++i) out[i] = add_mod(in[i], in[i - 1], m);
}

void step_planes(const Residue* in, Residue* out, std::size_t n, std::size_t lanes, Residue m) {
  for (std::size_t j = 0; j < n; ++j) {
    const Residue* a = in + j * lanes;
    const Residue* b = in + ((j + 1) % n) * lanes;
    Residue* o = out + j * lanes;
    for (std::size_t k = 0; k < lanes; ++k) o[k] = add_mod(a[k], b[k], m);
  }
}

void encode_planes(const Residue* planes, std::uint32_t* index, std::size_t n,
                   std::size_t lanes, Residue m) {
  for (std::size_t k = 0; k < lanes; ++k) {
    std::uint32_t acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc = acc * m + planes[j * lanes + k];
    index[k] = acc;
  }
}

const KernelTable kTable{Isa::scalar, &cyclic_add_next, &cyclic_add_prev, &step_planes,
                         &encode_planes};

}  // namespace ducci::simd::scalar
