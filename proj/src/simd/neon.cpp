#include <arm_neon.h>

#include "kernels_impl.hpp"

namespace ducci::simd::neon {
namespace {

constexpr std::size_t kLanes = 4;

// Same min trick as the AVX2 variant.
inline uint32x4_t add_mod(uint32x4_t a, uint32x4_t b, uint32x4_t m) {
  const uint32x4_t s = vaddq_u32(a, b);
  return vminq_u32(s, vsubq_u32(s, m));
}

void cyclic_add_next(const Residue* in, Residue* out, std::size_t n, Residue m) {
  if (n == 0) return;
  const uint32x4_t vm = vdupq_n_u32(m);
  std::size_t i = 0;
  for (; i + kLanes < n; i += kLanes) {
    vst1q_u32(out + i, add_mod(vld1q_u32(in + i), vld1q_u32(in + i + 1), vm));
  }
  for (; i + 1 < n; ++i) out[i] = simd::add_mod(in[i], in[i + 1], m);
  out[n - 1] = simd::add_mod(in[n - 1], in[0], m);
}

void cyclic_add_prev(const Residue* in, Residue* out, std::size_t n, Residue m) {
  if (n == 0) return;
  const uint32x4_t vm = vdupq_n_u32(m);
  out[0] = simd::add_mod(in[0], in[n - 1], m);
  std::size_t i = 1;
  for (; i + kLanes <= n; i += kLanes) {
    vst1q_u32(out + i, add_mod(vld1q_u32(in + i), vld1q_u32(in + i - 1), vm));
  }
  for (; i < n; ++i) out[i] = simd::add_mod(in[i], in[i - 1], m);
}

void step_planes(const Residue* in, Residue* out, std::size_t n, std::size_t lanes, Residue m) {
  const uint32x4_t vm = vdupq_n_u32(m);
  for (std::size_t j = 0; j < n; ++j) {
    const Residue* a = in + j * lanes;
    const Residue* b = in + ((j + 1) % n) * lanes;
    Residue* o = out + j * lanes;
    std::size_t k = 0;
    for (; k + kLanes <= lanes; k += kLanes) {
      vst1q_u32(o + k, add_mod(vld1q_u32(a + k), vld1q_u32(b + k), vm));
    }
    for (; k < lanes; ++k) o[k] = simd::add_mod(a[k], b[k], m);
  }
}

void encode_planes(const Residue* planes, std::uint32_t* index, std::size_t n,
                   std::size_t lanes, Residue m) {
  std::size_t k = 0;
  for (; k + kLanes <= lanes; k += kLanes) {
    uint32x4_t acc = vdupq_n_u32(0);
    for (std::size_t j = 0; j < n; ++j) {
      acc = vmlaq_n_u32(vld1q_u32(planes + j * lanes + k), acc, m);
    }
    vst1q_u32(index + k, acc);
  }
  for (; k < lanes; ++k) {
    std::uint32_t acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc = acc * m + planes[j * lanes + k];
    index[k] = acc;
  }
}

}  // namespace

const KernelTable kTable{Isa::neon, &cyclic_add_next, &cyclic_add_prev, &step_planes,
                         &encode_planes};

}  // namespace ducci::simd::neon
