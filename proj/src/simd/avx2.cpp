// Compiled with -mavx2. Nothing here may run before dispatch.cpp has
// confirmed AVX2 support on the host CPU.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace ducci::simd::avx2 {
namespace {

constexpr std::size_t kLanes = 8;

// (a + b) mod m for 8 lanes. With a, b < m <= 2^31 the sum cannot wrap, and
// when sum < m the subtraction wraps to a value above sum, so the unsigned
// minimum picks the reduced result in both cases.
inline __m256i add_mod(__m256i a, __m256i b, __m256i m) {
  const __m256i s = _mm256_add_epi32(a, b);
  return _mm256_min_epu32(s, _mm256_sub_epi32(s, m));
}

inline __m256i load(const Residue* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void store(Residue* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

void cyclic_add_next(const Residue* in, Residue* out, std::size_t n, Residue m) {
  if (n == 0) return;
  const __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
  std::size_t i = 0;
  for (; i + kLanes < n; i += kLanes) store(out + i, add_mod(load(in + i), load(in + i + 1), vm));
  for (; i + 1 < n; ++i) out[i] = simd::add_mod(in[i], in[i + 1], m);
  out[n - 1] = simd::add_mod(in[n - 1], in[0], m);
}

void cyclic_add_prev(const Residue* in, Residue* out, std::size_t n, Residue m) {
  if (n == 0) return;
  const __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
  out[0] = simd::add_mod(in[0], in[n - 1], m);
  std::size_t i = 1;
  for (; i + kLanes <= n; i += kLanes) store(out + i, add_mod(load(in + i), load(in + i - 1), vm));
  for (; i < n; ++i) out[i] = simd::add_mod(in[i], in[i - 1], m);
}

void step_planes(const Residue* in, Residue* out, std::size_t n, std::size_t lanes, Residue m) {
  const __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
  for (std::size_t j = 0; j < n; ++j) {
    const Residue* a = in + j * lanes;
    const Residue* b = in + ((j + 1) % n) * lanes;
    Residue* o = out + j * lanes;
    std::size_t k = 0;
    for (; k + kLanes <= lanes; k += kLanes) store(o + k, add_mod(load(a + k), load(b + k), vm));
    for (; k < lanes; ++k) o[k] = simd::add_mod(a[k], b[k], m);
  }
}

void encode_planes(const Residue* planes, std::uint32_t* index, std::size_t n,
                   std::size_t lanes, Residue m) {
  const __m256i vm = _mm256_set1_epi32(static_cast<int>(m));
  std::size_t k = 0;
  for (; k + kLanes <= lanes; k += kLanes) {
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t j = 0; j < n; ++j) {
      acc = _mm256_add_epi32(_mm256_mullo_epi32(acc, vm), load(planes + j * lanes + k));
    }
    store(index + k, acc);
  }
  for (; k < lanes; ++k) {
    std::uint32_t acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc = acc * m + planes[j * lanes + k];
    index[k] = acc;
  }
}

}  // namespace

const KernelTable kTable{Isa::avx2, &cyclic_add_next, &cyclic_add_prev, &step_planes,
                         &encode_planes};

}  // namespace ducci::simd::avx2
