#include "kernels_impl.hpp"

namespace ducci::simd {
namespace {

bool cpu_has(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(DUCCI_HAVE_AVX2)
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(DUCCI_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& select_best() noexcept {
  if (const KernelTable* t = table_for(Isa::avx2)) return *t;
  if (const KernelTable* t = table_for(Isa::neon)) return *t;
  return scalar::kTable;
}

}  // namespace

std::string_view name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

const KernelTable* table_for(Isa isa) noexcept {
  if (!cpu_has(isa)) return nullptr;
  switch (isa) {
    case Isa::scalar:
      return &scalar::kTable;
    case Isa::avx2:
#if defined(DUCCI_HAVE_AVX2)
      return &avx2::kTable;
#else
      return nullptr;
#endif
    case Isa::neon:
#if defined(DUCCI_HAVE_NEON)
      return &neon::kTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable& active() noexcept {
  static const KernelTable& table = select_best();
  return table;
}

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
    if (table_for(isa) != nullptr) out.push_back(isa);
  }
  return out;
}

}  // namespace ducci::simd
