#include <cstdlib>
#include <cstring>

#include "boltzlab/simd/kernels.hpp"

namespace boltzlab::simd {

#if defined(BOLTZLAB_BUILD_AVX2)
const KernelTable* avx2_table_impl();
#endif

const KernelTable* avx2_kernels() {
#if defined(BOLTZLAB_BUILD_AVX2)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return avx2_table_impl();
#endif
  return nullptr;
}

namespace {

const KernelTable* pick() {
  if (const char* env = std::getenv("BOLTZLAB_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_kernels();
    if (std::strcmp(env, "avx2") == 0) {
      if (const KernelTable* t = avx2_kernels()) return t;
      return &scalar_kernels();
    }
  }
  if (const KernelTable* t = avx2_kernels()) return t;
  return &scalar_kernels();
}

}  // namespace

const KernelTable& kernels() {
  static const KernelTable* active = pick();
  return *active;
}

}  // namespace boltzlab::simd
