#include <cstdlib>
#include <string_view>

#include "boundariness/kernels.hpp"

namespace boundariness::kernels {

#if defined(BOUNDARINESS_WITH_AVX2)
const KernelTable& avx2_table_impl();
#endif

const KernelTable* avx2_table() {
#if defined(BOUNDARINESS_WITH_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table_impl() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* table_by_name(std::string_view name) {
  if (name == "scalar") return &scalar_table();
  if (name == "avx2") return avx2_table();
  return nullptr;
}

const KernelTable& active() {
  static const KernelTable& chosen = [] () -> const KernelTable& {
    const char* env = std::getenv("BOUNDARINESS_KERNELS");
    const std::string_view request = env ? env : "auto";
    if (request == "scalar") return scalar_table();
    if (const KernelTable* simd = avx2_table()) return *simd;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace boundariness::kernels
