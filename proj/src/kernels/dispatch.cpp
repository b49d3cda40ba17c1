#include "mees/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace mees::kernels {

#if defined(MEES_HAVE_AVX2)
const Table& avx2_table();
#endif

const Table* avx2() {
#if defined(MEES_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const Table& active() {
  static const Table& chosen = []() -> const Table& {
    const char* forced = std::getenv("MEES_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar();
    if (const Table* t = avx2()) return *t;
    return scalar();
  }();
  return chosen;
}

}  // namespace mees::kernels
