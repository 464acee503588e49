#include "lexconf/bitkernels.hpp"

#include <cstdlib>
#include <string_view>

namespace lexconf::simd {

#if defined(LEXCONF_HAVE_AVX2)
extern const Kernels kAvx2Kernels;
#endif
#if defined(LEXCONF_HAVE_NEON)
extern const Kernels kNeonKernels;
#endif

const Kernels* avx2_kernels() noexcept {
#if defined(LEXCONF_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  return supported ? &kAvx2Kernels : nullptr;
#else
  return nullptr;
#endif
}

const Kernels* neon_kernels() noexcept {
#if defined(LEXCONF_HAVE_NEON)
  // Advanced SIMD is mandatory on aarch64.
  return &kNeonKernels;
#else
  return nullptr;
#endif
}

namespace {

const Kernels& select() noexcept {
  if (const char* forced = std::getenv("LEXCONF_SIMD"); forced && std::string_view(forced) == "scalar")
    return scalar_kernels();
  if (const Kernels* k = avx2_kernels()) return *k;
  if (const Kernels* k = neon_kernels()) return *k;
  return scalar_kernels();
}

}  // namespace

const Kernels& active() noexcept {
  static const Kernels& chosen = select();
  return chosen;
}

}  // namespace lexconf::simd
