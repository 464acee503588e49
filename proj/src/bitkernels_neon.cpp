#include "lexconf/bitkernels.hpp"

#include <arm_neon.h>

#include <bit>

namespace lexconf::simd {
namespace {

std::size_t popcount_neon(const std::uint64_t* words, std::size_t count) {
  std::size_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    const uint8x16_t v = vreinterpretq_u8_u64(vld1q_u64(words + i));
    total += vaddlvq_u8(vcntq_u8(v));
  }
  for (; i < count; ++i) total += static_cast<std::size_t>(std::popcount(words[i]));
  return total;
}

std::size_t and_popcount_neon(const std::uint64_t* a, const std::uint64_t* b, std::size_t count) {
  std::size_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    const uint64x2_t v = vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    total += vaddlvq_u8(vcntq_u8(vreinterpretq_u8_u64(v)));
  }
  for (; i < count; ++i) total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return total;
}

bool equal_neon(const std::uint64_t* a, const std::uint64_t* b, std::size_t count) {
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    const uint64x2_t diff = veorq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    if (vmaxvq_u32(vreinterpretq_u32_u64(diff)) != 0) return false;
  }
  for (; i < count; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

extern const Kernels kNeonKernels;
const Kernels kNeonKernels{Isa::neon, "neon", popcount_neon, and_popcount_neon, equal_neon};

}  // namespace lexconf::simd
