// AVX2 variants. This file is compiled with -mavx2 and must only be entered
// after a runtime CPU check (see bitkernels.cpp).
#include "lexconf/bitkernels.hpp"

#include <immintrin.h>

#include <bit>

namespace lexconf::simd {
namespace {

// Nibble-lookup popcount: per-byte counts via vpshufb, then horizontal byte
// sums into four 64-bit lanes via vpsadbw.
inline __m256i popcount_bytes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
}

inline std::size_t horizontal_sum(__m256i acc) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  return static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
}

std::size_t popcount_avx2(const std::uint64_t* words, std::size_t count) {
  __m256i acc = _mm256_setzero_si256();
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(words + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(v), zero));
  }
  std::size_t total = horizontal_sum(acc);
  for (; i < count; ++i) total += static_cast<std::size_t>(std::popcount(words[i]));
  return total;
}

std::size_t and_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t count) {
  __m256i acc = _mm256_setzero_si256();
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(_mm256_and_si256(va, vb)), zero));
  }
  std::size_t total = horizontal_sum(acc);
  for (; i < count; ++i) total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return total;
}

bool equal_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t count) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i diff = _mm256_xor_si256(va, vb);
    if (!_mm256_testz_si256(diff, diff)) return false;
  }
  for (; i < count; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

extern const Kernels kAvx2Kernels;
const Kernels kAvx2Kernels{Isa::avx2, "avx2", popcount_avx2, and_popcount_avx2, equal_avx2};

}  // namespace lexconf::simd
