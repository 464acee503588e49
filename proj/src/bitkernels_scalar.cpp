#include "lexconf/bitkernels.hpp"

#include <bit>

namespace lexconf::simd {
namespace {

std::size_t popcount_scalar(const std::uint64_t* words, std::size_t count) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < count; ++i) total += static_cast<std::size_t>(std::popcount(words[i]));
  return total;
}

std::size_t and_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t count) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < count; ++i) total += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return total;
}

bool equal_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

constexpr Kernels kScalar{Isa::scalar, "scalar", popcount_scalar, and_popcount_scalar, equal_scalar};

}  // namespace

const Kernels& scalar_kernels() noexcept { return kScalar; }

}  // namespace lexconf::simd
