#pragma once

// Word-parallel bit kernels used by the dense incidence-matrix checks.
//
// Every kernel has a portable scalar reference; wider variants (AVX2 on
// x86-64, NEON on aarch64) are picked at runtime when the CPU supports them.
// Setting LEXCONF_SIMD=scalar in the environment forces the reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace lexconf::simd {

enum class Isa { scalar, avx2, neon };

struct Kernels {
  Isa isa;
  std::string_view name;
  std::size_t (*popcount)(const std::uint64_t* words, std::size_t count);
  std::size_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b, std::size_t count);
  bool (*equal)(const std::uint64_t* a, const std::uint64_t* b, std::size_t count);
};

const Kernels& scalar_kernels() noexcept;

/// nullptr when the variant was not compiled in or the CPU lacks the ISA.
const Kernels* avx2_kernels() noexcept;
const Kernels* neon_kernels() noexcept;

/// The kernel table chosen for this process (resolved once).
const Kernels& active() noexcept;

inline std::size_t popcount(std::span<const std::uint64_t> words) noexcept {
  return active().popcount(words.data(), words.size());
}

/// Number of positions set in both `a` and `b`; spans must have equal size.
inline std::size_t and_popcount(std::span<const std::uint64_t> a,
                                std::span<const std::uint64_t> b) noexcept {
  return active().and_popcount(a.data(), b.data(), a.size());
}

inline bool equal(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  return a.size() == b.size() && active().equal(a.data(), b.data(), a.size());
}

}  // namespace lexconf::simd
