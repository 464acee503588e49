#pragma once

// Row log text format: one row per line, `k<TAB>j1,j2,...,jm<LF>` with the
// column indices ascending and 1-based. The running hash of a generator run is
// FNV-1a (64 bit) over exactly these bytes, so it can be recomputed from any
// log prefix.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexconf/generator.hpp"

namespace lexconf {

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

constexpr std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = kFnvOffset) noexcept {
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= kFnvPrime;
  }
  return h;
}

/// Appends the log line (including the trailing newline) to `out`.
void append_row_line(std::string& out, Index k, std::span<const Index> ones);
std::string format_row_line(const SparseRow& row);

/// Parses one line, with or without its trailing newline. Throws ParseError.
SparseRow parse_row_line(std::string_view line);

/// Running FNV-1a over the log text of every row seen so far.
class RowHasher {
 public:
  RowHasher() = default;
  explicit RowHasher(std::uint64_t state) : state_(state) {}

  void add(Index k, std::span<const Index> ones);
  void add(const SparseRow& row) { add(row.index, row.ones); }
  std::uint64_t value() const noexcept { return state_; }

 private:
  std::uint64_t state_ = kFnvOffset;
  std::string scratch_;
};

std::vector<SparseRow> read_row_log(const std::filesystem::path& path);

/// FNV-1a over the first `bytes` bytes of a file. Throws IoError if shorter.
std::uint64_t hash_file_prefix(const std::filesystem::path& path, std::uint64_t bytes);

}  // namespace lexconf
