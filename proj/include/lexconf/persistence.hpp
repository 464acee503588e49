#pragma once

// Checkpoint files and the append-only row log.
//
// Checkpoint layout, all integers little-endian:
//   header   "LEXCKP" u16 version                      (8 bytes)
//   records  u32 tag, u64 payload length, payload      (repeated, END last)
//   trailer  u64 FNV-1a of every preceding byte
// Records: PARAMS (row cap, column cap), CURSOR (next_k, frontier, last
// column, rows emitted, running hash, log offset), ROWS (live rows), COLUMNS
// (weights from the frontier on), DETECTOR (algorithm tag, step counter,
// stored windows), END (empty).

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "lexconf/checkpoint.hpp"

namespace lexconf {

inline constexpr std::uint16_t kCheckpointVersion = 1;

/// Serialises a checkpoint to bytes (the exact file contents).
std::string encode_checkpoint(const Checkpoint& cp);
/// Throws CorruptCheckpoint or VersionMismatch.
Checkpoint decode_checkpoint(std::string_view bytes);

/// Writes to a temporary file in the same directory, syncs it, then renames it
/// over `path`, so a crash leaves either the old or the new file. Returns the
/// byte count. Throws IoError; the previous file is untouched on failure.
std::uint64_t save_checkpoint(const Checkpoint& cp, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

/// Appends row-log lines. Opening truncates the file to `offset` bytes, which
/// discards rows written after the last checkpoint.
class RowLogWriter {
 public:
  RowLogWriter(const std::filesystem::path& path, std::uint64_t offset);
  ~RowLogWriter();
  RowLogWriter(const RowLogWriter&) = delete;
  RowLogWriter& operator=(const RowLogWriter&) = delete;

  void write(Index k, std::span<const Index> ones);
  /// Pushes buffered bytes to the file and syncs it.
  void sync();
  std::uint64_t offset() const noexcept { return offset_ + buffer_.size(); }

 private:
  void flush();

  std::filesystem::path path_;
  int fd_ = -1;
  std::uint64_t offset_ = 0;
  std::string buffer_;
};

struct GenJobOptions {
  std::filesystem::path log;
  std::optional<std::filesystem::path> checkpoint;
  Index checkpoint_every_rows = 1'000'000;
  std::chrono::seconds checkpoint_every{600};
  std::chrono::seconds progress_every{0};
  std::function<void(Index rows)> on_progress;
};

struct GenJobResult {
  Index rows = 0;
  std::uint64_t running_hash = kFnvOffset;
  /// Rows taken over from an existing checkpoint (0 for a fresh run).
  Index resumed_rows = 0;
};

/// Writes rows 1..count of A(n) to the log. With a checkpoint path, resumes
/// from it when present (after checking the log prefix against the stored
/// hash) and saves at the configured cadence and at the end.
GenJobResult generate_to_log(unsigned n, Index count, const GenJobOptions& options);

}  // namespace lexconf
