#include "lexconf/persistence.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lexconf/errors.hpp"
#include "lexconf/period.hpp"

namespace lexconf {
namespace {

constexpr char kMagic[6] = {'L', 'E', 'X', 'C', 'K', 'P'};
constexpr std::size_t kHeaderSize = 8;

enum Tag : std::uint32_t { kEnd = 0, kParams = 1, kCursor = 2, kRows = 3, kColumns = 4, kDetector = 5 };

class Writer {
 public:
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void raw(std::string_view s) { out_ += s; }
  std::string& str() { return out_; }

 private:
  void put(std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  std::string_view take(std::uint64_t n) {
    need(n);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const noexcept { return pos_ == bytes_.size(); }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

 private:
  void need(std::uint64_t n) const {
    if (n > bytes_.size() - pos_) throw CorruptCheckpoint("checkpoint record is truncated");
  }
  std::uint64_t get(int bytes) {
    need(bytes);
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= std::uint64_t{static_cast<unsigned char>(bytes_[pos_ + i])} << (8 * i);
    pos_ += bytes;
    return v;
  }
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

void record(Writer& w, Tag tag, const std::string& payload) {
  w.u32(tag);
  w.u64(payload.size());
  w.raw(payload);
}

std::string io_message(const std::string& what, const std::filesystem::path& path) {
  return what + " " + path.string() + ": " + std::strerror(errno);
}

void write_all(int fd, const char* data, std::size_t size, const std::filesystem::path& path) {
  while (size > 0) {
    const ssize_t n = ::write(fd, data, size);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError(io_message("cannot write", path));
    }
    data += n;
    size -= static_cast<std::size_t>(n);
  }
}

void sync_directory(const std::filesystem::path& dir) {
  const int fd = ::open(dir.empty() ? "." : dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

}  // namespace

std::string encode_checkpoint(const Checkpoint& cp) {
  const auto snap = cp.generator.snapshot();
  Writer w;
  w.raw(std::string_view(kMagic, sizeof kMagic));
  w.u16(kCheckpointVersion);

  Writer params;
  params.u32(snap.row_cap);
  params.u32(snap.col_cap);
  record(w, kParams, params.str());

  Writer cursor;
  cursor.u64(snap.next_k);
  cursor.u64(snap.frontier);
  cursor.u64(snap.last_column);
  cursor.u64(snap.next_k - 1);
  cursor.u64(cp.running_hash);
  cursor.u64(cp.log_offset);
  record(w, kCursor, cursor.str());

  Writer rows;
  rows.u64(snap.live_rows.size());
  for (const auto& r : snap.live_rows) {
    rows.u64(r.index);
    rows.u32(static_cast<std::uint32_t>(r.ones.size()));
    for (Index j : r.ones) rows.u64(j);
  }
  record(w, kRows, rows.str());

  Writer cols;
  cols.u64(snap.column_weights.size());
  for (const auto& [j, weight] : snap.column_weights) {
    cols.u64(j);
    cols.u32(weight);
  }
  record(w, kColumns, cols.str());

  Writer det;
  det.u32(static_cast<std::uint32_t>(cp.detector.algorithm));
  det.u64(cp.detector.steps);
  det.u64(cp.detector.stack.size());
  for (const auto& m : cp.detector.stack) {
    det.u64(m.k);
    det.u64(m.l);
    det.u64(m.digest.hi);
    det.u64(m.digest.lo);
    det.u64(m.d);
    det.u64(m.b);
    det.u64(m.words.size());
    for (auto word : m.words) det.u64(word);
  }
  record(w, kDetector, det.str());
  record(w, kEnd, {});

  w.u64(fnv1a(w.str()));
  return std::move(w.str());
}

Checkpoint decode_checkpoint(std::string_view bytes) {
  if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0)
    throw CorruptCheckpoint("not a checkpoint file");
  const unsigned version = static_cast<unsigned char>(bytes[6]) | (static_cast<unsigned char>(bytes[7]) << 8);
  if (version != kCheckpointVersion)
    throw VersionMismatch("checkpoint format version " + std::to_string(version) + " is not supported (expected " +
                          std::to_string(kCheckpointVersion) + ")");
  if (bytes.size() < kHeaderSize + 8) throw CorruptCheckpoint("checkpoint is truncated");
  const auto body = bytes.substr(0, bytes.size() - 8);
  Reader trailer(bytes.substr(bytes.size() - 8));
  if (trailer.u64() != fnv1a(body)) throw CorruptCheckpoint("checkpoint checksum mismatch (truncated or damaged)");

  Generator::Snapshot snap;
  Checkpoint cp;
  std::uint32_t seen = 0;
  Reader r(body.substr(kHeaderSize));
  for (;;) {
    const auto tag = r.u32();
    const auto len = r.u64();
    Reader p(r.take(len));
    if (tag == kEnd) break;
    if (tag > kDetector) throw CorruptCheckpoint("unknown checkpoint record " + std::to_string(tag));
    if (seen & (1u << tag)) throw CorruptCheckpoint("duplicate checkpoint record " + std::to_string(tag));
    seen |= 1u << tag;
    switch (tag) {
      case kParams:
        snap.row_cap = p.u32();
        snap.col_cap = p.u32();
        break;
      case kCursor: {
        snap.next_k = p.u64();
        snap.frontier = p.u64();
        snap.last_column = p.u64();
        if (p.u64() + 1 != snap.next_k) throw CorruptCheckpoint("row counter disagrees with next row");
        cp.running_hash = p.u64();
        cp.log_offset = p.u64();
        break;
      }
      case kRows: {
        const auto count = p.u64();
        if (count > p.remaining() / 12) throw CorruptCheckpoint("row count exceeds record size");
        snap.live_rows.resize(count);
        for (auto& row : snap.live_rows) {
          row.index = p.u64();
          const auto m = p.u32();
          if (m > p.remaining() / 8) throw CorruptCheckpoint("row weight exceeds record size");
          row.ones.resize(m);
          for (auto& j : row.ones) j = p.u64();
        }
        break;
      }
      case kColumns: {
        const auto count = p.u64();
        if (count > p.remaining() / 12) throw CorruptCheckpoint("column count exceeds record size");
        snap.column_weights.resize(count);
        for (auto& [j, weight] : snap.column_weights) {
          j = p.u64();
          weight = p.u32();
        }
        break;
      }
      case kDetector: {
        const auto algorithm = p.u32();
        if (algorithm > static_cast<std::uint32_t>(DetectorAlgorithm::stack))
          throw CorruptCheckpoint("unknown detector algorithm " + std::to_string(algorithm));
        cp.detector.algorithm = static_cast<DetectorAlgorithm>(algorithm);
        cp.detector.steps = p.u64();
        const auto count = p.u64();
        if (count > p.remaining() / 56) throw CorruptCheckpoint("detector entry count exceeds record size");
        cp.detector.stack.resize(count);
        for (auto& m : cp.detector.stack) {
          m.k = p.u64();
          m.l = p.u64();
          m.digest.hi = p.u64();
          m.digest.lo = p.u64();
          m.d = p.u64();
          m.b = p.u64();
          const auto words = p.u64();
          if (words > p.remaining() / 8) throw CorruptCheckpoint("detector entry exceeds record size");
          m.stride = static_cast<std::size_t>((m.b + 63) / 64);
          if (words != m.d * m.stride) throw CorruptCheckpoint("detector entry has wrong word count");
          m.words.resize(words);
          for (auto& word : m.words) word = p.u64();
          if (m.hash() != m.digest) throw CorruptCheckpoint("detector entry digest mismatch");
        }
        break;
      }
    }
    if (!p.done()) throw CorruptCheckpoint("checkpoint record " + std::to_string(tag) + " has trailing bytes");
  }
  if (!r.done()) throw CorruptCheckpoint("bytes after end record");
  const std::uint32_t required = (1u << kParams) | (1u << kCursor) | (1u << kRows) | (1u << kColumns) | (1u << kDetector);
  if ((seen & required) != required) throw CorruptCheckpoint("checkpoint is missing records");
  for (std::size_t i = 1; i < cp.detector.stack.size(); ++i)
    if (compare_states(cp.detector.stack[i - 1], cp.detector.stack[i]) >= 0)
      throw CorruptCheckpoint("detector stack is not ordered");

  try {
    if (snap.row_cap < 1 || snap.col_cap < 1 || snap.row_cap > kMaxOrder + 1 || snap.col_cap > kMaxOrder + 1)
      throw InvalidParameter("caps out of range");
    cp.generator = Generator::restore(snap);
  } catch (const InvalidParameter& e) {
    throw CorruptCheckpoint(std::string("checkpoint state rejected: ") + e.what());
  }
  return cp;
}

std::uint64_t save_checkpoint(const Checkpoint& cp, const std::filesystem::path& path) {
  const std::string bytes = encode_checkpoint(cp);
  const auto dir = path.parent_path();
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw IoError(io_message("cannot create checkpoint", tmp));
  try {
    write_all(fd, bytes.data(), bytes.size(), tmp);
    if (::fsync(fd) != 0) throw IoError(io_message("cannot sync", tmp));
  } catch (...) {
    ::close(fd);
    ::unlink(tmp.c_str());
    throw;
  }
  if (::close(fd) != 0) {
    ::unlink(tmp.c_str());
    throw IoError(io_message("cannot close", tmp));
  }
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    const auto message = io_message("cannot replace checkpoint", path);
    ::unlink(tmp.c_str());
    throw IoError(message);
  }
  sync_directory(dir);
  return bytes.size();
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read checkpoint " + path.string());
  return decode_checkpoint(buf.str());
}

RowLogWriter::RowLogWriter(const std::filesystem::path& path, std::uint64_t offset) : path_(path), offset_(offset) {
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw IoError(io_message("cannot open row log", path));
  struct stat st {};
  if (::fstat(fd_, &st) != 0 || static_cast<std::uint64_t>(st.st_size) < offset) {
    ::close(fd_);
    throw IoError("row log " + path.string() + " is shorter than the checkpointed offset");
  }
  if (::ftruncate(fd_, static_cast<off_t>(offset)) != 0 || ::lseek(fd_, static_cast<off_t>(offset), SEEK_SET) < 0) {
    const auto message = io_message("cannot truncate row log", path);
    ::close(fd_);
    throw IoError(message);
  }
}

RowLogWriter::~RowLogWriter() {
  try {
    flush();
  } catch (...) {
  }
  ::close(fd_);
}

void RowLogWriter::write(Index k, std::span<const Index> ones) {
  append_row_line(buffer_, k, ones);
  if (buffer_.size() >= (1u << 20)) flush();
}

void RowLogWriter::flush() {
  if (buffer_.empty()) return;
  write_all(fd_, buffer_.data(), buffer_.size(), path_);
  offset_ += buffer_.size();
  buffer_.clear();
}

void RowLogWriter::sync() {
  flush();
  if (::fsync(fd_) != 0) throw IoError(io_message("cannot sync row log", path_));
}

GenJobResult generate_to_log(unsigned n, Index count, const GenJobOptions& options) {
  Params::make(n);
  if (count < 1) throw InvalidParameter("row count must be at least 1");
  GenJobResult result;
  Generator g(n);
  RowHasher hasher;
  std::uint64_t offset = 0;

  if (options.checkpoint && std::filesystem::exists(*options.checkpoint)) {
    Checkpoint cp = load_checkpoint(*options.checkpoint);
    if (!cp.generator.symmetric() || cp.generator.order() != n)
      throw InvalidParameter("checkpoint " + options.checkpoint->string() + " belongs to n = " +
                             std::to_string(cp.generator.order()));
    if (hash_file_prefix(options.log, cp.log_offset) != cp.running_hash)
      throw CorruptCheckpoint("row log " + options.log.string() + " does not match checkpoint hash");
    if (cp.generator.rows_emitted() <= count) {
      g = cp.generator;
      hasher = RowHasher(cp.running_hash);
      offset = cp.log_offset;
      result.resumed_rows = g.rows_emitted();
    }
  }

  RowLogWriter log(options.log, offset);
  auto save = [&] {
    if (!options.checkpoint) return;
    log.sync();
    save_checkpoint(Checkpoint{g, hasher.value(), log.offset(), {DetectorAlgorithm::none, 0, {}}}, *options.checkpoint);
  };

  Index since_save = 0;
  auto last_save = std::chrono::steady_clock::now();
  auto last_progress = last_save;
  while (g.rows_emitted() < count) {
    const Index k = g.next_k();
    auto ones = g.advance();
    log.write(k, ones);
    hasher.add(k, ones);
    ++since_save;
    if ((k & 1023) == 0) {
      const auto now = std::chrono::steady_clock::now();
      if (options.on_progress && options.progress_every.count() > 0 && now - last_progress >= options.progress_every) {
        options.on_progress(k);
        last_progress = now;
      }
      if (now - last_save >= options.checkpoint_every) since_save = options.checkpoint_every_rows;
    }
    if (since_save >= options.checkpoint_every_rows) {
      save();
      since_save = 0;
      last_save = std::chrono::steady_clock::now();
    }
  }
  save();
  log.sync();
  result.rows = g.rows_emitted();
  result.running_hash = hasher.value();
  return result;
}

}  // namespace lexconf
