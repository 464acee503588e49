#include <doctest.h>

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <fstream>
#include <random>
#include <sstream>

#include "lexconf/errors.hpp"
#include "lexconf/persistence.hpp"
#include "scratch_dir.hpp"

using namespace lexconf;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << bytes;
}

std::string reseal(std::string bytes) {
  const auto body = std::string_view(bytes).substr(0, bytes.size() - 8);
  std::uint64_t h = fnv1a(body);
  for (int i = 0; i < 8; ++i) bytes[bytes.size() - 8 + i] = static_cast<char>((h >> (8 * i)) & 0xff);
  return bytes;
}

Checkpoint generator_checkpoint(unsigned n, Index rows) {
  Generator g(n);
  RowHasher h;
  std::string log;
  for (Index i = 0; i < rows; ++i) {
    const Index k = g.next_k();
    auto ones = g.advance();
    h.add(k, ones);
    append_row_line(log, k, ones);
  }
  return Checkpoint{g, h.value(), log.size(), {DetectorAlgorithm::none, 0, {}}};
}

std::string log_text(unsigned n, Index rows) {
  std::string out;
  for (const auto& r : generate_prefix(n, rows)) out += format_row_line(r);
  return out;
}

}  // namespace

TEST_CASE("checkpoint round trip") {
  ScratchDir dir("ckpt_roundtrip");
  for (unsigned n : {1u, 2u, 3u, 6u, 12u}) {
    for (Index rows : {Index{0}, Index{1}, Index{17}, Index{500}}) {
      CAPTURE(n);
      CAPTURE(rows);
      const auto cp = generator_checkpoint(n, rows);
      const auto bytes = encode_checkpoint(cp);
      CHECK(decode_checkpoint(bytes) == cp);
      const auto file = dir / "a.ckpt";
      CHECK(save_checkpoint(cp, file) == bytes.size());
      CHECK(std::filesystem::file_size(file) == bytes.size());
      CHECK(load_checkpoint(file) == cp);
    }
  }
  SUBCASE("detector state survives") {
    PeriodSearch search(6);
    CHECK_FALSE(search.run(3000));
    const auto cp = search.checkpoint();
    CHECK_FALSE(cp.detector.stack.empty());
    CHECK(decode_checkpoint(encode_checkpoint(cp)) == cp);
  }
  SUBCASE("naive generators") {
    Generator g = Generator::naive(2, 3);
    for (int i = 0; i < 40; ++i) g.advance();
    Checkpoint cp{g, 7, 0, {DetectorAlgorithm::none, 0, {}}};
    CHECK(decode_checkpoint(encode_checkpoint(cp)) == cp);
  }
}

TEST_CASE("resuming a period search is transparent") {
  ScratchDir dir("ckpt_resume");
  PeriodSearch straight(6);
  CHECK_FALSE(straight.run(100'000));

  PeriodSearch first(6);
  CHECK_FALSE(first.run(10'000));
  save_checkpoint(first.checkpoint(), dir / "s.ckpt");
  auto resumed = PeriodSearch::resume(load_checkpoint(dir / "s.ckpt"));
  CHECK(resumed.rows_examined() == 10'000);
  CHECK_FALSE(resumed.run(90'000));
  CHECK(resumed.checkpoint() == straight.checkpoint());

  SUBCASE("n = 3 finds the same period after any stop") {
    const auto expected = detect_period(3, 1000);
    for (Index stop : {1, 20, 40}) {
      PeriodSearch s(3);
      REQUIRE_FALSE(s.run(stop));
      auto r = PeriodSearch::resume(decode_checkpoint(encode_checkpoint(s.checkpoint()))).run(1000);
      REQUIRE(r);
      CHECK(r->pp == expected.pp);
      CHECK(r->p == expected.p);
    }
  }
}

TEST_CASE("unwritable destinations raise IoError") {
  ScratchDir dir("ckpt_io");
  const auto cp = generator_checkpoint(2, 10);
  spit(dir / "plain", "x");
  CHECK_THROWS_AS(save_checkpoint(cp, dir / "plain" / "c.ckpt"), IoError);
  std::filesystem::create_directory(dir / "occupied");
  spit(dir / "occupied" / "keep", "x");
  CHECK_THROWS_AS(save_checkpoint(cp, dir / "occupied"), IoError);
  CHECK(std::filesystem::is_directory(dir / "occupied"));
  CHECK_THROWS_AS(save_checkpoint(cp, dir / "missing" / "c.ckpt"), IoError);
  CHECK_THROWS_AS(load_checkpoint(dir / "nothing.ckpt"), IoError);

  SUBCASE("a failed save leaves the old file intact") {
    save_checkpoint(cp, dir / "c.ckpt");
    const auto before = slurp(dir / "c.ckpt");
    std::filesystem::create_directory(dir / ("c.ckpt.tmp." + std::to_string(::getpid())));
    CHECK_THROWS_AS(save_checkpoint(generator_checkpoint(2, 30), dir / "c.ckpt"), IoError);
    CHECK(slurp(dir / "c.ckpt") == before);
  }
}

TEST_CASE("damaged checkpoints are detected") {
  const auto bytes = encode_checkpoint(generator_checkpoint(3, 200));

  SUBCASE("every truncation") {
    for (std::size_t len = 0; len < bytes.size(); ++len) {
      CAPTURE(len);
      CHECK_THROWS_AS(decode_checkpoint(std::string_view(bytes).substr(0, len)), CorruptCheckpoint);
    }
  }
  SUBCASE("single bit flips") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 400; ++trial) {
      auto damaged = bytes;
      const std::size_t pos = std::uniform_int_distribution<std::size_t>(0, bytes.size() - 1)(rng);
      if (pos == 6 || pos == 7) continue;  // version field, covered below
      damaged[pos] = static_cast<char>(damaged[pos] ^ (1 << (trial % 8)));
      CAPTURE(pos);
      CHECK_THROWS_AS(decode_checkpoint(damaged), CorruptCheckpoint);
    }
  }
  SUBCASE("other versions") {
    auto future = bytes;
    future[6] = 2;
    CHECK_THROWS_AS(decode_checkpoint(future), VersionMismatch);
    CHECK_THROWS_AS(decode_checkpoint(reseal(future)), VersionMismatch);
    future[6] = 0;
    CHECK_THROWS_AS(decode_checkpoint(future), VersionMismatch);
  }
  SUBCASE("wrong magic") {
    auto other = bytes;
    other[0] = 'X';
    CHECK_THROWS_AS(decode_checkpoint(reseal(other)), CorruptCheckpoint);
    CHECK_THROWS_AS(decode_checkpoint("hello"), CorruptCheckpoint);
  }
  SUBCASE("consistent checksum, inconsistent contents") {
    // CURSOR payload starts at byte 40; rows emitted is its fourth field.
    auto off_by_one = bytes;
    off_by_one[64] = static_cast<char>(off_by_one[64] + 1);
    CHECK_THROWS_AS(decode_checkpoint(reseal(off_by_one)), CorruptCheckpoint);
    // next_k and rows emitted both moved: the generator state no longer fits.
    auto shifted = bytes;
    shifted[40] = static_cast<char>(shifted[40] + 1);
    shifted[64] = static_cast<char>(shifted[64] + 1);
    CHECK_THROWS_AS(decode_checkpoint(reseal(shifted)), CorruptCheckpoint);
    // Row cap 0.
    auto caps = bytes;
    caps[20] = 0;
    CHECK_THROWS_AS(decode_checkpoint(reseal(caps)), CorruptCheckpoint);
  }
  SUBCASE("damaged files on disk") {
    ScratchDir dir("ckpt_damaged");
    spit(dir / "t.ckpt", bytes.substr(0, bytes.size() / 2));
    CHECK_THROWS_AS(load_checkpoint(dir / "t.ckpt"), CorruptCheckpoint);
  }
}

TEST_CASE("row log writer truncates to the checkpointed offset") {
  ScratchDir dir("rowlog_writer");
  const auto path = dir / "rows.log";
  {
    RowLogWriter w(path, 0);
    for (const auto& r : generate_prefix(2, 10)) w.write(r.index, r.ones);
    CHECK(w.offset() == log_text(2, 10).size());
  }
  CHECK(slurp(path) == log_text(2, 10));
  const auto keep = log_text(2, 4).size();
  {
    RowLogWriter w(path, keep);
    CHECK(w.offset() == keep);
    w.sync();
  }
  CHECK(slurp(path) == log_text(2, 4));
  CHECK_THROWS_AS(RowLogWriter(path, keep + 1), IoError);
  CHECK_THROWS_AS(RowLogWriter(dir / "no" / "such.log", 0), IoError);
}

TEST_CASE("generate_to_log resumes from its checkpoint") {
  ScratchDir dir("genjob");
  GenJobOptions opt;
  opt.log = dir / "rows.log";
  opt.checkpoint = dir / "rows.ckpt";
  opt.checkpoint_every_rows = 3;

  const auto first = generate_to_log(2, 7, opt);
  CHECK(first.rows == 7);
  CHECK(first.resumed_rows == 0);
  CHECK(slurp(opt.log) == log_text(2, 7));
  CHECK(first.running_hash == fnv1a(log_text(2, 7)));

  const auto second = generate_to_log(2, 14, opt);
  CHECK(second.resumed_rows == 7);
  CHECK(second.rows == 14);
  CHECK(slurp(opt.log) == log_text(2, 14));
  CHECK(second.running_hash == fnv1a(log_text(2, 14)));
  CHECK(load_checkpoint(*opt.checkpoint).generator.rows_emitted() == 14);

  SUBCASE("asking for fewer rows than checkpointed starts over") {
    const auto shorter = generate_to_log(2, 5, opt);
    CHECK(shorter.resumed_rows == 0);
    CHECK(slurp(opt.log) == log_text(2, 5));
  }
  SUBCASE("a tampered log is refused") {
    auto text = slurp(opt.log);
    text[0] = '9';
    spit(opt.log, text);
    CHECK_THROWS_AS(generate_to_log(2, 20, opt), CorruptCheckpoint);
  }
  SUBCASE("a checkpoint for another order is refused") {
    CHECK_THROWS_AS(generate_to_log(3, 20, opt), InvalidParameter);
  }
}

TEST_CASE("killed runs resume to the same rows") {
  constexpr Index kRows = 400'000;
  const std::string expected = log_text(3, kRows);
  std::mt19937 rng(11);
  ScratchDir dir("genjob_kill");
  for (int trial = 0; trial < 4; ++trial) {
    CAPTURE(trial);
    GenJobOptions opt;
    opt.log = dir / ("rows" + std::to_string(trial) + ".log");
    opt.checkpoint = dir / ("rows" + std::to_string(trial) + ".ckpt");
    opt.checkpoint_every_rows = 5000;
    const pid_t child = ::fork();
    REQUIRE(child >= 0);
    if (child == 0) {
      try {
        generate_to_log(3, kRows, opt);
      } catch (...) {
        ::_exit(3);
      }
      ::_exit(0);
    }
    ::usleep(std::uniform_int_distribution<unsigned>(2'000, 60'000)(rng));
    ::kill(child, SIGKILL);
    int status = 0;
    ::waitpid(child, &status, 0);
    if (WIFEXITED(status)) CHECK(WEXITSTATUS(status) == 0);

    const auto resumed = generate_to_log(3, kRows, opt);
    CHECK(resumed.rows == kRows);
    CHECK(resumed.running_hash == fnv1a(expected));
    CHECK(slurp(opt.log) == expected);
  }
}
