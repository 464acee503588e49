#include "lexconf/rowlog.hpp"

#include <charconv>
#include <fstream>

#include "lexconf/errors.hpp"

namespace lexconf {
namespace {

void append_number(std::string& out, Index value) {
  char buf[24];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, end);
}

Index parse_index(std::string_view text, std::string_view line) {
  Index value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() || value == 0)
    throw ParseError("malformed row log line: '" + std::string(line) + "'");
  return value;
}

}  // namespace

void append_row_line(std::string& out, Index k, std::span<const Index> ones) {
  append_number(out, k);
  out.push_back('\t');
  for (std::size_t t = 0; t < ones.size(); ++t) {
    if (t) out.push_back(',');
    append_number(out, ones[t]);
  }
  out.push_back('\n');
}

std::string format_row_line(const SparseRow& row) {
  std::string out;
  append_row_line(out, row.index, row.ones);
  return out;
}

SparseRow parse_row_line(std::string_view line) {
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  const auto tab = line.find('\t');
  if (tab == std::string_view::npos) throw ParseError("row log line lacks a tab: '" + std::string(line) + "'");
  SparseRow row;
  row.index = parse_index(line.substr(0, tab), line);
  std::string_view rest = line.substr(tab + 1);
  while (true) {
    const auto comma = rest.find(',');
    row.ones.push_back(parse_index(rest.substr(0, comma), line));
    if (row.ones.size() > 1 && row.ones[row.ones.size() - 2] >= row.ones.back())
      throw ParseError("row log columns are not ascending: '" + std::string(line) + "'");
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return row;
}

void RowHasher::add(Index k, std::span<const Index> ones) {
  scratch_.clear();
  append_row_line(scratch_, k, ones);
  state_ = fnv1a(scratch_, state_);
}

std::vector<SparseRow> read_row_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open row log " + path.string());
  std::vector<SparseRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(parse_row_line(line));
  }
  return rows;
}

std::uint64_t hash_file_prefix(const std::filesystem::path& path, std::uint64_t bytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::uint64_t h = kFnvOffset;
  std::string buf(1 << 16, '\0');
  while (bytes > 0) {
    const auto want = static_cast<std::streamsize>(std::min<std::uint64_t>(bytes, buf.size()));
    in.read(buf.data(), want);
    if (in.gcount() != want) throw IoError(path.string() + " is shorter than the recorded log offset");
    h = fnv1a(std::string_view(buf.data(), static_cast<std::size_t>(want)), h);
    bytes -= static_cast<std::uint64_t>(want);
  }
  return h;
}

}  // namespace lexconf
