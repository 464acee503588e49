#include "lexconf/bitmatrix.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "lexconf/bitkernels.hpp"
#include "lexconf/errors.hpp"

namespace lexconf {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), words_(rows * ((cols + 63) / 64), 0) {}

std::vector<std::size_t> BitMatrix::row_ones(std::size_t i) const {
  std::vector<std::size_t> out;
  auto words = row_words(i);
  for (std::size_t w = 0; w < words.size(); ++w) {
    for (std::uint64_t bits = words[w]; bits; bits &= bits - 1)
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
  }
  return out;
}

std::size_t BitMatrix::row_weight(std::size_t i) const noexcept { return simd::popcount(row_words(i)); }

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j : row_ones(i)) t.set(j, i);
  return t;
}

std::vector<std::size_t> BitMatrix::column_weights() const {
  const BitMatrix t = transposed();
  std::vector<std::size_t> out(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out[j] = t.row_weight(j);
  return out;
}

bool BitMatrix::operator==(const BitMatrix& other) const noexcept {
  return rows_ == other.rows_ && cols_ == other.cols_ && simd::equal(words_, other.words_);
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BitMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw ParseError("dense matrix rows have unequal length");
    for (std::size_t j = 0; j < cols; ++j) {
      const char c = rows[i][j];
      if (c != '0' && c != '1') throw ParseError(std::string("unexpected character '") + c + "' in dense matrix");
      if (c == '1') m.set(i, j);
    }
  }
  return m;
}

std::string to_dense(const BitMatrix& m) {
  std::string out;
  out.reserve(m.rows() * (m.cols() + 1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(m.get(i, j) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

std::string to_p1(const BitMatrix& m) {
  return "P1\n" + std::to_string(m.cols()) + " " + std::to_string(m.rows()) + "\n" + to_dense(m);
}

std::string to_sparse(const BitMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    bool first = true;
    for (std::size_t j : m.row_ones(i)) {
      if (!first) out.push_back(',');
      out += std::to_string(j + 1);
      first = false;
    }
    out.push_back('\n');
  }
  return out;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

BitMatrix parse_p1(std::string_view text) {
  std::size_t pos = 2;  // past "P1"
  auto skip_space = [&] {
    while (pos < text.size()) {
      if (text[pos] == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_number = [&] {
    skip_space();
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc{}) throw ParseError("malformed P1 header");
    pos = static_cast<std::size_t>(ptr - text.data());
    return value;
  };
  const std::size_t width = read_number();
  const std::size_t height = read_number();
  BitMatrix m(height, width);
  for (std::size_t cell = 0; cell < width * height; ++cell) {
    skip_space();
    if (pos >= text.size()) throw ParseError("P1 data truncated");
    const char c = text[pos++];
    if (c != '0' && c != '1') throw ParseError(std::string("unexpected character '") + c + "' in P1 data");
    if (c == '1') m.set(cell / width, cell % width);
  }
  return m;
}

BitMatrix parse_sparse(const std::vector<std::string_view>& lines) {
  std::vector<std::vector<std::size_t>> rows;
  std::size_t max_col = 0;
  for (std::string_view line : lines) {
    std::vector<std::size_t> cols;
    std::string_view rest = line;
    while (!rest.empty()) {
      const auto sep = rest.find_first_of(", \t");
      std::string_view tok = rest.substr(0, sep);
      if (!tok.empty()) {
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || value == 0)
          throw ParseError("malformed sparse matrix line: '" + std::string(line) + "'");
        cols.push_back(value - 1);
        max_col = std::max(max_col, value);
      }
      if (sep == std::string_view::npos) break;
      rest.remove_prefix(sep + 1);
    }
    rows.push_back(std::move(cols));
  }
  BitMatrix m(rows.size(), std::max(rows.size(), max_col));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j : rows[i]) m.set(i, j);
  return m;
}

}  // namespace

BitMatrix parse_matrix(std::string_view text, MatrixFormat format) {
  if (format == MatrixFormat::automatic) {
    if (text.substr(0, 2) == "P1") {
      format = MatrixFormat::p1;
    } else if (text.find(',') != std::string_view::npos) {
      format = MatrixFormat::sparse;
    } else {
      format = MatrixFormat::dense;
    }
  }
  switch (format) {
    case MatrixFormat::p1:
      if (text.substr(0, 2) != "P1") throw ParseError("missing P1 magic number");
      return parse_p1(text);
    case MatrixFormat::sparse: {
      auto lines = split_lines(text);
      return parse_sparse(lines);
    }
    default: {
      std::vector<std::string> rows;
      for (std::string_view line : split_lines(text)) {
        if (line.empty()) continue;
        rows.emplace_back(line);
      }
      return BitMatrix::from_rows(rows);
    }
  }
}

BitMatrix read_matrix_file(const std::string& path, MatrixFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open matrix file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str(), format);
}

}  // namespace lexconf
