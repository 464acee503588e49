#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace lexconf {

/// Dense row-major 0-1 matrix, each row padded to whole 64-bit words.
/// Indices are 0-based here; file formats and reports are 1-based.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  std::size_t words_per_row() const noexcept { return stride_; }

  bool get(std::size_t i, std::size_t j) const noexcept {
    return (words_[i * stride_ + j / 64] >> (j % 64)) & 1U;
  }
  void set(std::size_t i, std::size_t j, bool value = true) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (j % 64);
    auto& w = words_[i * stride_ + j / 64];
    w = value ? (w | bit) : (w & ~bit);
  }
  void flip(std::size_t i, std::size_t j) noexcept { words_[i * stride_ + j / 64] ^= std::uint64_t{1} << (j % 64); }

  std::span<const std::uint64_t> row_words(std::size_t i) const noexcept {
    return {words_.data() + i * stride_, stride_};
  }

  /// Ascending 0-based column indices of the ones in row i.
  std::vector<std::size_t> row_ones(std::size_t i) const;

  std::size_t row_weight(std::size_t i) const noexcept;
  std::vector<std::size_t> column_weights() const;
  BitMatrix transposed() const;

  bool operator==(const BitMatrix& other) const noexcept;

  static BitMatrix from_rows(const std::vector<std::string>& rows);  // "0110" style

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> words_;
};

/// A finite square incidence matrix: rows are lines, columns are points.
using IncidenceMatrix = BitMatrix;

// Plain portable bitmap: "P1\n<cols> <rows>\n" then one line of 0/1 digits per
// row, no separators.
std::string to_p1(const BitMatrix& m);
// One line per row listing the 1-based one-columns, comma separated.
std::string to_sparse(const BitMatrix& m);
// One line per row of 0/1 digits.
std::string to_dense(const BitMatrix& m);

enum class MatrixFormat { automatic, p1, sparse, dense };

/// Parses any of the three formats. `automatic` picks P1 on the magic number,
/// sparse when any line contains a comma, dense otherwise. For sparse input
/// the matrix is square unless an index exceeds the row count. Throws
/// ParseError.
BitMatrix parse_matrix(std::string_view text, MatrixFormat format = MatrixFormat::automatic);
BitMatrix read_matrix_file(const std::string& path, MatrixFormat format = MatrixFormat::automatic);

}  // namespace lexconf
