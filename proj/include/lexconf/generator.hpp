#pragma once

// Streaming greedy construction of the infinite rectangle-free matrix A(n).
//
// Cells are filled in lexicographic order. Cell (k, l) receives a one unless
// row k already holds its cap of ones, column l already holds its cap, or some
// earlier row i has ones at l and at a column already used by row k (which
// would close a rectangle). Only the rows and columns that can still take part
// in a future decision are kept, so memory stays proportional to the width of
// the band around the diagonal.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lexconf/detail/strided_ring.hpp"

namespace lexconf {

/// Row and column indices are 1-based and unbounded in principle.
using Index = std::uint64_t;

/// Largest supported order; rows then hold 65 ones.
inline constexpr unsigned kMaxOrder = 64;

struct Params {
  unsigned n = 1;
  /// Strict upper bound on the length of any row: 2n^3 - n(n-3).
  std::uint64_t sigma = 4;

  static Params make(unsigned n);
};

/// sigma(n) = 2n^3 - n(n-3).
constexpr std::uint64_t row_length_bound(unsigned n) noexcept {
  const std::uint64_t m = n;
  return 2 * m * m * m - m * m + 3 * m;
}

struct SparseRow {
  Index index = 0;
  std::vector<Index> ones;  // strictly ascending column indices

  Index first() const { return ones.front(); }
  Index last() const { return ones.back(); }
  Index length() const { return ones.back() - ones.front() + 1; }

  bool operator==(const SparseRow&) const = default;
};

class Generator {
 public:
  /// Generator for A(n). Throws InvalidParameter unless 1 <= n <= kMaxOrder.
  explicit Generator(unsigned n);

  /// Generator for the naive matrix with the given row and column caps.
  /// naive(n + 1, n + 1) is exactly A(n).
  static Generator naive(unsigned row_cap, unsigned col_cap);

  unsigned row_cap() const noexcept { return row_cap_; }
  unsigned col_cap() const noexcept { return col_cap_; }
  /// Order n = row_cap - 1; meaningful for A(n).
  unsigned order() const noexcept { return row_cap_ - 1; }
  bool symmetric() const noexcept { return row_cap_ == col_cap_; }
  /// Row length bound enforced on every row (0 when the caps differ).
  std::uint64_t sigma() const noexcept { return sigma_; }

  Index next_k() const noexcept { return next_k_; }
  Index rows_emitted() const noexcept { return next_k_ - 1; }
  /// Smallest column holding fewer ones than the column cap.
  Index frontier() const noexcept { return frontier_; }
  /// Largest column holding a one, 0 before the first row.
  Index last_column() const noexcept { return last_column_; }

  unsigned column_weight(Index j) const noexcept;
  /// Rows with a one in column j, ascending. Only for frontier <= j <= last_column.
  std::span<const Index> column_rows(Index j) const;

  Index first_live_row() const noexcept { return row_base_; }
  std::size_t live_row_count() const noexcept { return rows_.size(); }
  /// Ones of row k; k must be a live row.
  std::span<const Index> row(Index k) const;

  /// Whether a one may be placed at (next_k, l) given the ones already placed
  /// in that row (`partial`, ascending, all < l). Does not modify the state.
  bool is_admissible(std::span<const Index> partial, Index l) const;

  /// Builds the next row and returns its ones; the span stays valid until the
  /// next call that modifies the generator.
  std::span<const Index> advance();

  SparseRow next_row();

  /// Complete description of the state, used for checkpoints.
  struct Snapshot {
    unsigned row_cap = 0;
    unsigned col_cap = 0;
    Index next_k = 1;
    Index frontier = 1;
    Index last_column = 0;
    std::vector<SparseRow> live_rows;
    std::vector<std::pair<Index, unsigned>> column_weights;  // frontier .. last_column

    bool operator==(const Snapshot&) const = default;
  };

  Snapshot snapshot() const;
  /// Rebuilds a generator, validating internal consistency. Throws
  /// InvalidParameter when the snapshot cannot describe a reachable state.
  static Generator restore(const Snapshot& snapshot);

  bool operator==(const Generator& other) const { return snapshot() == other.snapshot(); }

 private:
  Generator(unsigned row_cap, unsigned col_cap);

  std::span<Index> column(Index j) noexcept { return cols_[j - frontier_]; }
  std::span<const Index> column(Index j) const noexcept { return cols_[j - frontier_]; }
  void commit_partial();

  // Column block layout: [weight, scratch mark, row indices...].
  static constexpr std::size_t kWeight = 0;
  static constexpr std::size_t kMark = 1;
  static constexpr std::size_t kRows = 2;

  unsigned row_cap_;
  unsigned col_cap_;
  std::uint64_t sigma_;
  Index next_k_ = 1;
  Index frontier_ = 1;
  Index last_column_ = 0;
  Index row_base_ = 1;
  detail::StridedRing<Index> rows_;
  detail::StridedRing<Index> cols_;
  std::vector<Index> partial_;
};

/// The first `count` rows of A(n).
std::vector<SparseRow> generate_prefix(unsigned n, Index count);

/// The first `rows` rows of the naive matrix of type (row_cap, col_cap).
std::vector<SparseRow> generate_naive(unsigned row_cap, unsigned col_cap, Index rows);

/// Rows first..last (inclusive) of A(n), generated from scratch.
std::vector<SparseRow> generate_range(unsigned n, Index first, Index last);

}  // namespace lexconf
