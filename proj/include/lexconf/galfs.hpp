#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "lexconf/bitmatrix.hpp"

namespace lexconf {

/// 1-based matrix cell.
struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;

  auto operator<=>(const Cell&) const = default;
};

/// Cells holding a one, ascending.
std::vector<Cell> flags(const BitMatrix& m);

/// Cells (i, j) that would complete a rectangle: there is a flag (k, l) with
/// k != i, l != j and a_kj = a_il = 1. Ascending, no duplicates. A cell may be
/// both a flag and a galf in a general matrix; in a rectangle-free matrix the
/// two sets are disjoint.
std::vector<Cell> compute_galfs(const BitMatrix& m);

}  // namespace lexconf
