#include "lexconf/galfs.hpp"

#include <algorithm>

namespace lexconf {

std::vector<Cell> flags(const BitMatrix& m) {
  std::vector<Cell> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j : m.row_ones(i)) out.push_back({i + 1, j + 1});
  return out;
}

std::vector<Cell> compute_galfs(const BitMatrix& m) {
  const BitMatrix t = m.transposed();
  std::vector<std::vector<std::size_t>> row_ones(m.rows()), col_ones(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) row_ones[i] = m.row_ones(i);
  for (std::size_t j = 0; j < m.cols(); ++j) col_ones[j] = t.row_ones(j);

  // Mark on a dense scratch matrix; walking flag (k, l) pairs each row k's
  // other ones j with column l's other ones i.
  BitMatrix hit(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.rows(); ++k) {
    for (std::size_t l : row_ones[k]) {
      for (std::size_t j : row_ones[k]) {
        if (j == l) continue;
        for (std::size_t i : col_ones[l]) {
          if (i != k) hit.set(i, j);
        }
      }
    }
  }
  return flags(hit);
}

}  // namespace lexconf
