#pragma once

// Test-only reference implementations. Deliberately naive: full dense
// storage, no eviction, every rule checked from its literal statement.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "lexconf/generator.hpp"

namespace oracle {

using Dense = std::vector<std::vector<char>>;  // 1-based, [0] unused

// Greedy fill of a rows x cols prefix: a_kl = 1 unless row k is full, column l
// is full, or some i < k, j < l has a_kj = a_il = a_ij = 1.
inline Dense dense_greedy(unsigned row_cap, unsigned col_cap, std::size_t rows, std::size_t cols) {
  Dense a(rows + 1, std::vector<char>(cols + 1, 0));
  std::vector<unsigned> col_weight(cols + 1, 0);
  for (std::size_t k = 1; k <= rows; ++k) {
    unsigned row_weight = 0;
    for (std::size_t l = 1; l <= cols; ++l) {
      if (row_weight >= row_cap || col_weight[l] >= col_cap) continue;
      bool rectangle = false;
      for (std::size_t i = 1; i < k && !rectangle; ++i) {
        if (!a[i][l]) continue;
        for (std::size_t j = 1; j < l && !rectangle; ++j) rectangle = a[k][j] && a[i][j];
      }
      if (rectangle) continue;
      a[k][l] = 1;
      ++row_weight;
      ++col_weight[l];
    }
    if (row_weight != row_cap) throw std::runtime_error("oracle prefix too narrow");
  }
  return a;
}

inline std::vector<lexconf::SparseRow> to_rows(const Dense& a) {
  std::vector<lexconf::SparseRow> out;
  for (std::size_t k = 1; k < a.size(); ++k) {
    lexconf::SparseRow r{k, {}};
    for (std::size_t l = 1; l < a[k].size(); ++l)
      if (a[k][l]) r.ones.push_back(l);
    out.push_back(std::move(r));
  }
  return out;
}

// Cells (i, j) with a flag (k, l), k != i, l != j, a_kl = a_kj = a_il = 1.
// Quadruple loop over every index combination. 1-based cells.
inline std::set<std::pair<std::size_t, std::size_t>> galfs(const std::vector<std::vector<char>>& m) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      for (std::size_t k = 0; k < rows; ++k)
        for (std::size_t l = 0; l < cols; ++l)
          if (k != i && l != j && m[k][l] && m[k][j] && m[i][l]) out.emplace(i + 1, j + 1);
  return out;
}

}  // namespace oracle
