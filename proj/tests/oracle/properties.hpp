#pragma once

// Independent property checks on emitted rows of A(n). Each returns an empty
// string on success or a description of the first failure.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "lexconf/bitmatrix.hpp"
#include "lexconf/generator.hpp"

namespace oracle {

// 2n^3 - n(n-3), expanded so it stays unsigned for n < 3.
inline std::uint64_t row_length_limit(unsigned n) {
  const std::uint64_t m = n;
  return 2 * m * m * m + 3 * m - m * m;
}

inline std::string check_rows(unsigned n, const std::vector<lexconf::SparseRow>& rows) {
  const std::uint64_t limit = row_length_limit(n);
  std::map<std::uint64_t, unsigned> col_weight;
  std::map<std::uint64_t, std::uint64_t> first_row_of_col;
  std::uint64_t prev_g = 0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto& r = rows[t];
    const std::uint64_t i = t + 1;
    if (r.index != i) return "row numbering broken at " + std::to_string(i);
    if (r.ones.size() != n + 1) return "row " + std::to_string(i) + " has weight " + std::to_string(r.ones.size());
    if (!std::is_sorted(r.ones.begin(), r.ones.end()) ||
        std::adjacent_find(r.ones.begin(), r.ones.end()) != r.ones.end())
      return "row " + std::to_string(i) + " not strictly ascending";
    if (r.ones.back() - r.ones.front() + 1 >= limit) return "row " + std::to_string(i) + " too long";
    if (r.ones.front() < prev_g) return "g decreases at row " + std::to_string(i);
    prev_g = r.ones.front();
    if (r.ones.front() > i) return "row " + std::to_string(i) + " starts right of the diagonal";
    for (auto j : r.ones) {
      if (++col_weight[j] > n + 1) return "column " + std::to_string(j) + " over weight";
      first_row_of_col.emplace(j, i);
    }
  }
  // f(j) non-decreasing over the columns seen so far, and no gaps: every
  // column up to the largest one used appears.
  std::uint64_t prev_f = 0;
  std::uint64_t expect = 1;
  for (const auto& [j, f] : first_row_of_col) {
    if (j != expect++) return "column " + std::to_string(expect - 1) + " never used";
    if (f < prev_f) return "f decreases at column " + std::to_string(j);
    prev_f = f;
  }
  // Symmetry of the N x N prefix.
  const std::uint64_t N = rows.size();
  for (std::uint64_t i = 1; i <= N; ++i)
    for (auto j : rows[i - 1].ones)
      if (j <= N && !std::binary_search(rows[j - 1].ones.begin(), rows[j - 1].ones.end(), i))
        return "asymmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")";
  return {};
}

// Columns strictly left of `frontier` must be complete.
inline std::string check_complete_columns(unsigned n, const std::vector<lexconf::SparseRow>& rows,
                                          std::uint64_t frontier) {
  std::map<std::uint64_t, unsigned> w;
  for (const auto& r : rows)
    for (auto j : r.ones) ++w[j];
  for (std::uint64_t j = 1; j < frontier; ++j)
    if (w[j] != n + 1) return "column " + std::to_string(j) + " left of the frontier is incomplete";
  return {};
}

// No two rows share two columns: every pair of rows compared.
inline std::string check_rectangle_free(const std::vector<lexconf::SparseRow>& rows) {
  for (std::size_t a = 0; a < rows.size(); ++a) {
    const std::unordered_set<std::uint64_t> mine(rows[a].ones.begin(), rows[a].ones.end());
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      int shared = 0;
      for (auto j : rows[b].ones) shared += static_cast<int>(mine.count(j));
      if (shared > 1) return "rows " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " form a rectangle";
    }
  }
  return {};
}

// The four properties of a folded matrix, checked on a plain bool grid.
inline std::string check_folded(const lexconf::BitMatrix& b, unsigned n) {
  const std::size_t s = b.rows();
  if (b.cols() != s) return "not square";
  std::vector<std::vector<char>> g(s, std::vector<char>(s));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) g[i][j] = b.get(i, j);
  for (std::size_t i = 0; i < s; ++i) {
    unsigned rw = 0, cw = 0;
    for (std::size_t j = 0; j < s; ++j) {
      rw += g[i][j];
      cw += g[j][i];
      if (g[i][j] != g[j][i]) return "not symmetric";
    }
    if (rw != n + 1) return "row weight " + std::to_string(rw);
    if (cw != n + 1) return "column weight " + std::to_string(cw);
  }
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = i + 1; k < s; ++k) {
      unsigned shared = 0;
      for (std::size_t j = 0; j < s; ++j) shared += g[i][j] && g[k][j];
      if (shared > 1) return "rectangle";
    }
  return {};
}

// b_ij straight from the three-case definition, with rows v+1 .. v+p_bar of
// A given as sets. Indices are 1-based in the formula, 0-based in the result.
inline lexconf::BitMatrix literal_fold(const std::vector<lexconf::SparseRow>& a_rows, std::uint64_t v,
                                       std::uint64_t p_bar) {
  const std::int64_t r = static_cast<std::int64_t>(p_bar / 2);
  lexconf::BitMatrix b(p_bar, p_bar);
  auto a = [&](std::uint64_t row, std::int64_t col) {
    if (col < 1) return false;
    const auto& ones = a_rows[row - v - 1].ones;
    return std::binary_search(ones.begin(), ones.end(), static_cast<std::uint64_t>(col));
  };
  const auto pb = static_cast<std::int64_t>(p_bar);
  const auto vv = static_cast<std::int64_t>(v);
  for (std::int64_t i = 1; i <= pb; ++i) {
    for (std::int64_t j = 1; j <= pb; ++j) {
      bool bit;
      if (j >= i - r && j <= i + r)
        bit = a(v + i, vv + j);
      else if (j > i + r)
        bit = a(v + i, vv + j - pb);
      else
        bit = a(v + i, vv + j + pb);
      if (bit) b.set(i - 1, j - 1);
    }
  }
  return b;
}

}  // namespace oracle
