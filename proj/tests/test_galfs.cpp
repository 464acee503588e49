#include <doctest.h>

#include <random>
#include <set>

#include "lexconf/bitmatrix.hpp"
#include "lexconf/galfs.hpp"
#include "lexconf/generator.hpp"
#include "oracle/dense_oracle.hpp"

using namespace lexconf;

namespace {

std::set<std::pair<std::size_t, std::size_t>> as_set(const std::vector<Cell>& cells) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (const auto& c : cells) out.emplace(c.row, c.col);
  return out;
}

std::vector<std::vector<char>> grid(const BitMatrix& m) {
  std::vector<std::vector<char>> g(m.rows(), std::vector<char>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m.get(i, j);
  return g;
}

BitMatrix prefix_matrix(unsigned n, std::size_t size) {
  BitMatrix m(size, size);
  for (const auto& row : generate_prefix(n, size))
    for (Index j : row.ones)
      if (j <= size) m.set(row.index - 1, j - 1);
  return m;
}

}  // namespace

TEST_CASE("three corners force one galf") {
  const auto cells = compute_galfs(BitMatrix::from_rows({"11", "10"}));
  REQUIRE(cells.size() == 1);
  CHECK(cells[0].row == 2);
  CHECK(cells[0].col == 2);
}

TEST_CASE("zero matrix has no galfs") {
  CHECK(compute_galfs(BitMatrix(5, 7)).empty());
  CHECK(flags(BitMatrix(5, 7)).empty());
}

TEST_CASE("galfs of prefixes of A(n) match the quadruple loop and avoid flags") {
  for (unsigned n = 1; n <= 3; ++n) {
    for (std::size_t size : {7u, 12u, 20u}) {
      const auto m = prefix_matrix(n, size);
      const auto galfs = as_set(compute_galfs(m));
      CHECK(galfs == oracle::galfs(grid(m)));
      for (const auto& f : flags(m)) CHECK(galfs.count({f.row, f.col}) == 0);
    }
  }
}

TEST_CASE("random matrices agree with the quadruple loop") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + rng() % 9;
    const std::size_t c = 1 + rng() % 9;
    BitMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng() % 3 == 0) m.set(i, j);
    const auto cells = compute_galfs(m);
    CHECK(std::is_sorted(cells.begin(), cells.end()));
    CHECK(as_set(cells) == oracle::galfs(grid(m)));
  }
}
