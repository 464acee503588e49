#include "lexconf/generator.hpp"

#include <algorithm>
#include <string>

#include "lexconf/errors.hpp"

namespace lexconf {

Params Params::make(unsigned n) {
  if (n < 1 || n > kMaxOrder)
    throw InvalidParameter("order n must be in [1, " + std::to_string(kMaxOrder) + "], got " + std::to_string(n));
  return Params{n, row_length_bound(n)};
}

Generator::Generator(unsigned n) : Generator(Params::make(n).n + 1, n + 1) {}

Generator::Generator(unsigned row_cap, unsigned col_cap)
    : row_cap_(row_cap),
      col_cap_(col_cap),
      sigma_(row_cap == col_cap ? row_length_bound(row_cap - 1) : 0),
      rows_(row_cap),
      cols_(col_cap + kRows) {
  partial_.reserve(row_cap);
}

Generator Generator::naive(unsigned row_cap, unsigned col_cap) {
  if (row_cap < 1 || col_cap < 1 || row_cap > kMaxOrder + 1 || col_cap > kMaxOrder + 1)
    throw InvalidParameter("naive matrix caps must be in [1, " + std::to_string(kMaxOrder + 1) + "]");
  return Generator(row_cap, col_cap);
}

unsigned Generator::column_weight(Index j) const noexcept {
  if (j < frontier_) return col_cap_;
  if (j > last_column_) return 0;
  return static_cast<unsigned>(column(j)[kWeight]);
}

std::span<const Index> Generator::column_rows(Index j) const {
  if (j < frontier_ || j > last_column_) return {};
  auto block = column(j);
  return block.subspan(kRows, block[kWeight]);
}

std::span<const Index> Generator::row(Index k) const {
  if (k < row_base_ || k >= next_k_) throw InvariantViolation("row " + std::to_string(k) + " is not live");
  return rows_[k - row_base_];
}

bool Generator::is_admissible(std::span<const Index> partial, Index l) const {
  if (partial.size() >= row_cap_) return false;
  if (column_weight(l) >= col_cap_) return false;
  for (Index i : column_rows(l)) {
    for (Index j : row(i)) {
      if (j < l && std::binary_search(partial.begin(), partial.end(), j)) return false;
    }
  }
  return true;
}

std::span<const Index> Generator::advance() {
  partial_.clear();
  Index l = frontier_;
  for (; l <= last_column_ && partial_.size() < row_cap_; ++l) {
    auto col = column(l);
    const Index weight = col[kWeight];
    if (weight >= col_cap_) continue;
    bool blocked = false;
    for (Index t = 0; t < weight && !blocked; ++t) {
      for (Index j : rows_[col[kRows + t] - row_base_]) {
        // Marked columns are exactly the ones already placed in this row.
        if (j >= frontier_ && column(j)[kMark]) {
          blocked = true;
          break;
        }
      }
    }
    if (!blocked) {
      partial_.push_back(l);
      col[kMark] = 1;
    }
  }
  // Columns past last_column_ are empty, so nothing can block them.
  while (partial_.size() < row_cap_) partial_.push_back(l++);

  commit_partial();
  return rows_.back();
}

void Generator::commit_partial() {
  const Index k = next_k_;
  for (Index j : partial_) {
    if (j > last_column_) break;
    column(j)[kMark] = 0;
  }
  if (sigma_ != 0 && partial_.back() - partial_.front() + 1 >= sigma_)
    throw InvariantViolation("row " + std::to_string(k) + " exceeds the row length bound");

  while (last_column_ < partial_.back()) {
    cols_.push_back();
    ++last_column_;
  }
  for (Index j : partial_) {
    auto col = column(j);
    col[kRows + col[kWeight]] = k;
    ++col[kWeight];
  }
  auto slot = rows_.push_back();
  std::copy(partial_.begin(), partial_.end(), slot.begin());
  ++next_k_;

  while (!cols_.empty() && cols_.front()[kWeight] == col_cap_) {
    cols_.pop_front();
    ++frontier_;
  }
  // A row whose ones all sit left of the frontier can never block again.
  while (!rows_.empty() && rows_.front().back() < frontier_) {
    rows_.pop_front();
    ++row_base_;
  }
}

SparseRow Generator::next_row() {
  const Index k = next_k_;
  auto ones = advance();
  return SparseRow{k, std::vector<Index>(ones.begin(), ones.end())};
}

Generator::Snapshot Generator::snapshot() const {
  Snapshot s;
  s.row_cap = row_cap_;
  s.col_cap = col_cap_;
  s.next_k = next_k_;
  s.frontier = frontier_;
  s.last_column = last_column_;
  s.live_rows.reserve(rows_.size());
  for (Index k = row_base_; k < next_k_; ++k) {
    auto ones = row(k);
    s.live_rows.push_back(SparseRow{k, std::vector<Index>(ones.begin(), ones.end())});
  }
  for (Index j = frontier_; j <= last_column_; ++j) s.column_weights.emplace_back(j, column_weight(j));
  return s;
}

Generator Generator::restore(const Snapshot& s) {
  Generator g = naive(s.row_cap, s.col_cap);
  auto reject = [](const std::string& why) { throw InvalidParameter("inconsistent generator snapshot: " + why); };

  if (s.next_k < 1 || s.frontier < 1) reject("indices must be positive");
  if (s.last_column + 1 < s.frontier) reject("frontier beyond last column + 1");
  if (s.live_rows.size() > s.next_k - 1) reject("more live rows than emitted rows");
  if (s.column_weights.size() != s.last_column + 1 - s.frontier) reject("column weight table has wrong extent");

  g.next_k_ = s.next_k;
  g.frontier_ = s.frontier;
  g.last_column_ = s.last_column;
  g.row_base_ = s.next_k - s.live_rows.size();
  for (Index j = s.frontier; j <= s.last_column; ++j) g.cols_.push_back();

  Index expected = g.row_base_;
  for (const SparseRow& r : s.live_rows) {
    if (r.index != expected++) reject("live rows are not contiguous");
    if (r.ones.size() != s.row_cap) reject("row has wrong weight");
    if (!std::is_sorted(r.ones.begin(), r.ones.end()) ||
        std::adjacent_find(r.ones.begin(), r.ones.end()) != r.ones.end() || r.ones.front() < 1)
      reject("row ones are not strictly ascending");
    if (r.ones.back() > s.last_column) reject("row reaches past last column");
    auto slot = g.rows_.push_back();
    std::copy(r.ones.begin(), r.ones.end(), slot.begin());
    for (Index j : r.ones) {
      if (j < s.frontier) continue;
      auto col = g.column(j);
      if (col[kWeight] >= s.col_cap) reject("column over capacity");
      col[kRows + col[kWeight]] = r.index;
      ++col[kWeight];
    }
  }
  if (!s.live_rows.empty() && s.live_rows.front().ones.back() < s.frontier) reject("evictable row retained");
  for (const auto& [j, w] : s.column_weights) {
    if (j < s.frontier || j > s.last_column) reject("column weight outside window");
    if (g.column_weight(j) != w) reject("column weight disagrees with live rows");
  }
  if (!g.cols_.empty() && g.cols_.front()[kWeight] >= s.col_cap) reject("frontier column is complete");
  return g;
}

std::vector<SparseRow> generate_prefix(unsigned n, Index count) {
  Generator g(n);
  std::vector<SparseRow> rows;
  rows.reserve(count);
  for (Index i = 0; i < count; ++i) rows.push_back(g.next_row());
  return rows;
}

std::vector<SparseRow> generate_naive(unsigned row_cap, unsigned col_cap, Index count) {
  Generator g = Generator::naive(row_cap, col_cap);
  std::vector<SparseRow> rows;
  rows.reserve(count);
  for (Index i = 0; i < count; ++i) rows.push_back(g.next_row());
  return rows;
}

std::vector<SparseRow> generate_range(unsigned n, Index first, Index last) {
  if (first < 1 || last < first) throw InvalidParameter("row range must satisfy 1 <= first <= last");
  Generator g(n);
  while (g.next_k() < first) g.advance();
  std::vector<SparseRow> rows;
  rows.reserve(last - first + 1);
  while (g.next_k() <= last) rows.push_back(g.next_row());
  return rows;
}

}  // namespace lexconf
