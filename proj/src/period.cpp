#include "lexconf/period.hpp"

#include <algorithm>
#include <bit>

#include "lexconf/checkpoint.hpp"

namespace lexconf {
namespace {

constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Last row index j < match_k whose shifted copy disagrees, found by running
// two cursors p rows apart from the start.
Index replay_preperiod(unsigned n, Index match_k, Index p) {
  Generator lead(n);
  Generator trail(n);
  for (Index i = 0; i < p; ++i) lead.advance();
  Index last = 0;
  for (Index j = 1; j < match_k; ++j) {
    auto early = trail.advance();
    auto late = lead.advance();
    if (!shifted_equal(early, late, p)) last = j;
  }
  return last;
}

}  // namespace

Hash128 DefiningMatrix::hash() const noexcept {
  std::uint64_t h1 = mix64(d ^ 0x243f6a8885a308d3ULL);
  std::uint64_t h2 = mix64(b + 0x13198a2e03707344ULL);
  for (std::uint64_t w : words) {
    h1 = mix64(h1 ^ w);
    h2 = mix64(h2 + std::rotl(w, 29) + 0xa4093822299f31d0ULL);
  }
  return {h1, h2};
}

std::strong_ordering compare_states(const DefiningMatrix& a, const DefiningMatrix& b) noexcept {
  if (auto c = a.digest <=> b.digest; c != 0) return c;
  if (auto c = a.d <=> b.d; c != 0) return c;
  if (auto c = a.b <=> b.b; c != 0) return c;
  return std::lexicographical_compare_three_way(a.words.begin(), a.words.end(), b.words.begin(), b.words.end());
}

DefiningMatrix defining_matrix(const Generator& g) {
  if (g.rows_emitted() == 0) throw PreconditionError("defining matrix needs at least one emitted row");
  DefiningMatrix m;
  m.k = g.next_k();
  m.l = g.frontier();
  if (g.column_weight(m.l) == 0) {
    m.digest = m.hash();
    return m;
  }

  const Index f = g.column_rows(m.l).front();
  m.d = m.k - f;
  m.b = g.last_column() - m.l + 1;
  m.stride = static_cast<std::size_t>((m.b + 63) / 64);
  m.words.assign(static_cast<std::size_t>(m.d) * m.stride, 0);
  for (Index i = f; i < m.k; ++i) {
    for (Index j : g.row(i)) {
      if (j < m.l) continue;
      const Index col = j - m.l;
      m.words[(i - f) * m.stride + col / 64] |= std::uint64_t{1} << (col % 64);
    }
  }
  m.digest = m.hash();
  return m;
}

bool shifted_equal(std::span<const Index> row, std::span<const Index> later, Index shift) noexcept {
  if (row.size() != later.size()) return false;
  for (std::size_t t = 0; t < row.size(); ++t)
    if (row[t] + shift != later[t]) return false;
  return true;
}

Index minimal_fold_multiplier(const PeriodResult& r) {
  if (r.p == 0) throw InvalidParameter("period must be positive");
  Index m = 1;
  while (!((r.p * m) / 2 > r.b_breadth && r.p * m >= 2 * r.l_max)) ++m;
  return m;
}

void PeriodSearch::History::push(Index k, std::span<const Index> ones) {
  if (rows_.empty()) first_ = k;
  if (rows_.size() == capacity_) {
    rows_.pop_front();
    ++first_;
  }
  auto slot = rows_.push_back();
  std::copy(ones.begin(), ones.end(), slot.begin());
}

PeriodSearch::PeriodSearch(unsigned n, PeriodOptions options)
    : n_(n),
      options_(std::move(options)),
      generator_(n),
      history_(n + 1, std::max<std::size_t>(options_.history_rows, 4)),
      last_checkpoint_time_(std::chrono::steady_clock::now()),
      last_progress_time_(last_checkpoint_time_) {}

PeriodSearch PeriodSearch::resume(const Checkpoint& cp, PeriodOptions options) {
  if (!cp.generator.symmetric()) throw InvalidParameter("checkpoint does not hold an A(n) generator");
  PeriodSearch s(cp.generator.order(), std::move(options));
  s.generator_ = cp.generator;
  s.hasher_ = RowHasher(cp.running_hash);
  if (cp.detector.algorithm == DetectorAlgorithm::stack) s.detector_ = cp.detector;
  s.rows_at_last_checkpoint_ = s.generator_.rows_emitted();
  return s;
}

Checkpoint PeriodSearch::checkpoint() const { return Checkpoint{generator_, hasher_.value(), 0, detector_}; }

void PeriodSearch::step() {
  const Index k = generator_.next_k();
  auto ones = generator_.advance();
  history_.push(k, ones);
  hasher_.add(k, ones);
}

std::optional<PeriodResult> PeriodSearch::run(Index budget) {
  const Index start = generator_.rows_emitted();
  while (generator_.rows_emitted() - start < budget) {
    step();
    const Index k = generator_.next_k();
    if (generator_.column_weight(generator_.frontier()) == 0) return finish(0, k - 1, true);

    DefiningMatrix state = defining_matrix(generator_);
    ++detector_.steps;
    auto& stack = detector_.stack;
    while (!stack.empty() && compare_states(stack.back(), state) > 0) stack.pop_back();
    if (!stack.empty() && stack.back() == state) {
      const DefiningMatrix& match = stack.back();
      const Index p = k - match.k;
      // The window only fixes the future up to translation; periodicity of
      // A needs the column shift to equal the row shift.
      if (state.l - match.l != p)
        throw InvariantViolation("repeated defining matrix without diagonal alignment at row " + std::to_string(k));
      const Index pp = minimal_preperiod(match.k, p);
      return finish(pp, p, false);
    }
    stack.push_back(std::move(state));
    maybe_checkpoint(false);
  }
  return std::nullopt;
}

Index PeriodSearch::minimal_preperiod(Index match_k, Index p) {
  // Rows >= match_k repeat; walk back to the last row that does not.
  for (Index j = match_k - 1; j >= 1; --j) {
    if (!history_.contains(j) || !history_.contains(j + p)) return replay_preperiod(n_, match_k, p);
    if (!shifted_equal(history_.get(j), history_.get(j + p), p)) return j;
  }
  return 0;
}

std::vector<SparseRow> PeriodSearch::rows_between(Index first, Index last) {
  if (last > generator_.rows_emitted() && last - first + 1 <= history_.capacity()) {
    while (generator_.rows_emitted() < last) step();
  }
  if (history_.contains(first) && history_.contains(last)) {
    std::vector<SparseRow> rows;
    rows.reserve(last - first + 1);
    for (Index k = first; k <= last; ++k) {
      auto ones = history_.get(k);
      rows.push_back(SparseRow{k, std::vector<Index>(ones.begin(), ones.end())});
    }
    return rows;
  }
  return generate_range(n_, first, last);
}

PeriodResult PeriodSearch::finish(Index pp, Index p, bool case1) {
  const auto rows = rows_between(pp + 1, pp + 3 * p);
  auto at = [&](Index i) -> const std::vector<Index>& { return rows[i - pp - 1].ones; };

  for (Index i = pp + 1; i <= pp + 2 * p; ++i)
    if (!shifted_equal(at(i), at(i + p), p))
      throw InvariantViolation("shift identity fails at row " + std::to_string(i));
  for (Index q = 1; q < p; ++q) {
    if (p % q != 0) continue;
    bool holds = true;
    for (Index i = pp + 1; i <= pp + 2 * p && holds; ++i) holds = shifted_equal(at(i), at(i + q), q);
    if (holds) throw InvariantViolation("period " + std::to_string(p) + " is not minimal");
  }

  PeriodResult r;
  r.n = n_;
  r.pp = pp;
  r.p = p;
  r.case1 = case1;
  for (Index i = pp + 1; i <= pp + p; ++i) {
    const auto& ones = at(i);
    for (Index j : ones) r.b_breadth = std::max(r.b_breadth, j > i ? j - i : i - j);
    r.l_max = std::max(r.l_max, ones.back() - ones.front() + 1);
  }
  r.rows_examined = generator_.rows_emitted();
  return r;
}

void PeriodSearch::maybe_checkpoint(bool force) {
  const Index rows = generator_.rows_emitted();
  const bool clock_due = (rows & 1023) == 0;
  if (options_.on_progress && options_.progress_every.count() > 0 && clock_due) {
    const auto now = std::chrono::steady_clock::now();
    if (now - last_progress_time_ >= options_.progress_every) {
      options_.on_progress(rows, detector_.stack.size());
      last_progress_time_ = now;
    }
  }
  if (!options_.on_checkpoint) return;
  bool due = force || rows - rows_at_last_checkpoint_ >= options_.checkpoint_every_rows;
  if (!due && clock_due) due = std::chrono::steady_clock::now() - last_checkpoint_time_ >= options_.checkpoint_every;
  if (!due) return;
  options_.on_checkpoint(checkpoint());
  rows_at_last_checkpoint_ = rows;
  last_checkpoint_time_ = std::chrono::steady_clock::now();
}

PeriodResult detect_period(unsigned n, Index max_rows, const PeriodOptions& options) {
  if (max_rows < 1) throw InvalidParameter("row budget must be at least 1");
  PeriodSearch search(n, options);
  if (auto result = search.run(max_rows)) return *result;
  throw BudgetExhausted("no period found within " + std::to_string(max_rows) + " rows for n = " + std::to_string(n),
                        std::make_shared<const Checkpoint>(search.checkpoint()));
}

}  // namespace lexconf
