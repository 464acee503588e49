#pragma once

// Period and preperiod of A(n).
//
// After k - 1 rows the construction of every later row is fixed by a finite
// window (the defining matrix): the rows from f, the first row touching the
// frontier column l, up to k - 1, restricted to columns l .. c where c is the
// last column used so far. The window is compared up to translation, so a
// repeated window means the matrix repeats from there on. Repeats are found
// with Nivasch's stack algorithm, which stops within mu + 2*lambda steps and
// keeps only O(log) windows.

#include <chrono>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexconf/errors.hpp"
#include "lexconf/generator.hpp"
#include "lexconf/rowlog.hpp"

namespace lexconf {

struct Hash128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  auto operator<=>(const Hash128&) const = default;
};

struct DefiningMatrix {
  Index d = 0;  // rows
  Index b = 0;  // columns
  std::size_t stride = 0;  // words per row
  std::vector<std::uint64_t> words;
  // Anchors: the next row to build and the frontier column. Not part of equality.
  Index k = 0;
  Index l = 0;
  /// Cached hash(); set by defining_matrix() and when loading checkpoints.
  Hash128 digest{};

  /// Frontier column empty: the construction restarts exactly as at a_11.
  bool empty() const noexcept { return d == 0; }
  /// 1-based entry M_ij = a_{i+f-1, j+l-1}.
  bool get(Index i, Index j) const noexcept {
    return (words[(i - 1) * stride + (j - 1) / 64] >> ((j - 1) % 64)) & 1U;
  }
  Hash128 hash() const noexcept;

  bool operator==(const DefiningMatrix& other) const noexcept {
    return d == other.d && b == other.b && words == other.words;
  }
};

/// Total order used by the stack algorithm: hash first, then content.
std::strong_ordering compare_states(const DefiningMatrix& a, const DefiningMatrix& b) noexcept;

/// Defining matrix for the generator's current row boundary. Requires at
/// least one emitted row. Returns an empty matrix in the zero-frontier case.
DefiningMatrix defining_matrix(const Generator& g);

enum class DetectorAlgorithm : std::uint32_t { none = 0, stack = 1 };

struct DetectorState {
  DetectorAlgorithm algorithm = DetectorAlgorithm::stack;
  Index steps = 0;
  std::vector<DefiningMatrix> stack;  // strictly increasing bottom to top

  bool operator==(const DetectorState&) const = default;
};

struct Checkpoint;

struct PeriodResult {
  unsigned n = 0;
  Index pp = 0;
  Index p = 0;
  /// max |j - i| over ones a_ij with i > pp.
  Index b_breadth = 0;
  /// Maximum row length over rows i > pp.
  Index l_max = 0;
  /// The zero-frontier shortcut fired (pp = 0, p = k - 1).
  bool case1 = false;
  Index rows_examined = 0;

  bool operator==(const PeriodResult&) const = default;
};

struct PeriodOptions {
  /// Recent rows kept for preperiod minimisation and verification.
  std::size_t history_rows = std::size_t{1} << 16;
  Index checkpoint_every_rows = 1'000'000;
  std::chrono::seconds checkpoint_every{600};
  std::function<void(const Checkpoint&)> on_checkpoint;
  std::chrono::seconds progress_every{0};
  std::function<void(Index rows_examined, std::size_t stack_depth)> on_progress;
};

/// No cycle within the row budget. Carries everything needed to resume.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(std::string what, std::shared_ptr<const Checkpoint> checkpoint)
      : Error(std::move(what)), checkpoint_(std::move(checkpoint)) {}
  const Checkpoint& checkpoint() const noexcept { return *checkpoint_; }

 private:
  std::shared_ptr<const Checkpoint> checkpoint_;
};

/// Resumable period search over A(n).
class PeriodSearch {
 public:
  explicit PeriodSearch(unsigned n, PeriodOptions options = {});
  static PeriodSearch resume(const Checkpoint& checkpoint, PeriodOptions options = {});

  /// Generates at most `budget` further rows. Returns the result once a cycle
  /// is confirmed, std::nullopt when the budget runs out first.
  std::optional<PeriodResult> run(Index budget);

  Checkpoint checkpoint() const;
  Index rows_examined() const noexcept { return generator_.rows_emitted(); }
  const Generator& generator() const noexcept { return generator_; }

 private:
  class History {
   public:
    History(unsigned width, std::size_t capacity) : rows_(width), capacity_(capacity) {}
    void push(Index k, std::span<const Index> ones);
    bool contains(Index k) const noexcept { return k >= first_ && k < first_ + rows_.size(); }
    std::span<const Index> get(Index k) const noexcept { return rows_[k - first_]; }
    std::size_t capacity() const noexcept { return capacity_; }

   private:
    detail::StridedRing<Index> rows_;
    std::size_t capacity_;
    Index first_ = 1;
  };

  void step();
  PeriodResult finish(Index pp, Index p, bool case1);
  Index minimal_preperiod(Index match_k, Index p);
  std::vector<SparseRow> rows_between(Index first, Index last);
  void maybe_checkpoint(bool force);

  unsigned n_;
  PeriodOptions options_;
  Generator generator_;
  RowHasher hasher_;
  DetectorState detector_;
  History history_;
  Index rows_at_last_checkpoint_ = 0;
  std::chrono::steady_clock::time_point last_checkpoint_time_;
  std::chrono::steady_clock::time_point last_progress_time_;
};

/// Runs a fresh search. Throws BudgetExhausted after `max_rows` rows.
PeriodResult detect_period(unsigned n, Index max_rows, const PeriodOptions& options = {});

/// ones(row i + shift) == ones(row i) + shift.
bool shifted_equal(std::span<const Index> row, std::span<const Index> later, Index shift) noexcept;

/// Smallest m >= 1 with floor(p*m/2) > b_breadth and p*m >= 2*l_max.
Index minimal_fold_multiplier(const PeriodResult& result);

}  // namespace lexconf
