#include "lexconf/fold.hpp"

#include <cstdint>

#include "lexconf/bitkernels.hpp"
#include "lexconf/errors.hpp"

namespace lexconf {

FoldParams make_fold_params(const PeriodResult& period, Index m, std::optional<Index> v, FoldHypotheses hypotheses) {
  if (m < 1) throw ConstraintViolation("fold multiplier m must be at least 1");
  if (period.p < 1) throw ConstraintViolation("period must be positive");
  FoldParams fp;
  fp.m = m;
  fp.p_bar = period.p * m;
  if (fp.p_bar > kMaxFoldSize)
    throw SizeLimitError("folded size " + std::to_string(fp.p_bar) + " exceeds the limit " +
                         std::to_string(kMaxFoldSize));
  fp.r = fp.p_bar / 2;
  fp.v = v.value_or(period.pp + fp.p_bar);

  if (fp.r <= period.b_breadth)
    throw ConstraintViolation("floor(p_bar/2) = " + std::to_string(fp.r) + " must exceed the breadth " +
                              std::to_string(period.b_breadth));
  if (hypotheses == FoldHypotheses::enforce && fp.p_bar < 2 * period.l_max)
    throw ConstraintViolation("p_bar = " + std::to_string(fp.p_bar) + " is below 2*l_max = " +
                              std::to_string(2 * period.l_max) + "; two lines could share two points");
  if (fp.v < period.pp + fp.p_bar)
    throw ConstraintViolation("base offset v = " + std::to_string(fp.v) + " must be at least pp + p_bar = " +
                              std::to_string(period.pp + fp.p_bar));
  return fp;
}

IncidenceMatrix fold(const PeriodResult& period, const FoldParams& params, std::span<const SparseRow> rows,
                     FoldHypotheses hypotheses) {
  const FoldParams checked = make_fold_params(period, params.m, params.v, hypotheses);
  if (!(checked == params)) throw ConstraintViolation("fold parameters do not match the period");
  if (rows.size() != params.p_bar) throw PreconditionError("fold needs exactly p_bar rows");

  const auto p_bar = static_cast<std::int64_t>(params.p_bar);
  const auto r = static_cast<std::int64_t>(params.r);
  IncidenceMatrix b(params.p_bar, params.p_bar);
  for (std::int64_t i = 1; i <= p_bar; ++i) {
    const SparseRow& row = rows[static_cast<std::size_t>(i - 1)];
    if (row.index != params.v + static_cast<Index>(i))
      throw PreconditionError("fold rows must be v+1 .. v+p_bar in order");
    if (row.ones.size() != period.n + 1u) throw PreconditionError("fold row has wrong weight");
    for (Index c : row.ones) {
      const std::int64_t rel = static_cast<std::int64_t>(c) - static_cast<std::int64_t>(params.v);
      // Exactly one of the three bands must take the one.
      int landed = 0;
      std::int64_t target = 0;
      if (rel >= i - r && rel <= i + r && rel >= 1 && rel <= p_bar) {
        target = rel;
        ++landed;
      }
      if (rel + p_bar > i + r && rel + p_bar >= 1 && rel + p_bar <= p_bar) {
        target = rel + p_bar;
        ++landed;
      }
      if (rel - p_bar < i - r && rel - p_bar >= 1 && rel - p_bar <= p_bar) {
        target = rel - p_bar;
        ++landed;
      }
      if (landed != 1 && hypotheses == FoldHypotheses::allow_short_period)
        throw ConstraintViolation("p_bar = " + std::to_string(params.p_bar) + " is too narrow for the one at (" +
                                  std::to_string(row.index) + ", " + std::to_string(c) + ")");
      if (landed != 1)
        throw InvariantViolation("one at (" + std::to_string(row.index) + ", " + std::to_string(c) +
                                 ") does not land in exactly one folded cell");
      b.set(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(target - 1));
    }
  }
  if (auto failure = check_incidence_invariants(b, period.n)) {
    // Under the full hypotheses this cannot happen; without them it just
    // means the chosen width is too small.
    if (hypotheses == FoldHypotheses::allow_short_period)
      throw ConstraintViolation("p_bar = " + std::to_string(params.p_bar) +
                                " does not fold to a configuration: " + *failure);
    throw InvariantViolation("folded matrix is not a configuration: " + *failure);
  }
  return b;
}

IncidenceMatrix fold(const PeriodResult& period, const FoldParams& params, FoldHypotheses hypotheses) {
  const auto rows = generate_range(period.n, params.v + 1, params.v + params.p_bar);
  return fold(period, params, rows, hypotheses);
}

IncidenceMatrix compact_plane(const PeriodResult& period, std::span<const SparseRow> first_rows) {
  if (period.pp != 0)
    throw PreconditionError("compact plane needs preperiod 0, got " + std::to_string(period.pp));
  if (first_rows.size() != period.p) throw PreconditionError("compact plane needs exactly p rows");
  IncidenceMatrix b(period.p, period.p);
  for (std::size_t i = 0; i < first_rows.size(); ++i) {
    if (first_rows[i].index != i + 1) throw PreconditionError("compact plane rows must be 1 .. p in order");
    for (Index j : first_rows[i].ones) {
      if (j > period.p) throw InvariantViolation("row " + std::to_string(i + 1) + " reaches past column p");
      b.set(i, j - 1);
    }
  }
  if (auto failure = check_incidence_invariants(b, period.n))
    throw InvariantViolation("compact plane is not a configuration: " + *failure);
  return b;
}

IncidenceMatrix compact_plane(const PeriodResult& period) {
  if (period.pp != 0)
    throw PreconditionError("compact plane needs preperiod 0, got " + std::to_string(period.pp));
  return compact_plane(period, generate_prefix(period.n, period.p));
}

std::optional<std::string> check_incidence_invariants(const IncidenceMatrix& b, unsigned n) {
  if (!b.square()) return "matrix is not square";
  const std::size_t size = b.rows();
  for (std::size_t i = 0; i < size; ++i)
    if (b.row_weight(i) != n + 1u)
      return "row " + std::to_string(i + 1) + " has weight " + std::to_string(b.row_weight(i));
  const IncidenceMatrix t = b.transposed();
  for (std::size_t j = 0; j < size; ++j)
    if (t.row_weight(j) != n + 1u)
      return "column " + std::to_string(j + 1) + " has weight " + std::to_string(t.row_weight(j));
  if (!(t == b)) return "matrix is not symmetric";

  // Only rows meeting in some column can share two; test those pairs with
  // the word-parallel intersection count.
  std::vector<std::size_t> last_seen(size, SIZE_MAX);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j : b.row_ones(i)) {
      for (std::size_t other : t.row_ones(j)) {
        if (other <= i || last_seen[other] == i) continue;
        last_seen[other] = i;
        if (simd::and_popcount(b.row_words(i), b.row_words(other)) > 1)
          return "rows " + std::to_string(i + 1) + " and " + std::to_string(other + 1) + " share two columns";
      }
    }
  }
  return std::nullopt;
}

}  // namespace lexconf
