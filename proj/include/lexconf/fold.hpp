#pragma once

// Wrapping the periodic tail of A(n) into a finite incidence matrix.
//
// With p_bar = p*m and r = floor(p_bar / 2), row i of B (1 <= i <= p_bar) is
// row v + i of A read in a cyclic window of width p_bar centred on the
// diagonal:
//   b_ij = a_{v+i, v+j}          if i - r <= j <= i + r
//          a_{v+i, v+j-p_bar}    if j > i + r
//          a_{v+i, v+j+p_bar}    if j < i - r

#include <optional>
#include <span>
#include <string>

#include "lexconf/bitmatrix.hpp"
#include "lexconf/generator.hpp"
#include "lexconf/period.hpp"

namespace lexconf {

/// Largest wrapped matrix we are willing to hold densely.
inline constexpr Index kMaxFoldSize = 100'000;

struct FoldParams {
  Index m = 1;
  Index p_bar = 0;
  Index r = 0;
  Index v = 0;

  bool operator==(const FoldParams&) const = default;
};

enum class FoldHypotheses {
  /// Require floor(p_bar/2) > b_breadth and p_bar >= 2*l_max.
  enforce,
  /// Drop the p_bar >= 2*l_max requirement. The output is still checked
  /// exhaustively; a failure raises ConstraintViolation.
  allow_short_period,
};

/// Validates and completes fold parameters; `v` defaults to pp + p_bar.
/// Throws ConstraintViolation or SizeLimitError.
FoldParams make_fold_params(const PeriodResult& period, Index m, std::optional<Index> v = std::nullopt,
                            FoldHypotheses hypotheses = FoldHypotheses::enforce);

/// Folds rows v+1 .. v+p_bar of A(n) (in order) into the p_bar x p_bar matrix B.
IncidenceMatrix fold(const PeriodResult& period, const FoldParams& params, std::span<const SparseRow> rows,
                     FoldHypotheses hypotheses = FoldHypotheses::enforce);

/// Same, regenerating the needed rows from scratch.
IncidenceMatrix fold(const PeriodResult& period, const FoldParams& params,
                     FoldHypotheses hypotheses = FoldHypotheses::enforce);

/// The leading p x p block of A(n); only for pp = 0. Throws PreconditionError otherwise.
IncidenceMatrix compact_plane(const PeriodResult& period, std::span<const SparseRow> first_rows);
IncidenceMatrix compact_plane(const PeriodResult& period);

/// First failing property among: square shape, row weights n+1, column
/// weights n+1, symmetry, no two rows sharing two columns. nullopt when all hold.
std::optional<std::string> check_incidence_invariants(const IncidenceMatrix& b, unsigned n);

}  // namespace lexconf
