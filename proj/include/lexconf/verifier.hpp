#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lexconf/bitmatrix.hpp"

namespace lexconf {

/// Lines and points are both numbered 0 .. v-1 internally; reports use 1-based
/// numbers (line = matrix row, point = matrix column).
struct Configuration {
  std::size_t v = 0;
  unsigned k = 0;
  std::vector<std::vector<std::uint32_t>> lines;  // ascending points per line

  bool operator==(const Configuration&) const = default;
};

/// Largest structure the pairwise line checks accept.
inline constexpr std::size_t kMaxVerifySize = 10'000;

struct Violation {
  enum class Kind { not_square, row_weight, column_weight, shared_points };
  Kind kind = Kind::not_square;
  std::size_t first = 0;   // 1-based line or point
  std::size_t second = 0;  // second line for shared_points
  std::size_t count = 0;   // offending weight or shared-point count
  std::vector<std::size_t> shared;  // 1-based shared points

  std::string describe() const;
};

using VerifyOutcome = std::variant<Configuration, Violation>;

/// Checks that every line has n+1 points, every point lies on n+1 lines, and
/// two lines share at most one point. Violations are returned as data; the
/// first witness in row order wins. Throws SizeLimitError above kMaxVerifySize.
VerifyOutcome verify_configuration(const IncidenceMatrix& b, unsigned n);

/// v = n^2+n+1 with n = k-1 >= 2. Also confirms every two lines meet;
/// disagreement throws InvariantViolation.
bool is_projective_plane(const Configuration& c);

/// PG(2, q) over the q-element field. Throws UnsupportedOrder.
Configuration reference_plane(unsigned q);

IncidenceMatrix incidence_matrix(const Configuration& c);

/// Levi graph in DOT: vertices p1..pv and l1..lv, one edge per incidence.
std::string levi_dot(const Configuration& c);

struct VerificationReport {
  std::optional<Violation> violation;
  std::size_t v = 0;
  unsigned k = 0;
  bool plane = false;
  std::optional<unsigned> iso_order;
  std::optional<bool> isomorphic;
  std::optional<std::uint64_t> automorphisms;

  std::string to_text() const;
};

}  // namespace lexconf
